#include "ffvc/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ffvc/error.hpp"

namespace ffvc {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

FieldContext::FieldContext(std::uint32_t p, std::uint32_t d) {
  if (p < 3 || !is_prime(p)) {
    throw Error(ErrorCode::NotPrime, "modulus " + std::to_string(p) + " is not an odd prime");
  }
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");

  auto data = std::make_shared<Data>();
  data->p = p;
  data->d = d;
  std::uint64_t size = 1;
  for (std::uint32_t axis = 0; axis < d; ++axis) {
    data->stride.push_back(static_cast<Index>(size));
    size *= p;
    if (size > kMaxPoints) {
      throw Error(ErrorCode::TooLarge, std::to_string(p) + "^" + std::to_string(d) +
                                           " exceeds the supported group order 2^22");
    }
  }
  data->size = static_cast<Index>(size);

  data->roots.resize(p);
  for (std::uint32_t k = 0; k < p; ++k) {
    data->roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / p);
  }
  // eta(1) = 1, so epsilon = g(1) / sqrt(p).
  Complex g1 = 0.0;
  for (std::uint64_t x = 0; x < p; ++x) g1 += data->roots[x * x % p];
  data->epsilon = g1 / std::sqrt(static_cast<double>(p));
  data_ = std::move(data);
}

std::uint32_t FieldContext::reduce(std::int64_t x) const noexcept {
  const std::int64_t r = x % static_cast<std::int64_t>(p());
  return static_cast<std::uint32_t>(r < 0 ? r + p() : r);
}

std::uint32_t FieldContext::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint32_t result = 1 % p();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::uint32_t FieldContext::inv(std::uint32_t a) const {
  if (a % p() == 0) throw Error(ErrorCode::ZeroParameter, "zero has no inverse");
  return pow(a, p() - 2);
}

Index FieldContext::encode(std::span<const std::uint32_t> coords) const {
  if (coords.size() != d()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(d()) + " coordinates, got " +
                                                  std::to_string(coords.size()));
  }
  Index index = 0;
  for (std::uint32_t axis = 0; axis < d(); ++axis) {
    if (coords[axis] >= p()) {
      throw Error(ErrorCode::InvalidArgument,
                  "coordinate " + std::to_string(coords[axis]) + " outside [0, " + std::to_string(p()) + ")");
    }
    index += coords[axis] * data_->stride[axis];
  }
  return index;
}

Index FieldContext::encode_signed(std::span<const std::int64_t> coords) const {
  Point reduced;
  reduced.reserve(coords.size());
  for (auto c : coords) reduced.push_back(reduce(c));
  return encode(reduced);
}

Point FieldContext::decode(Index index) const {
  Point point(d());
  for (std::uint32_t axis = 0; axis < d(); ++axis) {
    point[axis] = index % p();
    index /= p();
  }
  return point;
}

Index FieldContext::add_points(Index a, Index b) const noexcept {
  Index out = 0;
  for (std::uint32_t axis = 0; axis < d(); ++axis) {
    out += add(a % p(), b % p()) * data_->stride[axis];
    a /= p();
    b /= p();
  }
  return out;
}

Index FieldContext::sub_points(Index a, Index b) const noexcept {
  Index out = 0;
  for (std::uint32_t axis = 0; axis < d(); ++axis) {
    out += sub(a % p(), b % p()) * data_->stride[axis];
    a /= p();
    b /= p();
  }
  return out;
}

Index FieldContext::neg_point(Index a) const noexcept {
  Index out = 0;
  for (std::uint32_t axis = 0; axis < d(); ++axis) {
    out += neg(a % p()) * data_->stride[axis];
    a /= p();
  }
  return out;
}

std::uint32_t FieldContext::dot(Index m, Index x) const noexcept {
  std::uint64_t acc = 0;
  for (std::uint32_t axis = 0; axis < d(); ++axis) {
    acc += std::uint64_t{m % p()} * (x % p());
    m /= p();
    x /= p();
  }
  return static_cast<std::uint32_t>(acc % p());
}

Index FieldContext::lex_rank(Index index) const noexcept {
  Index rank = 0;
  for (std::uint32_t axis = 0; axis < d(); ++axis) {
    rank = rank * p() + index % p();
    index /= p();
  }
  return rank;
}

Index FieldContext::from_lex_rank(Index rank) const noexcept {
  // lex_rank reverses the digit order, so it is its own inverse.
  return lex_rank(rank);
}

int legendre(const FieldContext& ctx, std::uint32_t k) {
  k %= ctx.p();
  if (k == 0) return 0;
  return ctx.pow(k, (ctx.p() - 1) / 2) == 1 ? 1 : -1;
}

Complex gauss_sum(const FieldContext& ctx, std::uint32_t k) {
  k %= ctx.p();
  Complex sum = 0.0;
  for (std::uint32_t x = 0; x < ctx.p(); ++x) sum += ctx.chi(ctx.mul(k, ctx.mul(x, x)));
  return sum;
}

Complex kloosterman(const FieldContext& ctx, std::uint32_t a, std::uint32_t b) {
  a %= ctx.p();
  b %= ctx.p();
  if (a == 0 || b == 0) throw Error(ErrorCode::ZeroParameter, "Kloosterman parameters must be nonzero");
  Complex sum = 0.0;
  for (std::uint32_t j = 1; j < ctx.p(); ++j) {
    sum += ctx.chi(ctx.add(ctx.mul(a, j), ctx.mul(b, ctx.inv(j))));
  }
  return sum;
}

std::vector<std::uint32_t> normalize_poly(const FieldContext& ctx, std::span<const std::int64_t> coeffs) {
  std::vector<std::uint32_t> out;
  out.reserve(coeffs.size());
  for (auto c : coeffs) out.push_back(ctx.reduce(c));
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::uint32_t eval_poly(const FieldContext& ctx, std::span<const std::uint32_t> coeffs, std::uint32_t x) noexcept {
  std::uint32_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = ctx.add(ctx.mul(acc, x), *it);
  return acc;
}

Complex weil_poly_sum(const FieldContext& ctx, std::span<const std::int64_t> coeffs) {
  const auto f = normalize_poly(ctx, coeffs);
  const auto degree = poly_degree(f);
  if (degree == 0) throw Error(ErrorCode::ConstantPolynomial, "polynomial must have degree at least 1");
  if (degree % ctx.p() == 0) {
    throw Error(ErrorCode::DegreeDivisibleByP,
                "degree " + std::to_string(degree) + " is divisible by p = " + std::to_string(ctx.p()));
  }
  Complex sum = 0.0;
  for (std::uint32_t j = 0; j < ctx.p(); ++j) sum += ctx.chi(eval_poly(ctx, f, j));
  return sum;
}

}  // namespace ffvc
