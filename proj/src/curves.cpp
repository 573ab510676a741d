#include "ffvc/curves.hpp"

#include <charconv>
#include <sstream>
#include <string>

#include "ffvc/error.hpp"

namespace ffvc {

namespace {

void require_plane(const FieldContext& ctx, const char* what) {
  if (ctx.d() != 2) throw Error(ErrorCode::InvalidArgument, std::string(what) + " requires d = 2");
}

std::int64_t parse_int(std::string_view text, std::string_view descriptor) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError,
                "bad integer '" + std::string(text) + "' in curve descriptor '" + std::string(descriptor) + "'");
  }
  return value;
}

std::vector<std::int64_t> parse_int_list(std::string_view text, std::string_view descriptor) {
  std::vector<std::int64_t> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_int(text.substr(0, comma), descriptor));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string join(std::span<const std::uint32_t> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

QuadraticSpec::QuadraticSpec(FieldContext field, const std::array<std::int64_t, 6>& coefficients)
    : field_(std::move(field)) {
  for (std::size_t i = 0; i < 6; ++i) c_[i] = field_.reduce(coefficients[i]);
  if (A() == 0 && B() == 0 && C() == 0) throw Error(ErrorCode::NotQuadratic, "quadratic part vanishes");
  // f in F[x] iff every monomial involving y vanishes; likewise for F[y].
  if (B() == 0 && C() == 0 && E() == 0) throw Error(ErrorCode::NotQuadratic, "f lies in F_p[x]");
  if (A() == 0 && B() == 0 && D() == 0) throw Error(ErrorCode::NotQuadratic, "f lies in F_p[y]");
}

ModMatrix QuadraticSpec::quadratic_matrix() const {
  const auto half = field_.inv(2);
  ModMatrix m(field_, 2);
  m(0, 0) = A();
  m(0, 1) = m(1, 0) = field_.mul(B(), half);
  m(1, 1) = C();
  return m;
}

ModMatrix QuadraticSpec::bordered_matrix() const {
  const auto half = field_.inv(2);
  ModMatrix m(field_, 3);
  m(0, 0) = A();
  m(1, 1) = C();
  m(2, 2) = F();
  m(0, 1) = m(1, 0) = field_.mul(B(), half);
  m(0, 2) = m(2, 0) = field_.mul(D(), half);
  m(1, 2) = m(2, 1) = field_.mul(E(), half);
  return m;
}

std::uint32_t QuadraticSpec::evaluate(std::uint32_t x, std::uint32_t y) const noexcept {
  const auto& f = field_;
  std::uint32_t v = f.mul(A(), f.mul(x, x));
  v = f.add(v, f.mul(B(), f.mul(x, y)));
  v = f.add(v, f.mul(C(), f.mul(y, y)));
  v = f.add(v, f.mul(D(), x));
  v = f.add(v, f.mul(E(), y));
  return f.add(v, F());
}

ConicClassification classify_quadratic(const QuadraticSpec& spec) {
  return {spec.det3() != 0, spec.det2() == 0};
}

std::array<std::uint32_t, 2> CanonicalForm::apply(std::uint32_t x, std::uint32_t y) const noexcept {
  const auto& f = field;
  return {f.add(f.add(f.mul(linear[0], x), f.mul(linear[1], y)), offset[0]),
          f.add(f.add(f.mul(linear[2], x), f.mul(linear[3], y)), offset[1])};
}

bool CanonicalForm::canonical_contains(std::uint32_t X, std::uint32_t Y) const noexcept {
  const auto& f = field;
  if (kind == CanonicalKind::Parabola) return Y == f.mul(X, X);
  return f.add(f.add(f.mul(a, f.mul(X, X)), f.mul(b, f.mul(Y, Y))), c) == 0;
}

CanonicalForm reduce_quadratic(const QuadraticSpec& spec) {
  const auto& f = spec.field();
  const std::uint32_t half = f.inv(2);
  const std::uint32_t det2 = spec.det2();

  // Congruence diagonalization: (X, Y) = L v turns Q(v) into a X^2 + b Y^2.
  std::array<std::uint32_t, 4> L{};
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  if (spec.A() != 0) {
    L = {1, f.mul(f.mul(spec.B(), half), f.inv(spec.A())), 0, 1};
    a = spec.A();
    b = f.mul(det2, f.inv(spec.A()));
  } else if (spec.C() != 0) {
    L = {1, 0, f.mul(f.mul(spec.B(), half), f.inv(spec.C())), 1};
    a = f.mul(det2, f.inv(spec.C()));
    b = spec.C();
  } else {
    // Q = B x y = (B/4)(x + y)^2 - (B/4)(x - y)^2.
    L = {1, 1, 1, f.neg(1)};
    a = f.mul(spec.B(), f.inv(4));
    b = f.neg(a);
  }

  CanonicalForm form{f};
  if (det2 != 0) {
    // Complete the square: w = -1/2 M^{-1} (D, E)^t, F' = w^t M w + (D, E) . w + F.
    const ModMatrix M = spec.quadratic_matrix();
    const auto minv_de = M.inverse().apply({spec.D(), spec.E()});
    const std::array<std::uint32_t, 2> w{f.neg(f.mul(half, minv_de[0])), f.neg(f.mul(half, minv_de[1]))};
    const auto mw = M.apply({w[0], w[1]});
    std::uint32_t f_prime = f.add(f.mul(w[0], mw[0]), f.mul(w[1], mw[1]));
    f_prime = f.add(f_prime, f.add(f.mul(spec.D(), w[0]), f.mul(spec.E(), w[1])));
    f_prime = f.add(f_prime, spec.F());

    form.kind = CanonicalKind::Diagonal;
    form.a = a;
    form.b = b;
    form.c = f_prime;
    form.linear = L;
    form.center = w;
    // z = L (v - w).
    form.offset = {f.neg(f.add(f.mul(L[0], w[0]), f.mul(L[1], w[1]))),
                   f.neg(f.add(f.mul(L[2], w[0]), f.mul(L[3], w[1])))};
    return form;
  }

  // Degenerate quadratic part: exactly one diagonal coefficient survives; keep it on X.
  if (a == 0) {
    std::swap(a, b);
    L = {L[2], L[3], L[0], L[1]};
  }
  // Linear terms in the new coordinates: (l1, l2) = (D, E) L^{-1}.
  const ModMatrix Linv = ModMatrix(f, 2, {L[0], L[1], L[2], L[3]}).inverse();
  const std::uint32_t l1 = f.add(f.mul(spec.D(), Linv(0, 0)), f.mul(spec.E(), Linv(1, 0)));
  const std::uint32_t l2 = f.add(f.mul(spec.D(), Linv(0, 1)), f.mul(spec.E(), Linv(1, 1)));
  if (l2 == 0) {
    throw Error(ErrorCode::DegenerateConic, "degenerate quadratic part without a linear term: a pair of lines");
  }
  // a X^2 + l1 X + l2 Y + F = 0  <=>  Y' = X'^2 with X' = X + l1/(2a), Y' = (Y - k)/s,
  // s = -a/l2, k = -(F - l1^2/(4a))/l2.
  const std::uint32_t ainv = f.inv(a);
  const std::uint32_t shift_x = f.mul(f.mul(l1, half), ainv);
  const std::uint32_t l2inv = f.inv(l2);
  const std::uint32_t s = f.neg(f.mul(a, l2inv));
  const std::uint32_t const_term = f.sub(spec.F(), f.mul(f.mul(l1, l1), f.mul(ainv, f.inv(4))));
  const std::uint32_t k = f.neg(f.mul(const_term, l2inv));
  const std::uint32_t sinv = f.inv(s);

  form.kind = CanonicalKind::Parabola;
  form.linear = {L[0], L[1], f.mul(sinv, L[2]), f.mul(sinv, L[3])};
  form.offset = {shift_x, f.neg(f.mul(sinv, k))};
  return form;
}

PointSet zero_set(const QuadraticSpec& spec, const FieldContext& plane) {
  require_plane(plane, "conic zero set");
  if (plane.p() != spec.field().p()) throw Error(ErrorCode::ContextMismatch, "conic over another field");
  return PointSet::from_predicate(plane, [&](Index v) { return spec.evaluate(plane.coord(v, 0), plane.coord(v, 1)) == 0; });
}

PointSet canonical_zero_set(const CanonicalForm& form, const FieldContext& plane) {
  require_plane(plane, "canonical zero set");
  return PointSet::from_predicate(plane,
                                  [&](Index v) { return form.canonical_contains(plane.coord(v, 0), plane.coord(v, 1)); });
}

std::string CurveHandle::descriptor() const {
  struct Visitor {
    std::string operator()(const family::Sphere& s) const { return "circle:" + std::to_string(s.t); }
    std::string operator()(const family::Paraboloid&) const { return "paraboloid"; }
    std::string operator()(const family::Conic& c) const { return "conic:" + join(c.spec.coefficients()); }
    std::string operator()(const family::PolyGraph& g) const { return "polygraph:" + join(g.coeffs); }
    std::string operator()(const family::SymmetrizedParabola&) const { return "sym-parabola"; }
  };
  return std::visit(Visitor{}, family);
}

CurveHandle make_sphere(const FieldContext& ctx, std::uint32_t t) {
  t %= ctx.p();
  auto points = PointSet::from_predicate(ctx, [&](Index x) {
    std::uint32_t norm = 0;
    for (std::uint32_t axis = 0; axis < ctx.d(); ++axis) {
      const auto c = ctx.coord(x, axis);
      norm = ctx.add(norm, ctx.mul(c, c));
    }
    return norm == t;
  });
  return {family::Sphere{t}, std::move(points)};
}

CurveHandle make_paraboloid(const FieldContext& ctx) {
  if (ctx.d() < 2) throw Error(ErrorCode::InvalidArgument, "paraboloid requires d >= 2");
  const std::uint32_t last = ctx.d() - 1;
  auto points = PointSet::from_predicate(ctx, [&](Index x) {
    std::uint32_t norm = 0;
    for (std::uint32_t axis = 0; axis < last; ++axis) {
      const auto c = ctx.coord(x, axis);
      norm = ctx.add(norm, ctx.mul(c, c));
    }
    return ctx.coord(x, last) == norm;
  });
  return {family::Paraboloid{}, std::move(points)};
}

CurveHandle make_conic(const FieldContext& ctx, const std::array<std::int64_t, 6>& coefficients) {
  require_plane(ctx, "conic");
  QuadraticSpec spec(FieldContext(ctx.p()), coefficients);
  const auto form = reduce_quadratic(spec);
  if (form.kind == CanonicalKind::Diagonal && form.c == 0) {
    throw Error(ErrorCode::DegenerateConic, "reduces to a X^2 + b Y^2 = 0");
  }
  auto points = zero_set(spec, ctx);
  return {family::Conic{std::move(spec)}, std::move(points)};
}

CurveHandle make_poly_graph(const FieldContext& ctx, std::span<const std::int64_t> coeffs) {
  require_plane(ctx, "polynomial graph");
  auto f = normalize_poly(ctx, coeffs);
  const auto degree = poly_degree(f);
  if (degree < 2) throw Error(ErrorCode::BadDegree, "polynomial graph needs degree >= 2");
  if (degree % ctx.p() == 0) {
    throw Error(ErrorCode::BadDegree, "degree " + std::to_string(degree) + " is divisible by p");
  }
  std::vector<Index> members;
  members.reserve(ctx.p());
  for (std::uint32_t x = 0; x < ctx.p(); ++x) {
    const std::array<std::uint32_t, 2> pt{x, eval_poly(ctx, f, x)};
    members.push_back(ctx.encode(pt));
  }
  auto points = PointSet::from_indices(ctx, members);
  return {family::PolyGraph{std::move(f)}, std::move(points)};
}

CurveHandle make_symmetrized_parabola(const FieldContext& ctx) {
  require_plane(ctx, "symmetrized parabola");
  std::vector<Index> members;
  for (std::uint32_t x = 0; x < ctx.p(); ++x) {
    const auto sq = ctx.mul(x, x);
    const std::array<std::uint32_t, 2> up{x, sq};
    const std::array<std::uint32_t, 2> down{x, ctx.neg(sq)};
    members.push_back(ctx.encode(up));
    members.push_back(ctx.encode(down));
  }
  auto points = PointSet::from_indices(ctx, members);
  return {family::SymmetrizedParabola{}, std::move(points)};
}

CurveHandle make_curve(const FieldContext& ctx, std::string_view descriptor) {
  const auto colon = descriptor.find(':');
  const auto name = descriptor.substr(0, colon);
  const auto args = colon == std::string_view::npos ? std::string_view{} : descriptor.substr(colon + 1);
  const bool has_args = colon != std::string_view::npos;

  if (name == "circle" || name == "sphere") {
    if (!has_args) throw Error(ErrorCode::ParseError, "circle descriptor needs a radius: circle:t");
    return make_sphere(ctx, ctx.reduce(parse_int(args, descriptor)));
  }
  if (name == "paraboloid" && !has_args) return make_paraboloid(ctx);
  if (name == "sym-parabola" && !has_args) return make_symmetrized_parabola(ctx);
  if (name == "conic") {
    const auto values = parse_int_list(args, descriptor);
    if (values.size() != 6) throw Error(ErrorCode::ParseError, "conic descriptor needs six coefficients A,B,C,D,E,F");
    return make_conic(ctx, {values[0], values[1], values[2], values[3], values[4], values[5]});
  }
  if (name == "polygraph") {
    if (!has_args) throw Error(ErrorCode::ParseError, "polygraph descriptor needs coefficients");
    const auto values = parse_int_list(args, descriptor);
    return make_poly_graph(ctx, values);
  }
  throw Error(ErrorCode::ParseError, "unknown curve descriptor '" + std::string(descriptor) + "'");
}

}  // namespace ffvc
