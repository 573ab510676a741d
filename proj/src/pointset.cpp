#include "ffvc/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "ffvc/error.hpp"
#include "ffvc/parallel.hpp"

namespace ffvc {

namespace {

void require_same_context(const PointSet& a, const PointSet& b) {
  if (!(a.context() == b.context())) {
    throw Error(ErrorCode::ContextMismatch, "point sets live in different groups");
  }
}

// One pass of the length-p transform along `axis`; the forward direction uses chi(-m x).
std::vector<Complex> transform_axis(const FieldContext& ctx, std::span<const Complex> in, std::uint32_t axis,
                                    bool negate_exponent) {
  const std::uint32_t p = ctx.p();
  const Index stride = ctx.stride(axis);
  const Index lines = ctx.size() / p;
  std::vector<Complex> out(in.size());
  parallel_for(lines, [&](std::size_t line) {
    // Line start: digits below `axis` from line % stride, digits above from line / stride.
    const Index low = static_cast<Index>(line % stride);
    const Index high = static_cast<Index>(line / stride);
    const Index base = low + high * stride * p;
    for (std::uint32_t m = 0; m < p; ++m) {
      Complex acc = 0.0;
      std::uint64_t phase = 0;
      for (std::uint32_t x = 0; x < p; ++x) {
        const Complex& v = in[base + x * stride];
        if (v != Complex{}) {
          const auto e = static_cast<std::uint32_t>(phase);
          acc += v * ctx.chi(negate_exponent ? ctx.neg(e) : e);
        }
        phase += m;
        if (phase >= p) phase -= p;
      }
      out[base + m * stride] = acc;
    }
  });
  return out;
}

}  // namespace

PointSet::PointSet(FieldContext ctx) : ctx_(std::move(ctx)), bits_(ctx_.size()) {}

PointSet PointSet::full(FieldContext ctx) {
  PointSet s(std::move(ctx));
  s.bits_.set_all();
  s.size_ = s.bits_.count();
  return s;
}

PointSet PointSet::from_indices(FieldContext ctx, std::span<const Index> indices) {
  PointSet s(std::move(ctx));
  for (auto x : indices) {
    if (x >= s.ctx_.size()) throw Error(ErrorCode::InvalidArgument, "point index out of range");
    s.bits_.set(x);
  }
  s.size_ = s.bits_.count();
  return s;
}

PointSet PointSet::from_points(FieldContext ctx, const std::vector<Point>& points) {
  PointSet s(std::move(ctx));
  for (const auto& pt : points) s.bits_.set(s.ctx_.encode(pt));
  s.size_ = s.bits_.count();
  return s;
}

std::vector<Index> PointSet::indices() const {
  std::vector<Index> out;
  out.reserve(size_);
  for (auto i = bits_.find_first(); i != DynamicBitset::npos; i = bits_.find_next_from(i + 1)) {
    out.push_back(static_cast<Index>(i));
  }
  return out;
}

std::vector<Index> PointSet::lex_members() const {
  auto out = indices();
  std::sort(out.begin(), out.end(), [&](Index a, Index b) { return ctx_.lex_rank(a) < ctx_.lex_rank(b); });
  return out;
}

PointSet negate(const PointSet& s) {
  const auto& ctx = s.context();
  return PointSet::from_predicate(ctx, [&](Index x) { return s.contains(ctx.neg_point(x)); });
}

PointSet translate(const PointSet& s, Index v) {
  const auto& ctx = s.context();
  if (v >= ctx.size()) throw Error(ErrorCode::InvalidArgument, "translation vector out of range");
  return PointSet::from_predicate(ctx, [&](Index x) { return s.contains(ctx.sub_points(x, v)); });
}

PointSet linear_image(const PointSet& s, const ModMatrix& transform) {
  const auto& ctx = s.context();
  if (transform.n() != ctx.d()) throw Error(ErrorCode::DimensionMismatch, "transform size differs from d");
  if (transform.field().p() != ctx.p()) throw Error(ErrorCode::ContextMismatch, "transform over another field");
  const ModMatrix inverse = transform.inverse();
  return PointSet::from_predicate(ctx, [&](Index y) { return s.contains(ctx.encode(inverse.apply(ctx.decode(y)))); });
}

PointSet set_union(const PointSet& a, const PointSet& b) {
  require_same_context(a, b);
  return PointSet::from_predicate(a.context(), [&](Index x) { return a.contains(x) || b.contains(x); });
}

PointSet set_intersection(const PointSet& a, const PointSet& b) {
  require_same_context(a, b);
  return PointSet::from_predicate(a.context(), [&](Index x) { return a.contains(x) && b.contains(x); });
}

bool is_symmetric(const PointSet& s) {
  const auto& ctx = s.context();
  for (auto x : s.indices()) {
    if (!s.contains(ctx.neg_point(x))) return false;
  }
  return true;
}

std::vector<Complex> fourier_transform(const FieldContext& ctx, std::span<const Complex> f) {
  if (f.size() != ctx.size()) throw Error(ErrorCode::DimensionMismatch, "function table has wrong length");
  std::vector<Complex> cur(f.begin(), f.end());
  for (std::uint32_t axis = 0; axis < ctx.d(); ++axis) cur = transform_axis(ctx, cur, axis, true);
  const double scale = 1.0 / static_cast<double>(ctx.size());
  for (auto& v : cur) v *= scale;
  return cur;
}

std::vector<Complex> inverse_fourier_transform(const FieldContext& ctx, std::span<const Complex> fhat) {
  if (fhat.size() != ctx.size()) throw Error(ErrorCode::DimensionMismatch, "spectrum table has wrong length");
  std::vector<Complex> cur(fhat.begin(), fhat.end());
  for (std::uint32_t axis = 0; axis < ctx.d(); ++axis) cur = transform_axis(ctx, cur, axis, false);
  return cur;
}

SpectrumTable::SpectrumTable(FieldContext ctx, std::vector<Complex> values)
    : ctx_(std::move(ctx)), values_(std::move(values)) {
  if (values_.size() != ctx_.size()) throw Error(ErrorCode::DimensionMismatch, "spectrum has wrong length");
  for (Index m = 1; m < values_.size(); ++m) {
    const double mag = std::abs(values_[m]);
    if (mag > max_nontrivial_) {
      max_nontrivial_ = mag;
      argmax_ = m;
    }
  }
}

SpectrumTable fourier_spectrum(const PointSet& s) {
  const auto& ctx = s.context();
  std::vector<Complex> f(ctx.size());
  for (auto x : s.indices()) f[x] = 1.0;
  return SpectrumTable(ctx, fourier_transform(ctx, f));
}

double salem_bound(const FieldContext& ctx, std::size_t set_size, const SalemParams& params) {
  if (params.gamma < 0.0) throw Error(ErrorCode::InvalidArgument, "gamma must be nonnegative");
  if (!(params.constant > 0.0)) throw Error(ErrorCode::InvalidArgument, "Salem constant must be positive");
  const double q = ctx.p();
  const double log_factor = params.gamma == 0.0 ? 1.0 : std::pow(std::log(q), params.gamma);
  return params.constant * std::pow(q, -static_cast<double>(ctx.d())) * log_factor *
         std::sqrt(static_cast<double>(set_size));
}

SalemReport salem_report(const PointSet& s, const SalemParams& params) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "Salem report needs a nonempty set");
  return salem_report(s, fourier_spectrum(s), params);
}

SalemReport salem_report(const PointSet& s, const SpectrumTable& spectrum, const SalemParams& params) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "Salem report needs a nonempty set");
  SalemReport r;
  r.max_nontrivial = spectrum.max_nontrivial();
  r.bound = salem_bound(s.context(), s.size(), params);
  r.ratio = r.max_nontrivial / r.bound;
  r.pass = r.max_nontrivial <= r.bound;
  return r;
}

PointSet read_pointset(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + why);
  };

  if (!next_content_line()) throw Error(ErrorCode::ParseError, "missing \"p d\" header");
  std::int64_t p = 0, d = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> p >> d) || (header >> extra)) fail("header must be \"p d\"");
    if (p < 3 || p > 0xFFFFFFFFLL || d < 1 || d > 64) fail("bad header values");
  }
  std::optional<FieldContext> parsed;
  try {
    parsed.emplace(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(d));
  } catch (const Error& e) {
    fail(e.what());
  }
  const FieldContext ctx = *parsed;
  std::vector<Index> members;
  DynamicBitset seen(ctx.size());
  while (next_content_line()) {
    std::istringstream row(line);
    Point pt;
    std::int64_t v = 0;
    while (row >> v) {
      if (v < 0 || v >= p) fail("coordinate " + std::to_string(v) + " outside [0, p)");
      pt.push_back(static_cast<std::uint32_t>(v));
    }
    if (!row.eof()) fail("non-integer token");
    if (pt.size() != static_cast<std::size_t>(d)) fail("expected " + std::to_string(d) + " coordinates");
    const Index idx = ctx.encode(pt);
    if (seen.test(idx)) fail("duplicate point");
    seen.set(idx);
    members.push_back(idx);
  }
  return PointSet::from_indices(ctx, members);
}

void write_pointset(std::ostream& out, const PointSet& s) {
  const auto& ctx = s.context();
  out << ctx.p() << ' ' << ctx.d() << '\n';
  for (auto x : s.lex_members()) {
    const auto pt = ctx.decode(x);
    for (std::size_t i = 0; i < pt.size(); ++i) out << (i ? " " : "") << pt[i];
    out << '\n';
  }
}

}  // namespace ffvc
