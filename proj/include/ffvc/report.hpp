#pragma once

// JSON shapes for every report type. Doubles are rounded to 12 significant
// digits so that dumps are stable across platforms; integers stay exact.

#include "json.hpp"

#include "ffvc/analysis.hpp"
#include "ffvc/curves.hpp"
#include "ffvc/field.hpp"
#include "ffvc/pointset.hpp"
#include "ffvc/random_salem.hpp"
#include "ffvc/shatter.hpp"

namespace ffvc {

using Json = nlohmann::ordered_json;

const char* version() noexcept;

double round_sig(double x, int digits = 12);

Json point_json(const FieldContext& ctx, Index x);
Json complex_json(Complex z);
Json points_json(const PointSet& s);  // lexicographic order

Json to_json(const SalemReport& r);
Json to_json(const SpectrumTable& t, std::size_t top);  // summary plus the `top` largest nontrivial coefficients
Json to_json(const EdgeCountReport& r);
Json to_json(const BilinearReport& r);
Json to_json(const FieldContext& ctx, const IntersectionProfile& r);
Json to_json(const FieldContext& ctx, const ShatterWitness& w);
Json to_json(const FieldContext& ctx, const SearchOutcome& r);
Json to_json(const FieldContext& ctx, const VcBounds& r);
Json to_json(const FieldContext& ctx, const CubeWitness& c);
Json to_json(const ConicClassification& c);
Json to_json(const CanonicalForm& f);
Json to_json(const HayesReport& r);
Json to_json(const TrialSummary& r);
Json to_json(const SymmetrizeReport& r);
Json to_json(const VcRandomSummary& r);

}  // namespace ffvc
