#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ffvc/analysis.hpp"
#include "ffvc/cli.hpp"
#include "ffvc/curves.hpp"
#include "ffvc/error.hpp"
#include "ffvc/field.hpp"
#include "ffvc/presets.hpp"
#include "ffvc/random_salem.hpp"
#include "ffvc/report.hpp"
#include "ffvc/shatter.hpp"

namespace py = pybind11;
using namespace ffvc;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

// A shape is either a curve descriptor or a list of coordinate tuples.
PointSet as_set(const FieldContext& ctx, const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return make_curve(ctx, obj.cast<std::string>()).points;
  std::vector<Point> pts;
  for (const auto& item : obj) pts.push_back(item.cast<Point>());
  return PointSet::from_points(ctx, pts);
}

PointSet as_domain(const FieldContext& ctx, const py::object& obj) {
  return obj.is_none() ? PointSet::full(ctx) : as_set(ctx, obj);
}

py::list as_tuples(const FieldContext& ctx, const PointSet& s) {
  py::list out;
  for (auto x : s.lex_members()) out.append(py::tuple(py::cast(ctx.decode(x))));
  return out;
}

std::vector<Index> encode_all(const FieldContext& ctx, const std::vector<Point>& pts) {
  std::vector<Index> out;
  for (const auto& x : pts) out.push_back(ctx.encode(x));
  return out;
}

}  // namespace

PYBIND11_MODULE(_ffvc, m) {
  m.doc() = "VC dimension and Fourier tools for point sets in F_p^d";
  m.attr("__version__") = version();

  py::register_exception<Error>(m, "FfvcError", PyExc_ValueError);

  m.def("points", [](std::uint32_t p, const py::object& shape, std::uint32_t d) {
    const FieldContext ctx(p, d);
    return as_tuples(ctx, as_set(ctx, shape));
  }, py::arg("p"), py::arg("shape"), py::arg("d") = 2);

  m.def("salem_check", [](std::uint32_t p, const py::object& shape, std::uint32_t d, double gamma, double constant) {
    const FieldContext ctx(p, d);
    return to_py(to_json(salem_report(as_set(ctx, shape), SalemParams{gamma, constant})));
  }, py::arg("p"), py::arg("shape"), py::arg("d") = 2, py::arg("gamma") = 0.0, py::arg("constant") = 2.0);

  m.def("spectrum", [](std::uint32_t p, const py::object& shape, std::uint32_t d, std::size_t top) {
    const FieldContext ctx(p, d);
    return to_py(to_json(fourier_spectrum(as_set(ctx, shape)), top));
  }, py::arg("p"), py::arg("shape"), py::arg("d") = 2, py::arg("top") = 5);

  m.def("intersection_profile", [](std::uint32_t p, const py::object& shape, std::uint32_t d) {
    const FieldContext ctx(p, d);
    return to_py(to_json(ctx, intersection_profile(as_set(ctx, shape))));
  }, py::arg("p"), py::arg("shape"), py::arg("d") = 2);

  m.def("edge_count", [](std::uint32_t p, const py::object& shape, const py::object& domain, std::uint32_t d,
                         double gamma) {
    const FieldContext ctx(p, d);
    return to_py(to_json(edge_count(as_domain(ctx, domain), as_set(ctx, shape), gamma)));
  }, py::arg("p"), py::arg("shape"), py::arg("domain") = py::none(), py::arg("d") = 2, py::arg("gamma") = 0.0);

  m.def("shatter", [](std::uint32_t p, const py::object& shape, unsigned k, const py::object& domain,
                      const py::object& witness_domain, std::uint32_t d, std::optional<std::uint64_t> seed,
                      std::uint64_t samples, std::uint64_t budget) {
    const FieldContext ctx(p, d);
    const auto e = as_domain(ctx, domain);
    const auto w = witness_domain.is_none() ? e : as_set(ctx, witness_domain);
    const auto problem = ShatterProblem::with_witnesses(as_set(ctx, shape), e, w, k);
    SearchOutcome out;
    {
      py::gil_scoped_release release;
      out = seed ? shatter_search(problem, RandomStrategy{*seed, samples}, budget) : shatter_search(problem, {}, budget);
    }
    return to_py(to_json(ctx, out));
  }, py::arg("p"), py::arg("shape"), py::arg("k"), py::arg("domain") = py::none(),
     py::arg("witness_domain") = py::none(), py::arg("d") = 2, py::arg("seed") = py::none(),
     py::arg("samples") = 100000, py::arg("budget") = kDefaultTupleBudget,
     "Exhaustive search by default; passing a seed switches to random sampling.");

  m.def("verify_witness", [](std::uint32_t p, const py::object& shape, const std::vector<Point>& points,
                             const std::vector<Point>& witnesses, const py::object& domain,
                             const py::object& witness_domain, std::uint32_t d) {
    const FieldContext ctx(p, d);
    const auto e = as_domain(ctx, domain);
    const auto w = witness_domain.is_none() ? e : as_set(ctx, witness_domain);
    const auto problem =
        ShatterProblem::with_witnesses(as_set(ctx, shape), e, w, static_cast<unsigned>(points.size()));
    return verify_witness(problem, ShatterWitness{encode_all(ctx, points), encode_all(ctx, witnesses)});
  }, py::arg("p"), py::arg("shape"), py::arg("points"), py::arg("witnesses"), py::arg("domain") = py::none(),
     py::arg("witness_domain") = py::none(), py::arg("d") = 2);

  m.def("vc_bounds", [](std::uint32_t p, const py::object& shape, unsigned k_max, const py::object& domain,
                        std::uint32_t d) {
    const FieldContext ctx(p, d);
    const auto e = as_domain(ctx, domain);
    VcBounds r;
    const auto s = as_set(ctx, shape);
    {
      py::gil_scoped_release release;
      r = vc_bounds(s, e, e, k_max);
    }
    return to_py(to_json(ctx, r));
  }, py::arg("p"), py::arg("shape"), py::arg("k_max") = 4, py::arg("domain") = py::none(), py::arg("d") = 2);

  m.def("construct3", [](std::uint32_t p, const py::object& shape, const py::object& domain) {
    const FieldContext ctx(p, 2);
    return to_py(to_json(ctx, construct_shatter3(as_set(ctx, shape), as_domain(ctx, domain))));
  }, py::arg("p"), py::arg("shape"), py::arg("domain") = py::none());

  m.def("hayes_check", [](std::uint32_t p, const std::vector<Point>& points, std::uint32_t d, double epsilon) {
    const FieldContext ctx(p, d);
    return to_py(to_json(hayes_check(PointSet::from_points(ctx, points), epsilon)));
  }, py::arg("p"), py::arg("points"), py::arg("d") = 2, py::arg("epsilon") = 0.5);

  m.def("random_trials", [](std::uint32_t p, std::uint64_t seed, std::uint64_t size, std::uint64_t trials,
                            double epsilon, double beta) {
    const FieldContext ctx(p, 2);
    return to_py(to_json(monte_carlo(ctx, size == 0 ? p : size, trials, seed, epsilon, beta)));
  }, py::arg("p"), py::arg("seed"), py::arg("size") = 0, py::arg("trials") = 200, py::arg("epsilon") = 0.5,
     py::arg("beta") = 0.45);

  m.def("sample_subset", [](std::uint32_t p, std::uint64_t size, std::uint64_t seed, std::uint32_t d) {
    const FieldContext ctx(p, d);
    return as_tuples(ctx, sample_subset(ctx, size, seed));
  }, py::arg("p"), py::arg("size"), py::arg("seed"), py::arg("d") = 2);

  m.def("gauss_sum", [](std::uint32_t p, std::uint32_t k) { return gauss_sum(FieldContext(p), k); });
  m.def("kloosterman", [](std::uint32_t p, std::uint32_t a, std::uint32_t b) {
    return kloosterman(FieldContext(p), a, b);
  });

  m.def("reproduce_f11_table", [] {
    const auto r = reproduce_f11_table();
    return py::make_tuple(r.pass, to_py(r.detail));
  });
  m.def("reproduce_x_tuple", [](std::uint32_t p) {
    const auto r = reproduce_x_tuple(p);
    return py::make_tuple(r.pass, to_py(r.detail));
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line tool in-process; returns (exit_code, stdout, stderr).");
}
