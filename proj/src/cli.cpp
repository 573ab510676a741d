#include "ffvc/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ffvc/analysis.hpp"
#include "ffvc/curves.hpp"
#include "ffvc/error.hpp"
#include "ffvc/parallel.hpp"
#include "ffvc/presets.hpp"
#include "ffvc/random_salem.hpp"
#include "ffvc/report.hpp"
#include "ffvc/shatter.hpp"

namespace ffvc::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<std::uint32_t> p;
  std::uint32_t d = 2;
  std::string curve;
  std::string set_file;
  std::string domain = "full";
  std::string witness_domain;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = kDefaultTupleBudget;
  unsigned threads = 0;
  double gamma = 0.0;
  double constant = 2.0;
  unsigned k = 2;
  unsigned k_max = 5;
  std::string strategy = "exhaustive";
  std::uint64_t samples = 100000;
  std::size_t top = 10;
  std::string coeffs;
  std::uint64_t size = 0;
  std::uint64_t trials = 200;
  double epsilon = 0.5;
  double beta = 0.45;
  double min_pass = 0.95;
  std::uint64_t vc_trials = 0;
  std::uint64_t count = 100;
  std::uint64_t polys = 50;
  std::string preset;
  bool list_points = false;
};

// What a subcommand hands back: a headline for text mode, the report body and
// the exit code.
struct Outcome {
  std::string headline;
  Json result;
  int code = 0;
};

std::vector<std::int64_t> parse_ints(const std::string& flag, const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": expected comma-separated integers, got '" + text + "'");
    }
  }
  return out;
}

FieldContext plane_from(const Options& o) {
  if (!o.p) throw UsageError("-p: a prime is required");
  try {
    return FieldContext(*o.p, o.d);
  } catch (const Error& e) {
    throw UsageError(std::string("-p/-d: ") + e.what());
  }
}

PointSet read_set_file(const std::string& flag, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(flag + ": cannot open '" + path + "'");
  try {
    return read_pointset(in);
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

// Either --set or --curve defines S; --set also fixes p and d.
PointSet resolve_shape(Options& o) {
  if (!o.set_file.empty()) {
    auto s = read_set_file("--set", o.set_file);
    if (o.p && (*o.p != s.context().p() || o.d != s.context().d())) {
      throw UsageError("--set: file is over F_" + std::to_string(s.context().p()) + "^" +
                       std::to_string(s.context().d()) + ", which disagrees with -p/-d");
    }
    o.p = s.context().p();
    o.d = s.context().d();
    return s;
  }
  if (o.curve.empty()) throw UsageError("--curve or --set is required");
  const auto ctx = plane_from(o);
  try {
    return make_curve(ctx, o.curve).points;
  } catch (const Error& e) {
    throw UsageError(std::string("--curve: ") + e.what());
  }
}

// "full", "file:<path>", "random:<size>" (needs --seed) or a curve descriptor.
PointSet resolve_domain(const Options& o, const FieldContext& ctx, const std::string& flag, const std::string& spec) {
  if (spec == "full") return PointSet::full(ctx);
  if (spec.rfind("file:", 0) == 0) {
    auto s = read_set_file(flag, spec.substr(5));
    if (!(s.context() == ctx)) throw UsageError(flag + ": file lives in a different group than the shape");
    return s;
  }
  if (spec.rfind("random:", 0) == 0) {
    if (!o.seed) throw UsageError(flag + ": random domains require --seed");
    const auto size = parse_ints(flag, spec.substr(7));
    if (size.size() != 1 || size[0] < 0) throw UsageError(flag + ": random:<size> needs one nonnegative size");
    try {
      return sample_subset(ctx, static_cast<std::uint64_t>(size[0]), *o.seed);
    } catch (const Error& e) {
      throw UsageError(flag + ": " + e.what());
    }
  }
  try {
    return make_curve(ctx, spec).points;
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

Outcome salem_check(Options& o) {
  const auto s = resolve_shape(o);
  if (s.empty()) throw UsageError("--curve/--set: the set is empty");
  if (o.gamma < 0 || o.constant <= 0) throw UsageError("--gamma/--const: need gamma >= 0 and const > 0");
  const auto r = salem_report(s, {o.gamma, o.constant});
  Json j = to_json(r);
  j["size"] = s.size();
  return {r.pass ? "PASS" : "FAIL", j, r.pass ? 0 : 1};
}

Outcome spectrum(Options& o) {
  const auto s = resolve_shape(o);
  Json j = to_json(fourier_spectrum(s), o.top);
  j["size"] = s.size();
  return {"OK", j, 0};
}

Outcome curve(Options& o) {
  const auto s = resolve_shape(o);
  Json j = {{"size", s.size()}};
  if (o.list_points) j["points"] = points_json(s);
  return {"OK", j, 0};
}

Outcome classify(Options& o) {
  const auto c = parse_ints("--coeffs", o.coeffs);
  if (c.size() != 6) throw UsageError("--coeffs: expected six coefficients A,B,C,D,E,F");
  if (o.d != 2) throw UsageError("-d: conics live in the plane, use -d 2");
  const auto plane = plane_from(o);
  const FieldContext line(plane.p());
  std::optional<QuadraticSpec> spec;
  try {
    spec.emplace(line, std::array<std::int64_t, 6>{c[0], c[1], c[2], c[3], c[4], c[5]});
  } catch (const Error& e) {
    throw UsageError(std::string("--coeffs: ") + e.what());
  }
  const auto cls = classify_quadratic(*spec);
  Json j = to_json(cls);
  j["det2"] = spec->det2();
  j["det3"] = spec->det3();
  j["points"] = zero_set(*spec, plane).size();
  try {
    j["canonical"] = to_json(reduce_quadratic(*spec));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateConic) throw;
    j["canonical"] = "line pair";
  }
  std::string head = cls.smooth ? "SMOOTH" : "SINGULAR";
  head += cls.degenerate_quadratic_part ? " DEGENERATE-QUADRATIC-PART" : " NONDEGENERATE";
  return {head, j, 0};
}

Outcome intersect_profile(Options& o) {
  const auto s = resolve_shape(o);
  if (s.empty()) throw UsageError("--curve/--set: the set is empty");
  Json j = to_json(s.context(), intersection_profile(s));
  j["size"] = s.size();
  return {"OK", j, 0};
}

Outcome edge_count_cmd(Options& o) {
  const auto s = resolve_shape(o);
  if (s.empty()) throw UsageError("--curve/--set: the set is empty");
  const auto e = resolve_domain(o, s.context(), "--domain", o.domain);
  Json j = to_json(edge_count(e, s, o.gamma));
  j["domain_size"] = e.size();
  return {"OK", j, 0};
}

ShatterProblem problem_from(Options& o, unsigned k) {
  const auto s = resolve_shape(o);
  const auto e = resolve_domain(o, s.context(), "--domain", o.domain);
  const auto w = o.witness_domain.empty() ? e : resolve_domain(o, s.context(), "--witness-domain", o.witness_domain);
  return ShatterProblem::with_witnesses(s, e, w, k);
}

Outcome shatter(Options& o) {
  if (o.k > 8) throw UsageError("-k: at most 8");
  const auto problem = problem_from(o, o.k);
  SearchStrategy strategy = ExhaustiveStrategy{};
  if (o.strategy == "random") {
    if (!o.seed) throw UsageError("--seed: required with --strategy random");
    strategy = RandomStrategy{*o.seed, o.samples};
  }
  const auto r = shatter_search(problem, strategy, o.budget);
  const auto& ctx = problem.shape.context();
  switch (r.status) {
    case SearchStatus::Found: return {"SHATTERED", to_json(ctx, r), 0};
    case SearchStatus::ExhaustedNo: return {"NOT SHATTERABLE", to_json(ctx, r), 0};
    default: return {"INCONCLUSIVE", to_json(ctx, r), 1};
  }
}

Outcome construct3(Options& o) {
  const auto s = resolve_shape(o);
  const auto e = resolve_domain(o, s.context(), "--domain", o.domain);
  const auto r = construct_shatter3(s, e, o.budget);
  Json j = to_json(s.context(), r);
  const auto cube = build_cube(e, s);
  j["cube"] = cube ? to_json(s.context(), *cube) : Json(nullptr);
  j["cube_verified"] = cube ? verify_cube(e, s, *cube) : false;
  const bool ok = r.status == SearchStatus::Found;
  return {ok ? "SHATTERED" : to_string(r.status), j, ok ? 0 : 1};
}

Outcome vc(Options& o) {
  if (o.k_max > 5) throw UsageError("--k-max: at most 5");
  const auto s = resolve_shape(o);
  const auto e = resolve_domain(o, s.context(), "--domain", o.domain);
  const auto w = o.witness_domain.empty() ? e : resolve_domain(o, s.context(), "--witness-domain", o.witness_domain);
  const auto r = vc_bounds(s, e, w, o.k_max, o.budget);
  std::string head = "VC >= " + std::to_string(r.lower);
  if (r.exact) head = "VC = " + std::to_string(*r.exact);
  return {head, to_json(s.context(), r), 0};
}

Outcome random_trials(Options& o) {
  if (!o.seed) throw UsageError("--seed: required for random-trials");
  if (o.trials == 0) throw UsageError("--trials: must be at least 1");
  const auto ctx = plane_from(o);
  const std::uint64_t size = o.size == 0 ? ctx.p() : o.size;
  if (size > ctx.size()) throw UsageError("--size: exceeds the group order");
  const auto summary = monte_carlo(ctx, size, o.trials, *o.seed, o.epsilon, o.beta);

  bool symmetric = true;
  for (auto seed : summary.trial_seeds) {
    const auto rep = symmetrize(sample_subset(ctx, size, seed));
    symmetric = symmetric && is_symmetric(rep.T) && rep.size_identity;
  }
  Json j = to_json(summary);
  j["symmetrize_ok"] = symmetric;
  bool ok = symmetric && summary.evaluated > 0 && summary.pass_fraction >= o.min_pass;
  if (o.vc_trials > 0) {
    if (o.d != 2) throw UsageError("--vc-trials: the shattering experiment runs in the plane, use -d 2");
    const auto vcr = vc_random_experiment(ctx.p(), o.vc_trials, *o.seed);
    j["vc_random"] = to_json(vcr);
    ok = ok && vcr.all_verified;
  }
  return {ok ? "PASS" : "FAIL", j, ok ? 0 : 1};
}

Outcome reproduce(Options& o) {
  PresetResult r;
  if (o.preset == "f11-table") {
    r = reproduce_f11_table();
  } else if (o.preset == "f17-x" || o.preset == "f23-x" || o.preset == "f29-x") {
    r = reproduce_x_tuple(static_cast<std::uint32_t>(std::stoul(o.preset.substr(1, 2))));
  } else {
    if (!o.p) throw UsageError("-p: required for " + o.preset);
    if (!o.seed) throw UsageError("--seed: required for " + o.preset);
    plane_from(o);
    if (o.preset == "conic-census") {
      r = conic_census(*o.p, o.count, *o.seed);
    } else {
      r = weil_suite(*o.p, o.polys, *o.seed);
    }
  }
  return {r.pass ? "PASS" : "FAIL", r.detail, r.pass ? 0 : 1};
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
  } else if (j.is_array() && !j.empty() && (j.front().is_structured())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json config_echo(const CLI::App& sub) {
  Json cfg = {{"subcommand", sub.get_name()}};
  for (const CLI::Option* opt : sub.get_options()) {
    std::string name = opt->get_positional() ? opt->get_name(true) : opt->get_name();
    name.erase(0, name.find_first_not_of('-'));
    if (name.empty() || name == "help") continue;
    const auto& res = opt->results();
    if (res.size() == 1) {
      cfg[name] = res.front();
    } else if (!res.empty()) {
      cfg[name] = res;
    } else if (!opt->get_default_str().empty()) {
      cfg[name] = opt->get_default_str();
    } else {
      cfg[name] = nullptr;
    }
  }
  return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Fourier analysis, incidence counts and VC-dimension of translate classes over F_p^d", "ffvc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));
  app.option_defaults()->always_capture_default();

  auto add_field = [&](CLI::App* s) {
    s->add_option("-p", o.p, "odd prime p");
    s->add_option("-d", o.d, "dimension d");
    s->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  };
  auto add_shape = [&](CLI::App* s) {
    add_field(s);
    s->add_option("--curve", o.curve, "curve descriptor: circle:t, sphere:t, paraboloid, conic:A,..,F, polygraph:c0,..,cn, sym-parabola");
    s->add_option("--set", o.set_file, "point-set file");
  };
  auto add_domain = [&](CLI::App* s) {
    s->add_option("--domain", o.domain, "E: full, file:<path>, random:<size> or a curve descriptor");
    s->add_option("--seed", o.seed, "seed for randomized paths");
  };

  std::map<CLI::App*, std::function<Outcome(Options&)>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, std::function<Outcome(Options&)> fn) {
    auto* s = app.add_subcommand(name, help);
    handlers[s] = std::move(fn);
    return s;
  };

  auto* salem = sub("salem-check", "compare max |S^(m)| with c q^{-d} (log q)^gamma |S|^{1/2}", salem_check);
  add_shape(salem);
  salem->add_option("--gamma", o.gamma, "log exponent");
  salem->add_option("--const", o.constant, "constant c");

  auto* spec = sub("spectrum", "Fourier coefficients of S", spectrum);
  add_shape(spec);
  spec->add_option("--top", o.top, "number of largest nontrivial coefficients to list");

  auto* crv = sub("curve", "enumerate a curve", curve);
  add_shape(crv);
  crv->add_flag("--points", o.list_points, "list the points");

  auto* cls = sub("classify", "classify a plane conic and reduce it to canonical form", classify);
  add_field(cls);
  cls->add_option("--coeffs", o.coeffs, "A,B,C,D,E,F for Ax^2+Bxy+Cy^2+Dx+Ey+F")->required();

  auto* ip = sub("intersect-profile", "|S cap (S - v)| over all v != 0", intersect_profile);
  add_shape(ip);

  auto* ec = sub("edge-count", "count pairs in E^2 with difference in S", edge_count_cmd);
  add_shape(ec);
  add_domain(ec);
  ec->add_option("--gamma", o.gamma, "log exponent in the normalization");

  auto* sh = sub("shatter", "search for k points of E shattered by translates of S", shatter);
  add_shape(sh);
  add_domain(sh);
  sh->add_option("-k", o.k, "number of points");
  sh->add_option("--witness-domain", o.witness_domain, "W, same forms as --domain (default: E)");
  sh->add_option("--strategy", o.strategy)->check(CLI::IsMember({"exhaustive", "random"}));
  sh->add_option("--samples", o.samples, "tuples drawn by the random strategy");
  sh->add_option("--budget", o.budget, "tuple budget");

  auto* c3 = sub("construct3", "build a 3-shattering from a cube minus a vertex", construct3);
  add_shape(c3);
  add_domain(c3);
  c3->add_option("--budget", o.budget, "maximum cubes to try");

  auto* v = sub("vc", "exhaustive VC-dimension bounds up to k-max", vc);
  add_shape(v);
  add_domain(v);
  v->add_option("--witness-domain", o.witness_domain, "W, same forms as --domain (default: E)");
  v->add_option("--k-max", o.k_max, "largest k to certify (<= 5)");
  v->add_option("--budget", o.budget, "tuple budget per k");

  auto* rt = sub("random-trials", "Hayes check and intersection maxima over random subsets", random_trials);
  add_field(rt);
  rt->add_option("--seed", o.seed, "master seed")->required();
  rt->add_option("--size", o.size, "subset size (0 = p)");
  rt->add_option("--trials", o.trials);
  rt->add_option("--epsilon", o.epsilon);
  rt->add_option("--beta", o.beta, "threshold exponent for max intersections");
  rt->add_option("--min-pass-fraction", o.min_pass, "Hayes pass fraction required for PASS");
  rt->add_option("--vc-trials", o.vc_trials, "also run the shattering experiment on S and S u (-S)");

  auto* rep = sub("reproduce", "run a reproduction preset", reproduce);
  add_field(rep);
  rep->add_option("preset", o.preset)
      ->required()
      ->check(CLI::IsMember({"f11-table", "f17-x", "f23-x", "f29-x", "conic-census", "weil-suite"}));
  rep->add_option("--seed", o.seed, "seed for conic-census and weil-suite");
  rep->add_option("--count", o.count, "conics in the census");
  rep->add_option("--polys", o.polys, "random polynomials per degree in the Weil suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  set_thread_count(o.threads);
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = handlers.at(chosen)(o);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::BudgetExceeded ? 1 : 2;
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Json report = {{"version", version()},
                 {"config", config_echo(*chosen)},
                 {"verdict", outcome.headline},
                 {"exit_code", outcome.code},
                 {"elapsed_seconds", round_sig(elapsed)},
                 {"result", outcome.result}};
  if (o.format == "json") {
    out << report.dump(2) << "\n";
  } else {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(outcome.result, "", rows);
    if (o.format == "csv") {
      out << "key,value\n";
      out << "verdict," << csv_field(outcome.headline) << "\n";
      for (const auto& [k, val] : rows) out << csv_field(k) << "," << csv_field(val) << "\n";
    } else {
      out << outcome.headline << "\n";
      for (const auto& [k, val] : rows) out << "  " << k << " = " << val << "\n";
    }
  }
  return outcome.code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace ffvc::cli
