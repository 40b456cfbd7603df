// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "figures.hpp"
#include "specpoint/builtins.hpp"
#include "specpoint/dini.hpp"
#include "specpoint/errors.hpp"
#include "specpoint/estimators.hpp"
#include "specpoint/homog2d.hpp"
#include "specpoint/operator_expr.hpp"
#include "specpoint/shift_model.hpp"

namespace specpoint::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kExprHelp =
    "Operator expression syntax:\n"
    "  expr   := term { '+' term }\n"
    "  term   := factor { ('o' | '\xE2\x88\x98') factor }   (g o f applies f first)\n"
    "  factor := 'scale(' number ',' expr ')' | '(' expr ')' | atom\n"
    "  atom   := identity | scalar(c) | isometry(k) | compact | finite_rank(r)\n"
    "          | local_compact | known(alpha, omega[, d, q]) | NAME\n"
    "  known() also accepts alpha=, omega=, d=, q=; values are numbers, inf, or [lo,hi].\n"
    "  Unrecognised names are opaque and contribute [0, inf].";

json ext(ExtendedReal x) {
  if (x.is_finite()) return x.value();
  return x.to_string();
}

json pair(PlanePoint z) { return json::array({z.a, z.b}); }

json interval(const RateInterval& r) { return json::array({ext(r.lo), ext(r.hi)}); }

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size() || !std::isfinite(v)) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw UsageError(std::string("bad number '") + item + "' in " + what);
    }
  }
  return out;
}

PlanePoint parse_pair(const std::string& text, const char* what) {
  const auto v = parse_list(text, what);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() != 2) throw UsageError(std::string(what) + " expects a or a,b");
  return {v[0], v[1]};
}

std::string sibling(const std::string& out, const char* extension) {
  if (out.empty()) return {};
  std::filesystem::path p(out);
  p.replace_extension(extension);
  return p.string();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << content;
  if (!f) throw UsageError("failed writing " + path);
}

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string fn;
  std::string params;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Seed for the low-discrepancy and restart sequences");
  cmd->add_option("--out", c.out, "Write JSON here instead of stdout; figures default next to it");
}

void add_map(CLI::App* cmd, Common& c, bool required) {
  auto* opt = cmd->add_option("--fn", c.fn, "Builtin map name");
  if (required) opt->required();
  cmd->add_option("--params", c.params, "Comma-separated builtin parameters");
}

MapSpec map_of(const Common& c) {
  const auto params = parse_list(c.params, "--params");
  return builtin(c.fn, params);
}

json map_json(const Common& c) {
  json j;
  j["name"] = c.fn;
  j["params"] = parse_list(c.params, "--params");
  return j;
}

// spec1d ---------------------------------------------------------------------

struct Spec1dArgs {
  Common common;
  double point = 0.0;
  bool exact = false;
  bool numeric = false;
  dini::EstimateOptions est;
  bool no_hint = false;
};

json quad_json(const DiniQuad& q) {
  json j;
  j["d_minus_low"] = ext(q.d_minus_low);
  j["d_minus_high"] = ext(q.d_minus_high);
  j["d_plus_low"] = ext(q.d_plus_low);
  j["d_plus_high"] = ext(q.d_plus_high);
  return j;
}

json run_spec1d(const Spec1dArgs& a, int& code) {
  (void)code;
  const MapSpec f = map_of(a.common);
  if (f.dim() != 1) throw PreconditionError("spec1d needs a one-dimensional map");
  json j;
  j["command"] = "spec1d";
  j["map"] = map_json(a.common);
  j["point"] = a.point;
  DiniQuad q;
  bool numeric = a.numeric || (!a.exact && !f.definition().exact_dini);
  if (!numeric) {
    q = dini::exact(f, a.point);
    j["mode"] = "exact";
  } else {
    auto opts = a.est;
    opts.use_oscillation_hint = !a.no_hint;
    const auto e = dini::estimate(f, a.point, opts);
    q = e.quad;
    j["mode"] = "numeric";
    j["h0"] = opts.h0;
    j["ratio"] = opts.ratio;
    j["steps"] = opts.steps;
    j["divergence_threshold"] = opts.divergence_threshold;
    j["divergent"] = e.divergent;
  }
  j["dini"] = quad_json(q);
  j["sigma"] = dini::sigma_1d(q).to_string();
  j["Sigma"] = dini::Sigma_1d(q).to_string();
  return j;
}

// spec2d ---------------------------------------------------------------------

struct Spec2dArgs {
  Common common;
  std::size_t samples = 4096;
  double chord = 1e-3;
  std::string csv;
};

json run_spec2d(const Spec2dArgs& a, int& code) {
  (void)code;
  const MapSpec f = map_of(a.common);
  homog2d::CurveOptions opts;
  opts.samples = a.samples;
  opts.chord_bound = a.chord;
  const auto curve = homog2d::sigma_curve(f, opts);
  const auto rates = homog2d::d_and_quasinorm(f, opts);
  json j;
  j["command"] = "spec2d";
  j["map"] = map_json(a.common);
  json c;
  c["samples"] = curve.samples.size();
  c["closed"] = curve.closed;
  c["degenerate"] = curve.is_degenerate();
  c["diameter"] = curve.diameter();
  c["max_chord"] = curve.max_chord();
  c["chord_bound"] = curve.chord_bound;
  c["capped"] = curve.capped;
  if (curve.is_degenerate()) {
    c["points"] = json::array({pair(curve.samples.front().lambda)});
  } else {
    json pts = json::array();
    for (const auto& s : curve.samples) pts.push_back(pair(s.lambda));
    c["points"] = std::move(pts);
  }
  j["curve"] = std::move(c);
  j["d"] = rates.d;
  j["q"] = rates.q;
  j["radius_bound"] = homog2d::spectral_radius_bound(f);
  const std::string csv = a.csv.empty() ? sibling(a.common.out, ".csv") : a.csv;
  if (!csv.empty()) {
    std::ostringstream os;
    os.precision(17);
    os << "theta,a,b\n";
    for (const auto& s : curve.samples) os << s.theta << ',' << s.lambda.a << ',' << s.lambda.b << '\n';
    write_file(csv, os.str());
    j["csv"] = csv;
  }
  return j;
}

// classify -------------------------------------------------------------------

struct ClassifyArgs {
  Common common;
  homog2d::Bounds bounds;
  std::size_t res = 200;
  double band = 0.0;
  std::string svg;
};

json run_classify(const ClassifyArgs& a, int& code) {
  const MapSpec f = map_of(a.common);
  std::optional<double> band;
  if (a.band > 0.0) band = a.band;
  const auto s = homog2d::classify_plane(f, a.bounds, a.res, band);
  json j;
  j["command"] = "classify";
  j["map"] = map_json(a.common);
  j["bounds"] = {a.bounds.xmin, a.bounds.xmax, a.bounds.ymin, a.bounds.ymax};
  j["resolution"] = a.res;
  j["band_radius"] = s.band_radius;
  const auto in = s.count(homog2d::Label::InSpectrum);
  j["counts"] = {{"InSpectrum", in},
                 {"Regular", s.count(homog2d::Label::Regular)},
                 {"Band", s.count(homog2d::Label::Band)}};
  j["in_spectrum_area"] = static_cast<double>(in) * s.cell_area();
  const auto filled = s.filled_labels();
  j["sigma_area_estimate"] =
      static_cast<double>(std::count(filled.begin(), filled.end(), homog2d::Label::InSpectrum)) *
      s.cell_area();
  j["components"] = s.components;
  j["inconsistent_components"] = s.inconsistent_components;
  j["band_violations"] = s.band_violations;
  j["assumption"] = "winding != 0 => Regular (sound); winding == 0 => InSpectrum (heuristic)";
  const std::string svg = a.svg.empty() ? sibling(a.common.out, ".svg") : a.svg;
  if (!svg.empty()) {
    write_file(svg, plane_spectrum_svg(s, "spectrum of " + a.common.fn));
    j["svg"] = svg;
  }
  if (s.band_violations > 0 || s.inconsistent_components > 0) code = kUndecided;
  return j;
}

// shift ----------------------------------------------------------------------

struct ShiftArgs {
  Common common;
  int truncate = 60;
  std::string lambda = "1.4142135623730951,0";
  double xi_eps = 0.1;
  std::string svg;
};

json run_shift(const ShiftArgs& a, int& code) {
  (void)code;
  const auto r = structured::shift_model_report();
  const PlanePoint lambda = parse_pair(a.lambda, "--lambda");
  json j;
  j["command"] = "shift";
  json rep;
  rep["d"] = r.d;
  rep["q"] = r.q;
  rep["alpha"] = r.alpha;
  rep["omega"] = r.omega;
  rep["Sigma"] = {{"kind", "circle"}, {"radius", r.Sigma_radius}};
  rep["sigma_omega"] = {{"kind", "circle"}, {"radius", r.sigma_omega_radius}};
  rep["sigma"] = {{"kind", "closed disk"}, {"radius", r.sigma_radius}};
  rep["spectral_radius_bound"] = r.spectral_radius_bound;
  rep["mnc"] = {{"alpha", interval(r.mnc.alpha)}, {"omega", interval(r.mnc.omega)}};
  j["analytic"] = std::move(rep);

  json at;
  at["lambda"] = pair(lambda);
  const auto idx = structured::shift_index(lambda);
  at["index"] = idx ? json(*idx) : json(nullptr);
  if (lambda.abs() > 1.0) {
    at["v_norm_sq"] = structured::v_norm_sq(lambda);
    const auto xi = structured::xi_equation_solvable(lambda, a.xi_eps);
    at["xi_equation"] = {{"eps", a.xi_eps},
                         {"c", xi.c},
                         {"solvable", xi.solvable},
                         {"witness", xi.witness ? json(*xi.witness) : json(nullptr)}};
  }
  const auto t = structured::truncated_shift_min(lambda, a.truncate);
  at["truncation"] = {{"N", a.truncate},
                      {"min_residual", t.value},
                      {"reliable", t.reliable},
                      {"seed_residual", t.seed_residual ? json(*t.seed_residual) : json(nullptr)}};
  j["at_lambda"] = std::move(at);
  const std::string svg = a.svg.empty() ? sibling(a.common.out, ".svg") : a.svg;
  if (!svg.empty()) {
    write_file(svg, shift_model_svg(r));
    j["svg"] = svg;
  }
  return j;
}

// mnc ------------------------------------------------------------------------

struct MncArgs {
  Common common;
  std::string expr;
};

json run_mnc(const MncArgs& a, int& code) {
  (void)code;
  const auto e = parse_operator_expr(a.expr);
  const auto b = mnc_bounds(*e);
  json j;
  j["command"] = "mnc";
  j["expr"] = to_string(*e);
  j["alpha"] = interval(b.alpha);
  j["omega"] = interval(b.omega);
  j["d"] = interval(b.d);
  j["q"] = interval(b.q);
  j["derivation"] = b.derivation;
  return j;
}

// bifurcate ------------------------------------------------------------------

struct BifurcateArgs {
  Common common;
  bool shift = false;
  int truncate = 40;
  std::string perturbation = "none";
  std::string grid = "-1.5,1.5,-1.5,1.5,30,24";
  std::string radii = "1e-2,1e-3,1e-4";
  double tol = 1e-2;
  std::size_t samples = 1024;
};

json run_bifurcate(const BifurcateArgs& a, int& code) {
  (void)code;
  const auto g = parse_list(a.grid, "--grid");
  if (g.size() != 6 || g[4] < 1 || g[5] < 1 || g[4] != std::floor(g[4]) || g[5] != std::floor(g[5])) {
    throw UsageError("--grid expects xmin,xmax,ymin,ymax,nx,ny");
  }
  const auto grid = estimators::lattice(g[0], g[1], g[2], g[3], static_cast<std::size_t>(g[4]),
                                        static_cast<std::size_t>(g[5]));
  const auto radii = parse_list(a.radii, "--radii");
  json j;
  j["command"] = "bifurcate";
  j["grid"] = g;
  j["radii"] = radii;
  j["tol"] = a.tol;
  json cands = json::array();
  json pts = json::array();
  if (a.shift) {
    structured::ComplexMap h;
    if (a.perturbation == "none") {
      h = [](const structured::ComplexVector& z) {
        return structured::ComplexVector(structured::ComplexVector::Zero(z.size()));
      };
    } else if (a.perturbation == "norm_sq_e1") {
      h = [](const structured::ComplexVector& z) {
        structured::ComplexVector o = structured::ComplexVector::Zero(z.size());
        o(0) = z.squaredNorm();
        return o;
      };
    } else {
      throw UsageError("--perturbation must be none or norm_sq_e1");
    }
    structured::ShiftScanOptions opts;
    opts.radii = radii;
    opts.tol = a.tol;
    const auto res = structured::shift_bifurcation_scan(h, a.truncate, grid, opts);
    j["model"] = {{"kind", "shift"}, {"N", a.truncate}, {"perturbation", a.perturbation}};
    for (const auto& p : res.points) {
      json e = {{"lambda", pair(p.lambda)},
                {"verdict", estimators::to_string(p.verdict)},
                {"residuals", p.residuals},
                {"absolute_residuals", p.absolute_residuals}};
      if (p.verdict == estimators::ScanVerdict::Candidate) cands.push_back(e);
      pts.push_back(std::move(e));
    }
    j["undecided"] = res.undecided;
  } else {
    if (a.common.fn.empty()) throw UsageError("bifurcate needs --fn NAME or --shift");
    const MapSpec f = map_of(a.common);
    estimators::ScanOptions opts;
    opts.radii = radii;
    opts.tol = a.tol;
    opts.samples = a.samples;
    opts.seed = a.common.seed;
    const auto res = estimators::bifurcation_scan(f, grid, opts);
    j["model"] = {{"kind", "map"}, {"map", map_json(a.common)}};
    for (const auto& p : res.points) {
      json e = {{"lambda", pair(p.lambda)},
                {"verdict", estimators::to_string(p.verdict)},
                {"residuals", p.residuals}};
      if (p.sigma) e["Sigma"] = estimators::to_string(*p.sigma);
      if (p.verdict == estimators::ScanVerdict::Candidate) cands.push_back(e);
      pts.push_back(std::move(e));
    }
    j["undecided"] = res.undecided;
    j["candidates_in_Sigma"] = res.candidates_in_Sigma;
  }
  j["candidate_count"] = cands.size();
  j["candidates"] = std::move(cands);
  j["points"] = std::move(pts);
  return j;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return kUsage;
  if (dynamic_cast<const PreconditionError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const UnsupportedError*>(&e)) {
    return kPrecondition;
  }
  return kNumeric;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical spectra of nonlinear maps at a point", "specpoint"};
  app.set_config("--config", "", "Plain-text key = value file; flags override it");
  app.require_subcommand(1);
  app.footer(kExprHelp);

  Spec1dArgs s1;
  auto* spec1d = app.add_subcommand("spec1d", "Dini derivatives, sigma and Sigma of a real function");
  add_common(spec1d, s1.common);
  add_map(spec1d, s1.common, true);
  spec1d->add_option("--point", s1.point, "Base point p");
  auto* ex = spec1d->add_flag("--exact", s1.exact, "Use the exact Dini provider");
  spec1d->add_flag("--numeric", s1.numeric, "Estimate on a geometric grid")->excludes(ex);
  spec1d->add_option("--h0", s1.est.h0, "First step")->check(CLI::PositiveNumber);
  spec1d->add_option("--ratio", s1.est.ratio, "Grid ratio in (0,1)")->check(CLI::Range(0.0, 1.0));
  spec1d->add_option("--steps", s1.est.steps, "Grid length (>= 8)")->check(CLI::Range(8, 100000));
  spec1d->add_option("--threshold", s1.est.divergence_threshold, "Divergence threshold")
      ->check(CLI::PositiveNumber);
  spec1d->add_flag("--no-hint", s1.no_hint, "Ignore oscillation hints");

  Spec2dArgs s2;
  auto* spec2d = app.add_subcommand("spec2d", "Sigma curve, d and quasinorm of a homogeneous planar map");
  add_common(spec2d, s2.common);
  add_map(spec2d, s2.common, true);
  spec2d->add_option("--samples", s2.samples, "Initial curve samples")->check(CLI::Range(3, 1 << 20));
  spec2d->add_option("--chord", s2.chord, "Chord bound for refinement")->check(CLI::PositiveNumber);
  spec2d->add_option("--csv", s2.csv, "CSV dump of curve samples");

  ClassifyArgs cl;
  auto* classify = app.add_subcommand("classify", "Label a lattice of lambda as InSpectrum/Regular/Band");
  add_common(classify, cl.common);
  add_map(classify, cl.common, true);
  classify->add_option("--xmin", cl.bounds.xmin);
  classify->add_option("--xmax", cl.bounds.xmax);
  classify->add_option("--ymin", cl.bounds.ymin);
  classify->add_option("--ymax", cl.bounds.ymax);
  classify->add_option("--res", cl.res, "Cells per axis")->check(CLI::Range(1, 20000));
  classify->add_option("--band", cl.band, "Band radius (default: two cell diagonals)");
  classify->add_option("--svg", cl.svg, "SVG figure path");

  ShiftArgs sh;
  auto* shift = app.add_subcommand("shift", "Analytic report and truncation check for the l2 shift model");
  add_common(shift, sh.common);
  shift->add_option("--truncate", sh.truncate, "Truncation dimension N")->check(CLI::Range(4, 4096));
  shift->add_option("--lambda", sh.lambda, "Spectral parameter a,b");
  shift->add_option("--xi-eps", sh.xi_eps, "Right-hand side of the xi equation")->check(CLI::PositiveNumber);
  shift->add_option("--svg", sh.svg, "SVG figure path");

  MncArgs mn;
  auto* mnc = app.add_subcommand("mnc", "Rate bounds of an operator expression");
  add_common(mnc, mn.common);
  mnc->add_option("--expr", mn.expr, "Operator expression")->required();

  BifurcateArgs bf;
  auto* bif = app.add_subcommand("bifurcate", "Scan a lambda lattice for bifurcation candidates");
  add_common(bif, bf.common);
  add_map(bif, bf.common, false);
  bif->add_flag("--shift", bf.shift, "Scan the truncated shift model instead of a builtin");
  bif->add_option("--truncate", bf.truncate, "Truncation dimension for --shift")->check(CLI::Range(4, 4096));
  bif->add_option("--perturbation", bf.perturbation, "none or norm_sq_e1 (for --shift)");
  bif->add_option("--grid", bf.grid, "xmin,xmax,ymin,ymax,nx,ny");
  bif->add_option("--radii", bf.radii, "Comma-separated radii, largest first");
  bif->add_option("--tol", bf.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  bif->add_option("--samples", bf.samples, "Sphere samples per radius")->check(CLI::Range(4, 1 << 20));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  int code = kOk;
  json result;
  const Common* common = nullptr;
  try {
    if (spec1d->parsed()) {
      result = run_spec1d(s1, code);
      common = &s1.common;
    } else if (spec2d->parsed()) {
      result = run_spec2d(s2, code);
      common = &s2.common;
    } else if (classify->parsed()) {
      result = run_classify(cl, code);
      common = &cl.common;
    } else if (shift->parsed()) {
      result = run_shift(sh, code);
      common = &sh.common;
    } else if (mnc->parsed()) {
      result = run_mnc(mn, code);
      common = &mn.common;
    } else {
      result = run_bifurcate(bf, code);
      common = &bf.common;
    }
    result["seed"] = common->seed;
    const std::string text = result.dump(2) + "\n";
    if (common->out.empty()) {
      out << text;
    } else {
      write_file(common->out, text);
    }
  } catch (const SolverError& e) {
    err << "error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return kNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return code;
}

}  // namespace specpoint::cli
