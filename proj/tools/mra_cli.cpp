// Command-line runner for the transform checks and experiments. Every report
// carries the resolved configuration and the library version.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "mra/calderon_zygmund.hpp"
#include "mra/dyadic.hpp"
#include "mra/error.hpp"
#include "mra/littlewood_paley.hpp"
#include "mra/random.hpp"
#include "mra/report.hpp"
#include "mra/smoothness.hpp"
#include "mra/verification.hpp"
#include "mra/widths.hpp"

using namespace mra;
using nlohmann::json;

namespace {

constexpr const char* kOutputDirEnv = "MRA_OUTPUT_DIR";

struct Common {
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 1;
  std::string exec = "parallel";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", c.output, std::string("Report file; defaults to $") + kOutputDirEnv +
                                            "/<command>.<format> when that is set, else stdout");
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--exec", c.exec, "Kernel policy")->check(CLI::IsMember({"serial", "parallel"}));
}

Exec exec_of(const Common& c) { return c.exec == "serial" ? Exec::serial : Exec::parallel; }

// One entry per axis, or a single entry broadcast to all axes.
DegreeVector degree_for(int d, const std::vector<int>& l) {
  if (l.size() == 1) return DegreeVector::filled(d, l[0]);
  if (static_cast<int>(l.size()) != d) throw InvalidArgument("--l needs one entry or one per axis");
  return DegreeVector(l);
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int r = std::stoi(s);
      return {r, r};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw InvalidArgument("range must look like 4..10");
  }
}

std::string join(const std::vector<std::int64_t>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

json theta_json(double theta) { return std::isinf(theta) ? json("inf") : json(theta); }

// ---- verify-projectors

struct VerifyOpts {
  int d = 1;
  std::vector<int> l{0};
  int K = 5;
  int trials = 4;
};

Report run_verify(const VerifyOpts& o, const Common& c, int& status) {
  ProjectorCheckConfig cfg;
  cfg.degree = degree_for(o.d, o.l);
  cfg.level = o.K;
  cfg.trials = o.trials;
  cfg.seed = c.seed;
  Report rep("verify-projectors",
             {{"d", o.d}, {"l", cfg.degree.values()}, {"K", o.K}, {"trials", o.trials}, {"seed", c.seed}});
  rep.set_columns({"check", "value", "tolerance", "cases", "status"});
  bool all = true;
  for (const auto& r : verify_projectors(cfg, exec_of(c))) {
    rep.add_row({r.name, r.value, r.tolerance, std::int64_t{r.cases}, std::string(r.pass() ? "pass" : "fail")});
    all = all && r.pass();
  }
  rep.summary("all_pass", std::int64_t{all});
  status = all ? 0 : 1;
  return rep;
}

// ---- lp-sweep

struct LpOpts {
  int d = 1;
  std::vector<int> l{1};
  std::vector<int> K{3, 6};
  std::vector<double> p{1.5, 3.0, 4.0};
  int trials = 200;
  int sign_draws = 50;
  std::vector<std::string> families{"coefficients", "multiscale", "sparse", "steps"};
};

Report run_lp(const LpOpts& o, const Common& c) {
  const auto l = degree_for(o.d, o.l);
  Report rep("lp-sweep", {{"d", o.d},
                          {"l", l.values()},
                          {"K", o.K},
                          {"p", o.p},
                          {"trials", o.trials},
                          {"sign_draws", o.sign_draws},
                          {"families", o.families},
                          {"seed", c.seed}});
  for (double p : o.p)
    if (p <= 1.0)
      rep.warn("hypothesis.p", "square-function and sign-series bounds need p > 1; only the p* ratio is reported at p=" +
                                   format_cell(p));
  rep.set_columns({"p", "K", "square_min", "square_max", "pstar_min", "pstar_max", "sign_min", "sign_max", "count"});
  std::map<std::pair<double, int>, LPReport> by;
  for (int K : o.K) {
    LPSweepConfig cfg;
    cfg.dim = o.d;
    cfg.degree = l;
    cfg.level = K;
    cfg.p_values = o.p;
    cfg.trials = o.trials;
    cfg.sign_draws = o.sign_draws;
    cfg.seed = c.seed;
    cfg.families.clear();
    for (const auto& f : o.families) cfg.families.push_back(function_family_from_string(f));
    for (const auto& r : summarize(lp_sweep(cfg))) {
      rep.add_row({r.p, std::int64_t{r.level}, r.square_ratio.min, r.square_ratio.max, r.pstar_ratio.min,
                   r.pstar_ratio.max, r.sign_min.min, r.sign_max.max, std::int64_t{r.square_ratio.count}});
      by[{r.p, r.level}] = r;
    }
  }
  // growth of each band from the coarsest to the finest level
  if (o.K.size() >= 2) {
    const int lo = *std::min_element(o.K.begin(), o.K.end()), hi = *std::max_element(o.K.begin(), o.K.end());
    for (double p : o.p) {
      const auto& a = by.at({p, lo});
      const auto& b = by.at({p, hi});
      const auto growth = [](const Stats& x, const Stats& y) { return std::max(y.max / x.max, x.min / y.min); };
      const std::string tag = "p=" + format_cell(p);
      if (p > 1.0) {
        rep.summary("square_growth." + tag, growth(a.square_ratio, b.square_ratio));
        rep.summary("sign_growth." + tag, std::max(b.sign_max.max / a.sign_max.max, a.sign_min.min / b.sign_min.min));
      }
      // the p* bound is one-sided, its constant is the largest ratio
      rep.summary("pstar_growth." + tag, b.pstar_ratio.max / a.pstar_ratio.max);
    }
  }
  return rep;
}

// ---- czd

struct CzOpts {
  int d = 1;
  std::string demo = "bump";
  double alpha = 0.5;
  int K = 6;
  int l = 0;
};

Report run_czd(const CzOpts& o, const Common& c) {
  Report rep("czd", {{"d", o.d}, {"demo", o.demo}, {"alpha", o.alpha}, {"K", o.K}, {"l", o.l}, {"seed", c.seed}});
  if (o.d < 1 || o.d > 2) throw InvalidArgument("czd supports d = 1 or 2");
  if (!(o.alpha > 0)) throw InvalidArgument("--alpha must be positive");
  const DegreeVector l = DegreeVector::filled(o.d, o.l);
  const auto g = Grid::for_degree(o.d, o.K, l);
  Rng rng = trial_rng(c.seed, 0);
  GridFunction f;
  if (o.demo == "bump")
    f = GridFunction::sample(g, [](auto) { return 1.0; });
  else if (o.demo == "steps")
    f = random_steps(g, MultiIndex::filled(o.d, o.K), rng);
  else
    f = random_sparse(g, MultiIndex::filled(o.d, o.K), l, 4, rng);
  const auto res = cz_split(f, o.alpha);
  const auto& w = res.whitney;
  if (res.padding_truncated)
    rep.warn("cz.padding_truncated", "exterior padding was capped; parts of {M f > alpha} outside it are not covered");
  if (w.base_clamped) rep.warn("cz.base_clamped", "a level-0 cube already qualified; coarser levels are not formed");
  rep.set_columns({"index", "level", "position", "diameter", "distance", "average"});
  for (std::size_t i = 0; i < w.cubes.size(); ++i) {
    const auto& q = w.cubes[i];
    double avg = std::nan("");
    for (const auto& b : res.split.bad)
      if (b.cube == q.cube) avg = b.average;
    rep.add_row({static_cast<std::int64_t>(i), std::int64_t{q.cube.level[0]}, join(q.cube.position),
                 cube_diameter(q, o.d), cube_distance(q, o.K), avg});
  }
  double max_integral = 0;
  for (const auto& b : res.split.bad) max_integral = std::max(max_integral, std::abs(b.integral(g)));
  const auto back = res.split.reassemble();
  double reassembly = 0;
  for (std::size_t i = 0; i < f.size(); ++i) reassembly = std::max(reassembly, std::abs(back[i] - f[i]));
  rep.summary("k0", std::int64_t{w.base_level});
  rep.summary("cubes", static_cast<std::int64_t>(w.cubes.size()));
  rep.summary("open_set_measure", res.closed_set.complement().measure());
  rep.summary("residual_measure", w.residual_measure);
  rep.summary("boundary_cells", std::int64_t{w.boundary_cells});
  rep.summary("bad_integral_max", max_integral);
  rep.summary("reassembly_error", reassembly);
  return rep;
}

// ---- smoothness

struct SmoothOpts {
  std::vector<double> alpha{1.0};
  double p = 2.0;
  double q = 0;  // 0: same as p
  double theta = kInfinity;
  int K = 5;
  int box = -1;  // -1: K
  std::string function = "extremal";
};

Report run_smoothness(const SmoothOpts& o, const Common& c) {
  SmoothnessParams s{o.alpha, o.p, o.theta};
  s.validate();
  const double q = o.q > 0 ? o.q : o.p;
  const int d = s.dim();
  const int box = o.box < 0 ? o.K : o.box;
  Report rep("smoothness", {{"alpha", o.alpha},
                            {"p", o.p},
                            {"q", q},
                            {"theta", theta_json(o.theta)},
                            {"K", o.K},
                            {"box", box},
                            {"function", o.function},
                            {"seed", c.seed}});
  const Exec ex = exec_of(c);
  const auto l = s.projection_degree();
  const auto g = Grid::for_degree(d, o.K, l);
  GridFunction f;
  if (o.function == "extremal") {
    f = synthesize_extremal(s, g, MultiIndex::filled(d, std::min(box, o.K)), c.seed, ex).f;
  } else if (o.function == "sine") {
    f = GridFunction::sample(g, [](auto x) {
      double v = 1;
      for (double t : x) v *= std::sin(std::numbers::pi * t);
      return v;
    });
  } else {
    Rng rng = trial_rng(c.seed, 0);
    f = random_steps(g, MultiIndex::filled(d, std::min(3, o.K)), rng);
  }
  const double factor = normalize(f, s, ex);
  if (!decay_condition(s, q))
    rep.warn("hypothesis.decay", "alpha - (1/p - 1/q)_+ is not positive; the decay model is not a bound here");
  const auto semi = besov_seminorm(f, s, ex);
  rep.summary("seminorm_before_normalization", factor > 0 ? 1.0 / factor : 0.0);
  rep.summary("seminorm_after_normalization", semi.value);
  rep.set_columns({"kappa", "norm", "model", "ratio"});
  double worst = 0;
  for (const auto& row : decay_check(f, s, q, MultiIndex::filled(d, box), ex)) {
    rep.add_row({row.kappa.str(), row.norm, row.model, row.ratio()});
    worst = std::max(worst, row.ratio());
  }
  rep.summary("decay_ratio_max", worst);
  return rep;
}

// ---- widths

struct WidthOpts {
  int d = 2;
  std::vector<double> alpha{1.0, 1.0};
  double p = 2.0;
  double q = 2.0;
  double theta = 2.0;
  std::string r = "4..10";
  int K = 6;
  int trials = 1;
};

Report run_widths(const WidthOpts& o, const Common& c) {
  const auto [r_min, r_max] = parse_range(o.r);
  Report rep("widths", {{"d", o.d},
                        {"alpha", o.alpha},
                        {"p", o.p},
                        {"q", o.q},
                        {"theta", theta_json(o.theta)},
                        {"r", {r_min, r_max}},
                        {"K", o.K},
                        {"trials", o.trials},
                        {"seed", c.seed}});
  if (static_cast<int>(o.alpha.size()) != o.d) throw InvalidArgument("--alpha needs one entry per axis");
  if (r_min < 1 || r_max < r_min) throw InvalidArgument("--r needs 1 <= r_min <= r_max");
  SmoothnessParams s{o.alpha, o.p, o.theta};
  s.validate();
  const bool decay = decay_condition(s, o.q);
  if (!decay) rep.warn("hypothesis.decay", "alpha - (1/p - 1/q)_+ is not positive");
  WidthCase which;
  try {
    which = width_case(s, o.q);
  } catch (const InvalidArgument& e) {
    rep.warn("hypothesis.width_case", e.what());
    rep.set_columns({"config_hash", "r", "n", "error", "model", "ratio"});
    return rep;
  }
  const auto e = width_exponent(s, o.q);
  rep.summary("exponent.rate", e.rate);
  rep.summary("exponent.log_power", e.log_power);
  const auto beta = choose_beta(s, o.q);
  std::string beta_s;
  for (std::size_t j = 0; j < beta.size(); ++j) beta_s += (j ? " " : "") + format_cell(beta[j]);
  rep.summary("beta", beta_s);

  if (which == WidthCase::budgeted) {
    rep.warn("scope.budgeted_case",
             "q >= max(2, p): the subspaces of this case are not realized; reporting the dimension budget only");
    rep.set_columns({"config_hash", "r", "j0", "gamma", "gamma_prime", "epsilon", "cross_dim", "budget", "total",
                     "audit_ratio"});
    for (int r = r_min; r <= r_max; ++r) {
      const auto plan = budget_plan(r, beta, s, o.q);
      rep.add_row({rep.config_hash(), std::int64_t{r}, std::int64_t{plan.j0}, plan.gamma, plan.gamma_prime,
                   plan.epsilon, static_cast<std::int64_t>(plan.cross_dim), static_cast<std::int64_t>(plan.budget),
                   static_cast<std::int64_t>(plan.total()), plan.audit_ratio});
    }
    return rep;
  }

  WidthExperimentConfig cfg;
  cfg.params = s;
  cfg.q = o.q;
  cfg.level = o.K;
  cfg.r_min = r_min;
  cfg.r_max = r_max;
  cfg.trials = o.trials;
  cfg.seed = c.seed;
  const auto res = run_width_experiment(cfg, exec_of(c));
  if (!res.analytic_tail)
    rep.warn("resolution.tail", "levels beyond K are not included in the error (closed form only for p = q = 2)");
  rep.set_columns({"config_hash", "r", "n", "error", "model", "ratio"});
  for (const auto& row : res.rows)
    rep.add_row({rep.config_hash(), std::int64_t{row.r}, static_cast<std::int64_t>(row.n), row.error, row.model,
                 row.ratio()});
  rep.summary("fit.slope", res.fit.slope);
  rep.summary("fit.log_coefficient", res.fit.log_coefficient);
  rep.summary("fit.intercept", res.fit.intercept);
  rep.summary("fit.rms_residual", res.fit.rms_residual);
  return rep;
}

// ---- cross-count

struct CrossOpts {
  std::vector<double> beta{1.0, 1.0};
  std::vector<double> alpha;  // empty: all ones
  std::vector<int> l{0};
  int r_min = 1;
  int r_max = 14;
};

Report run_cross(const CrossOpts& o, const Common&) {
  const int d = static_cast<int>(o.beta.size());
  const auto alpha = o.alpha.empty() ? std::vector<double>(o.beta.size(), 1.0) : o.alpha;
  if (alpha.size() != o.beta.size()) throw InvalidArgument("--alpha and --beta differ in length");
  const auto l = degree_for(d, o.l);
  Report rep("cross-count",
             {{"beta", o.beta}, {"alpha", alpha}, {"l", l.values()}, {"r_min", o.r_min}, {"r_max", o.r_max}});
  const auto counts = counting_ratios(o.beta, alpha, o.r_max);
  const auto dims = dimension_law(o.beta, l, o.r_min, o.r_max);
  rep.set_columns({"r", "head_sum", "head_ratio", "tail_sum", "tail_ratio", "dimension", "dimension_ratio"});
  double lo = kInfinity, hi = 0;
  for (const auto& dr : dims) {
    const auto& cr = counts[static_cast<std::size_t>(dr.r - 1)];
    rep.add_row({std::int64_t{dr.r}, cr.head_sum, cr.head_ratio(), cr.tail_sum, cr.tail_ratio(),
                 static_cast<std::int64_t>(dr.dimension), dr.ratio()});
    lo = std::min(lo, dr.ratio());
    hi = std::max(hi, dr.ratio());
  }
  rep.summary("dimension_band", hi / lo);
  return rep;
}

void emit(const Report& rep, const Common& c) {
  for (const auto& w : rep.warnings()) std::cerr << "warning[" << w.code << "]: " << w.message << "\n";
  std::string path = c.output;
  if (path.empty()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
      std::filesystem::create_directories(dir);
      path = (std::filesystem::path(dir) / (rep.command() + "." + c.format)).string();
    }
  }
  std::ofstream file;
  if (!path.empty()) {
    file.open(path);
    if (!file) throw InvalidArgument("cannot write " + path);
  }
  std::ostream& os = path.empty() ? std::cout : file;
  if (c.format == "json")
    rep.write_json(os);
  else
    rep.write_csv(os);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiresolution analysis checks and experiments (version " + library_version() + ")"};
  app.set_version_flag("--version", library_version());
  app.require_subcommand(1);
  Common common;

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify-projectors", "Parseval, projector algebra, telescoping, Haar oracle");
  verify->add_option("--d", vo.d, "Dimension")->check(CLI::Range(1, 3));
  verify->add_option("--l", vo.l, "Degree, one value or one per axis")->delimiter(',');
  verify->add_option("--K", vo.K, "Grid level")->check(CLI::Range(0, 10));
  verify->add_option("--trials", vo.trials, "Random inputs per check")->check(CLI::PositiveNumber);
  add_common(verify, common);

  LpOpts lo;
  auto* lp = app.add_subcommand("lp-sweep", "Square-function, sign-series and p* ratios across levels");
  lp->add_option("--d", lo.d, "Dimension")->check(CLI::Range(1, 3));
  lp->add_option("--l", lo.l, "Degree, one value or one per axis")->delimiter(',');
  lp->add_option("--K", lo.K, "Levels to compare")->delimiter(',');
  lp->add_option("--p", lo.p, "Exponents")->delimiter(',');
  lp->add_option("--trials", lo.trials, "Random functions per level")->check(CLI::PositiveNumber);
  lp->add_option("--sign-draws", lo.sign_draws, "Product-form sign draws per function")->check(CLI::PositiveNumber);
  lp->add_option("--families", lo.families, "Test function families")
      ->delimiter(',')
      ->check(CLI::IsMember({"coefficients", "multiscale", "sparse", "steps"}));
  add_common(lp, common);

  CzOpts co;
  auto* czd = app.add_subcommand("czd", "Calderon-Zygmund split and Whitney cube list");
  czd->add_option("--d", co.d, "Dimension (1 or 2)");
  czd->add_option("--demo", co.demo, "Input function")->check(CLI::IsMember({"bump", "steps", "random"}));
  czd->add_option("--alpha", co.alpha, "Height");
  czd->add_option("--K", co.K, "Grid level")->check(CLI::Range(1, 10));
  czd->add_option("--l", co.l, "Degree of the sampling grid")->check(CLI::Range(0, 4));
  add_common(czd, common);

  SmoothOpts so;
  auto* smooth = app.add_subcommand("smoothness", "Class seminorm and detail-block decay");
  smooth->add_option("--alpha", so.alpha, "Smoothness per axis")->delimiter(',')->required();
  smooth->add_option("--p", so.p, "Integrability of the class");
  smooth->add_option("--q", so.q, "Norm of the detail blocks (default p)");
  smooth->add_option("--theta", so.theta, "Fine index, inf for the Holder class");
  smooth->add_option("--K", so.K, "Grid level")->check(CLI::Range(1, 8));
  smooth->add_option("--box", so.box, "Largest level in the decay table (default K)");
  smooth->add_option("--function", so.function, "Input function")->check(CLI::IsMember({"extremal", "sine", "steps"}));
  add_common(smooth, common);

  WidthOpts wo;
  auto* widths = app.add_subcommand("widths", "Hyperbolic-cross truncation rate experiment");
  widths->add_option("--d", wo.d, "Dimension")->check(CLI::Range(1, 3));
  widths->add_option("--alpha", wo.alpha, "Smoothness per axis")->delimiter(',');
  widths->add_option("--p", wo.p, "Integrability of the class");
  widths->add_option("--q", wo.q, "Norm of the error");
  widths->add_option("--theta", wo.theta, "Fine index, inf for the Holder class");
  widths->add_option("--r", wo.r, "Cross radii, e.g. 4..10");
  widths->add_option("--K", wo.K, "Resolution of the extremal function")->check(CLI::Range(1, 12));
  widths->add_option("--trials", wo.trials, "Independent extremal draws")->check(CLI::PositiveNumber);
  add_common(widths, common);

  CrossOpts xo;
  auto* cross = app.add_subcommand("cross-count", "Counting sums and dimensions over hyperbolic crosses");
  cross->add_option("--beta", xo.beta, "Cross weights")->delimiter(',');
  cross->add_option("--alpha", xo.alpha, "Exponents of the counting sums (default ones)")->delimiter(',');
  cross->add_option("--l", xo.l, "Degree, one value or one per axis")->delimiter(',');
  cross->add_option("--r-min", xo.r_min, "Smallest radius")->check(CLI::PositiveNumber);
  cross->add_option("--r-max", xo.r_max, "Largest radius")->check(CLI::Range(1, 30));
  add_common(cross, common);

  CLI11_PARSE(app, argc, argv);

  try {
    set_default_exec(exec_of(common));
    int status = 0;
    std::optional<Report> rep;
    if (*verify) rep = run_verify(vo, common, status);
    if (*lp) rep = run_lp(lo, common);
    if (*czd) rep = run_czd(co, common);
    if (*smooth) rep = run_smoothness(so, common);
    if (*widths) rep = run_widths(wo, common);
    if (*cross) rep = run_cross(xo, common);
    emit(*rep, common);
    return status;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
