// Acceptance run: one PASS/FAIL line per criterion, then the comparison of the
// recorded empirical constants against tests/baselines. Exit status 0 only
// when everything passes.
//
//   mra_acceptance [--baselines FILE] [--update-baselines]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mra/calderon_zygmund.hpp"
#include "mra/dyadic.hpp"
#include "mra/littlewood_paley.hpp"
#include "mra/random.hpp"
#include "mra/report.hpp"
#include "mra/verification.hpp"
#include "mra/widths.hpp"

using namespace mra;

namespace {

// Thresholds.
constexpr double kIdentityTol = 1e-10;
constexpr double kParsevalSeconds = 60;
constexpr double kGrowthFactor = 1.25;
constexpr double kCzTol = 1e-12;
constexpr double kKhintchineTol = 1e-12;
constexpr double kDimensionBand = 4.0;
constexpr double kSlopeTol2d = 0.15;
constexpr double kSlopeTol1d = 0.1;
constexpr double kTotalSeconds = 300;
constexpr double kBaselineFactor = 1.1;

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;
BaselineStore observed;

void report(int n, bool pass, const std::string& text) {
  std::printf("criterion %2d: %s  %s\n", n, pass ? "PASS" : "FAIL", text.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double worst(const std::vector<CheckResult>& rs) {
  double w = 0;
  for (const auto& r : rs) w = std::max(w, r.value);
  return w;
}

// ---- 1

void parseval() {
  const auto t0 = Clock::now();
  double gap = 0;
  int cases = 0;
  for (int d : {1, 2})
    for (int l : {0, 1}) {
      ProjectorCheckConfig cfg;
      cfg.degree = DegreeVector::filled(d, l);
      cfg.level = 5;
      cfg.trials = 25;
      cfg.seed = 101;
      const auto r = check_parseval(cfg);
      gap = std::max(gap, r.value);
      cases += r.cases;
    }
  const double secs = seconds_since(t0);
  report(1, gap <= kIdentityTol && cases == 100 && secs <= kParsevalSeconds,
         "Parseval: max relative gap " + fmt("%.2e", gap) + " over " + std::to_string(cases) + " inputs in " +
             fmt("%.1f", secs) + " s");
}

// ---- 2, 3

void algebra_and_telescoping() {
  std::vector<CheckResult> alg, routes, tele;
  for (int l : {0, 1}) {
    ProjectorCheckConfig cfg;
    cfg.degree = DegreeVector::filled(2, l);
    cfg.level = 3;
    cfg.trials = 3;
    cfg.seed = 202;
    for (auto& r : check_projector_algebra(cfg)) alg.push_back(r);
    routes.push_back(check_detail_routes(cfg));
    tele.push_back(check_telescoping(cfg));
  }
  double a = 0;
  std::string parts;
  for (const auto& r : alg) a = std::max(a, r.value);
  for (std::size_t i = 0; i < 4; ++i) parts += (i ? ", " : "") + alg[i].name;
  const double t = worst(routes);
  report(2, a <= kIdentityTol && t <= kIdentityTol,
         "projector algebra (" + parts + ") max " + fmt("%.2e", a) + "; tensor routes max " + fmt("%.2e", t));
  const double s = worst(tele);
  report(3, s <= kIdentityTol, "telescoping to the level projection for k <= (3,3): max " + fmt("%.2e", s));
}

// ---- 4

void haar() {
  double w = 0;
  int cases = 0;
  for (int d : {1, 2}) {
    ProjectorCheckConfig cfg;
    cfg.degree = DegreeVector::zeros(d);
    cfg.level = d == 1 ? 6 : 4;
    cfg.trials = 25;
    cfg.seed = 404;
    const auto r = check_haar_oracle(cfg);
    w = std::max(w, r.value);
    cases += r.cases;
  }
  report(4, w <= kIdentityTol && cases == 50,
         "Haar oracle: max coefficient difference " + fmt("%.2e", w) + " over " + std::to_string(cases) + " inputs");
}

// ---- 5, 6

struct Band {
  double lo = kInfinity, hi = 0;
};

void littlewood_paley() {
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 4.0};
  double identity = 0, square_growth = 0, sign_growth = 0, pstar_growth = 0;
  for (int l : {0, 1}) {
    std::map<int, std::vector<LPReport>> by_level;
    for (int K : {3, 6}) {
      LPSweepConfig cfg;
      cfg.dim = 1;
      cfg.degree = DegreeVector{l};
      cfg.level = K;
      cfg.p_values = ps;
      cfg.trials = 200;
      cfg.sign_draws = 50;
      cfg.seed = 505;
      by_level[K] = summarize(lp_sweep(cfg));
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double p = ps[i];
      const auto& a = by_level[3][i];
      const auto& b = by_level[6][i];
      const std::string tag = "l" + std::to_string(l) + ".p" + format_cell(p);
      if (p == 2.0) {
        for (const auto& r : {a, b})
          identity = std::max({identity, std::abs(r.square_ratio.max - 1), std::abs(r.square_ratio.min - 1)});
      } else if (p > 1.0) {
        square_growth = std::max({square_growth, b.square_ratio.max / a.square_ratio.max,
                                  a.square_ratio.min / b.square_ratio.min});
        sign_growth = std::max({sign_growth, b.sign_max.max / a.sign_max.max, a.sign_min.min / b.sign_min.min});
        observed.set("lp.square_max." + tag, b.square_ratio.max);
        observed.set("lp.square_min." + tag, b.square_ratio.min);
        observed.set("lp.sign_max." + tag, b.sign_max.max);
        observed.set("lp.sign_min." + tag, b.sign_min.min);
      }
      if (p <= 3.0) {
        // one-sided bound: the constant is the largest ratio
        pstar_growth = std::max(pstar_growth, b.pstar_ratio.max / a.pstar_ratio.max);
        observed.set("pstar.max." + tag, b.pstar_ratio.max);
      }
    }
  }
  report(5, identity <= kIdentityTol && square_growth <= kGrowthFactor && sign_growth <= kGrowthFactor,
         "Littlewood-Paley: |ratio - 1| at p=2 " + fmt("%.2e", identity) + "; band growth K=3 -> 6 square " +
             fmt("x%.3f", square_growth) + ", signs " + fmt("x%.3f", sign_growth) + " (limit x1.25)");
  report(6, pstar_growth <= kGrowthFactor,
         "p* bound: growth of the empirical constant K=3 -> 6 over p in {1,1.5,2,3} " + fmt("x%.3f", pstar_growth) +
             " (limit x1.25)");
}

// ---- 7

GridFunction smooth_bump(const Grid& g, std::span<const double> c, double rho, double h) {
  return GridFunction::sample(g, [=](auto x) {
    double s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - c[j]) * (x[j] - c[j]);
    s /= rho * rho;
    return s < 1 ? h * std::exp(1 - 1 / (1 - s)) : 0.0;
  });
}

void calderon_zygmund() {
  Rng rng(707);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int functions = 0, cubes = 0;
  bool geometry = true;
  double integral_err = 0, reassembly_err = 0;
  for (int d : {1, 2}) {
    const int K = d == 1 ? 7 : 4;
    const DegreeVector l = DegreeVector::filled(d, 1);
    const auto g = Grid::for_degree(d, K, l);
    for (int t = 0; t < 10; ++t) {
      GridFunction f;
      if (t % 2 == 0) {
        std::vector<double> c(static_cast<std::size_t>(d));
        for (double& x : c) x = 0.2 + 0.6 * u(rng);
        f = smooth_bump(g, c, 0.1 + 0.3 * u(rng), 1 + 4 * u(rng));
      } else {
        f = random_steps(g, MultiIndex::filled(d, 1 + t / 2), rng);
      }
      ++functions;
      // stay above the weak-type level so the good set keeps cells in the box
      const double alpha = std::max((0.2 + 0.2 * (t % 3)) * sup_norm(f), 1.5 * std::pow(3.0, d) * lp_norm(f, 1.0));
      const auto res = cz_split(f, alpha);
      const auto& w = res.whitney;
      for (std::size_t a = 0; a < w.cubes.size(); ++a) {
        const double diam = cube_diameter(w.cubes[a], d), dist = cube_distance(w.cubes[a], K);
        geometry = geometry && diam < dist && dist <= (4 * diam + std::ldexp(1.0, -K)) * (1 + 1e-12);
        for (std::size_t b = 0; b < a; ++b) geometry = geometry && nesting(w.cubes[a].cube, w.cubes[b].cube) == Nesting::disjoint;
        ++cubes;
      }
      for (const auto& b : res.split.bad) integral_err = std::max(integral_err, std::abs(b.integral(g)));
      const auto back = res.split.reassemble();
      for (std::size_t i = 0; i < f.size(); ++i) reassembly_err = std::max(reassembly_err, std::abs(back[i] - f[i]));
    }
  }
  // the unit-interval demo
  const auto g = Grid::for_degree(1, 6, DegreeVector{0});
  const auto demo = cz_split(GridFunction::sample(g, [](auto) { return 1.0; }), 0.5);
  bool demo_ok = demo.whitney.base_level == 3 && demo.whitney.cubes.size() >= 4;
  for (int i = 0; demo_ok && i < 4; ++i) {
    const auto& q = demo.whitney.cubes[static_cast<std::size_t>(i)].cube;
    demo_ok = q.level == MultiIndex{3} && q.position[0] == 2 + i;
  }
  report(7, geometry && integral_err <= kCzTol && reassembly_err <= kCzTol && demo_ok && cubes > 0,
         "Calderon-Zygmund: " + std::to_string(functions) + " functions, " + std::to_string(cubes) +
             " Whitney cubes with diam < dist <= 4 diam + 2^-K" + (geometry ? "" : " VIOLATED") + "; max |int h| " +
             fmt("%.1e", integral_err) + ", reassembly " + fmt("%.1e", reassembly_err) + "; demo k0=3 and intervals " +
             (demo_ok ? "reproduced" : "NOT reproduced"));
}

// ---- 8

// L_p norm of the Rademacher sum at every level-(k+e) cell midpoint, with
// the signs taken from std::sin.
double khintchine_oracle(const std::vector<double>& a, const MultiIndex& k, double p) {
  const int d = k.dim();
  const auto levels = enum_box(k);
  std::vector<int> n(static_cast<std::size_t>(d));
  std::size_t cells = 1;
  for (int j = 0; j < d; ++j) {
    n[static_cast<std::size_t>(j)] = 1 << (k[static_cast<std::size_t>(j)] + 1);
    cells *= static_cast<std::size_t>(n[static_cast<std::size_t>(j)]);
  }
  double s = 0;
  std::vector<double> t(static_cast<std::size_t>(d));
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rest = c;
    for (int j = d - 1; j >= 0; --j) {
      const auto nj = static_cast<std::size_t>(n[static_cast<std::size_t>(j)]);
      t[static_cast<std::size_t>(j)] = (static_cast<double>(rest % nj) + 0.5) / static_cast<double>(nj);
      rest /= nj;
    }
    double v = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      double sign = 1;
      for (int j = 0; j < d; ++j)
        sign *= std::sin(std::ldexp(std::numbers::pi, levels[i][static_cast<std::size_t>(j)] + 1) *
                         t[static_cast<std::size_t>(j)]) > 0
                    ? 1.0
                    : -1.0;
      v += a[i] * sign;
    }
    s += std::pow(std::abs(v), p);
  }
  return std::pow(s / static_cast<double>(cells), 1.0 / p);
}

void khintchine() {
  Rng rng(808);
  std::normal_distribution<double> normal;
  const std::vector<MultiIndex> shapes{MultiIndex{6}, MultiIndex{3, 4}, MultiIndex{2, 1, 2}};
  double oracle_err = 0;
  bool bounded = true;
  std::map<double, Band> band;
  for (int v = 0; v < 100; ++v) {
    const auto& k = shapes[static_cast<std::size_t>(v % 3)];
    const int d = k.dim();
    std::size_t n = 1;
    for (int kj : k) n *= static_cast<std::size_t>(kj) + 1;
    std::vector<double> a(n);
    for (double& x : a) x = normal(rng);
    for (double p : {1.0, 2.0, 4.0}) {
      const auto r = khintchine_check(a, k, p);
      oracle_err = std::max(oracle_err, std::abs(r.lp - khintchine_oracle(a, k, p)) / r.l2);
      // per-axis Khintchine constants 2^{-1/2} (p=1) and 3^{1/4} (p=4)
      const double lo = p < 2 ? std::pow(2.0, -0.5 * d) : 1.0;
      const double hi = p > 2 ? std::pow(3.0, 0.25 * d) : 1.0;
      bounded = bounded && r.ratio() >= lo * (1 - 1e-12) && r.ratio() <= hi * (1 + 1e-12);
      band[p].lo = std::min(band[p].lo, r.ratio());
      band[p].hi = std::max(band[p].hi, r.ratio());
    }
  }
  observed.set("khintchine.min.p1", band[1.0].lo);
  observed.set("khintchine.max.p4", band[4.0].hi);
  report(8, oracle_err <= kKhintchineTol && bounded,
         "Khintchine: oracle difference " + fmt("%.1e", oracle_err) + "; ratios p=1 [" + fmt("%.3f", band[1.0].lo) +
             ", " + fmt("%.3f", band[1.0].hi) + "], p=4 [" + fmt("%.3f", band[4.0].lo) + ", " +
             fmt("%.3f", band[4.0].hi) + "] inside 2^{-d/2} <= . <= 3^{d/4}");
}

// ---- 9

void dimension() {
  double widest = 0;
  for (int d = 1; d <= 3; ++d)
    for (int l : {0, 1}) {
      Band b;
      for (const auto& row : dimension_law(std::vector<double>(static_cast<std::size_t>(d), 1.0),
                                           DegreeVector::filled(d, l), 4, 14)) {
        b.lo = std::min(b.lo, row.ratio());
        b.hi = std::max(b.hi, row.ratio());
      }
      widest = std::max(widest, b.hi / b.lo);
      observed.set("cross.band.d" + std::to_string(d) + ".l" + std::to_string(l), b.hi / b.lo);
    }
  report(9, widest <= kDimensionBand,
         "cross dimension / (2^r r^{c-1}) for r = 4..14, d = 1,2,3: widest max/min " + fmt("%.3f", widest) +
             " (limit 4)");
}

// ---- 10

void width_rate(Clock::time_point start) {
  WidthExperimentConfig two;
  two.params.alpha = {1, 1};
  two.params.p = 2;
  two.params.theta = 2;
  two.q = 2;
  two.level = 6;
  two.r_min = 4;
  two.r_max = 10;
  two.seed = 1010;
  const auto a = run_width_experiment(two);
  WidthExperimentConfig one = two;
  one.params.alpha = {1};
  one.level = 10;
  const auto b = run_width_experiment(one);
  double tail_hi = 0;
  for (const auto& row : b.rows) tail_hi = std::max(tail_hi, row.ratio());
  observed.set("widths.tail_ratio.d1", tail_hi);
  observed.set("widths.slope_gap.d2", std::abs(a.fit.slope + 1));
  const double secs = seconds_since(start);
  report(10,
         std::abs(a.fit.slope + 1) <= kSlopeTol2d && std::abs(b.fit.slope + 1) <= kSlopeTol1d &&
             secs <= kTotalSeconds,
         "width rate: fitted slope d=2 " + fmt("%.4f", a.fit.slope) + " (within 0.15 of -1), d=1 " +
             fmt("%.4f", b.fit.slope) + " (within 0.1); total run time " + fmt("%.1f", secs) + " s");
}

}  // namespace

int main(int argc, char** argv) {
  std::string baseline_path;
  bool update = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--baselines") && i + 1 < argc)
      baseline_path = argv[++i];
    else if (!std::strcmp(argv[i], "--update-baselines"))
      update = true;
    else {
      std::fprintf(stderr, "usage: %s [--baselines FILE] [--update-baselines]\n", argv[0]);
      return 2;
    }
  }
  const auto start = Clock::now();
  parseval();
  algebra_and_telescoping();
  haar();
  littlewood_paley();
  calderon_zygmund();
  khintchine();
  dimension();
  width_rate(start);

  if (!baseline_path.empty()) {
    if (update) {
      observed.save(baseline_path);
      std::printf("baselines: written %zu constants to %s\n", observed.values().size(), baseline_path.c_str());
    } else {
      const auto stored = BaselineStore::load(baseline_path);
      int checked = 0, bad = 0, unknown = 0;
      for (const auto& [name, value] : observed.values()) {
        // lower ends of two-sided bands regress downward, everything else upward
        const bool lower = name.find(".min.") != std::string::npos || name.find("_min.") != std::string::npos;
        const auto o = stored.check(name, value, lower ? BaselineStore::Bad::below : BaselineStore::Bad::above,
                                    kBaselineFactor);
        if (!o.known) {
          ++unknown;
          continue;
        }
        ++checked;
        if (!o.pass) {
          ++bad;
          std::printf("baseline regression: %s = %.6g against %.6g\n", name.c_str(), value, o.baseline);
        }
      }
      std::printf("baselines: %s  %d constants within x1.1 of %s, %d regressed, %d not recorded\n",
                  bad == 0 && unknown == 0 ? "PASS" : "FAIL", checked - bad, baseline_path.c_str(), bad, unknown);
      if (bad || unknown) ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
