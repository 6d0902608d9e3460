#include "mra/widths.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "mra/basis.hpp"
#include "mra/dyadic.hpp"
#include "mra/error.hpp"

namespace mra {

namespace {

constexpr double kTol = 1e-12;

bool close(double a, double b) { return std::abs(a - b) <= kTol * std::max({1.0, std::abs(a), std::abs(b)}); }

double pos(double x) { return x > 0 ? x : 0.0; }
double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

std::vector<double> shifted(const std::vector<double>& alpha, double s) {
  std::vector<double> out(alpha);
  for (double& a : out) a -= s;
  return out;
}

// s = 1/p + (1/2 - 1/p)_+ = max(1/p, 1/2)
double budget_shift(double p) { return 1.0 / p + pos(0.5 - 1.0 / p); }

bool budget_hypotheses(const SmoothnessParams& params, double q) {
  if (q < std::max(2.0, params.p)) return false;
  return min_alpha(shifted(params.alpha, budget_shift(params.p))) > 0;
}

// Smallest j >= 0 with (kappa, beta) <= r + j.
int shell_of(const MultiIndex& kappa, const std::vector<double>& beta, int r) {
  int j = std::max(0, static_cast<int>(std::floor(dot(kappa, beta) - r)) - 1);
  while (!within_cross(kappa, beta, r + j)) ++j;
  return j;
}

void check_q(double q) {
  if (!(q >= 1.0) || std::isinf(q)) throw InvalidArgument("q must satisfy 1 <= q < inf");
}

// sum over k >= start of x^k
double geometric_from(double x, int start) { return std::pow(x, start) / (1.0 - x); }

void unresolved_rec(const std::vector<double>& alpha, const std::vector<double>& beta, double r,
                    const MultiIndex& box, std::size_t j, double prefix_dot, double weight, bool outside,
                    double& acc) {
  const double x = std::exp2(-2.0 * alpha[j]);
  const int K = box[j];
  if (j + 1 == alpha.size()) {
    // first k with prefix + beta k > r, using the cross tie tolerance
    const double bound = r + kTol * std::max(1.0, std::abs(r));
    int k = std::max(0, static_cast<int>(std::floor((bound - prefix_dot) / beta[j])) - 1);
    while (prefix_dot + beta[j] * k <= bound) ++k;
    if (!outside) k = std::max(k, K + 1);
    acc += weight * geometric_from(x, k);
    return;
  }
  // the remaining factors are below 1e-20 of the leading term past this cap
  const int cap = std::max(K, static_cast<int>(std::ceil(33.0 / alpha[j]))) + 1;
  for (int k = 0; k <= cap; ++k)
    unresolved_rec(alpha, beta, r, box, j + 1, prefix_dot + beta[j] * k, weight * std::pow(x, k), outside || k > K,
                   acc);
}

}  // namespace

bool decay_condition(const SmoothnessParams& params, double q) {
  params.validate();
  check_q(q);
  return min_alpha(shifted(params.alpha, decay_exponent_shift(params.p, q))) > 0;
}

WidthCase width_case(const SmoothnessParams& params, double q) {
  const bool decay = decay_condition(params, q);
  const double p = params.p;
  if (q <= p || (q <= 2.0 && decay)) return WidthCase::truncation;
  if (budget_hypotheses(params, q)) return WidthCase::budgeted;
  throw InvalidArgument("smoothness too low for the width bounds at these p, q");
}

WidthExponent width_exponent(const SmoothnessParams& params, double q) {
  WidthExponent e;
  e.which = width_case(params, q);
  const double p = params.p;
  const int c = min_multiplicity(params.alpha);
  if (e.which == WidthCase::truncation) {
    const double qq = std::min(2.0, std::max(p, q));
    e.rate = min_alpha(shifted(params.alpha, decay_exponent_shift(p, q)));
    e.log_power = (e.rate + pos(1.0 / qq - inv(params.theta))) * (c - 1);
  } else {
    e.rate = min_alpha(shifted(params.alpha, pos(1.0 / p - 0.5)));
    e.log_power = (e.rate + pos(0.5 - inv(params.theta))) * (c - 1);
  }
  return e;
}

std::vector<double> choose_beta(const SmoothnessParams& params, double q) {
  if (!decay_condition(params, q)) throw InvalidArgument("alpha - (1/p - 1/q)_+ must be positive");
  const double delta = decay_exponent_shift(params.p, q);
  const auto& alpha = params.alpha;
  const double a_min = min_alpha(alpha);
  const double m = min_alpha(shifted(alpha, delta));
  const bool budgeted = q > 2.0 && budget_hypotheses(params, q);
  const double s = budget_shift(params.p);
  const double mu = budgeted ? min_alpha(shifted(alpha, s)) : 0.0;
  std::vector<double> beta(alpha.size(), 1.0);
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (close(alpha[j], a_min)) continue;
    double hi = (alpha[j] - delta) / m;
    if (budgeted) hi = std::min(hi, (alpha[j] - s) / mu);
    beta[j] = 0.5 * (1.0 + hi);
  }
  return beta;
}

std::uint64_t cross_dimension(const std::vector<double>& beta, int r, const DegreeVector& l) {
  if (l.dim() != static_cast<int>(beta.size())) throw InvalidArgument("beta and degree dimensions differ");
  std::uint64_t n = 0;
  for (const auto& kappa : enum_cross({beta, r})) n += detail_dim(kappa, l);
  return n;
}

std::vector<DimensionRow> dimension_law(const std::vector<double>& beta, const DegreeVector& l, int r_min, int r_max) {
  if (r_min < 1 || r_max < r_min) throw InvalidArgument("need 1 <= r_min <= r_max");
  const auto b = min_with_multiplicity(beta);
  std::vector<DimensionRow> rows;
  for (int r = r_min; r <= r_max; ++r) {
    DimensionRow row;
    row.r = r;
    row.dimension = cross_dimension(beta, r, l);
    row.model = std::exp2(r / b.value) * std::pow(static_cast<double>(r), b.multiplicity - 1);
    rows.push_back(row);
  }
  return rows;
}

std::vector<TruncationPoint> truncation_curve(const Decomposition& dec, const std::vector<double>& beta,
                                              const std::vector<int>& r_values, double q, Exec exec) {
  check_q(q);
  if (static_cast<int>(beta.size()) != dec.grid.dim()) throw InvalidArgument("beta needs one entry per axis");
  for (int r : r_values)
    if (r < 1) throw InvalidArgument("cross radius must be >= 1");

  std::vector<std::pair<double, const DetailCoeffs*>> blocks;
  for (const auto& [kappa, b] : dec.blocks) blocks.emplace_back(dot(kappa, beta), &b);
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<std::size_t> order(r_values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r_values[a] > r_values[b]; });

  std::vector<TruncationPoint> out(r_values.size());
  GridFunction tail(dec.grid);
  std::size_t next = 0;
  for (std::size_t i : order) {
    const int r = r_values[i];
    while (next < blocks.size() && !within_cross(blocks[next].second->kappa, beta, r)) {
      tail += synthesize_block(*blocks[next].second, dec.grid, exec);
      ++next;
    }
    auto& pt = out[i];
    pt.r = r;
    pt.n = cross_dimension(beta, r, dec.degree);
    pt.resolved = lp_norm(tail, q);
    pt.error = pt.resolved;
  }
  return out;
}

TruncationPoint truncation_error(const GridFunction& f, const std::vector<double>& beta, int r, double q,
                                 const DegreeVector& l, Exec exec) {
  const int d = f.grid().dim();
  const auto dec = analyze(f, IndexSet::box(MultiIndex::filled(d, f.grid().level())), l, exec);
  return truncation_curve(dec, beta, {r}, q, exec).front();
}

double extremal_unresolved_sq(const std::vector<double>& alpha, const std::vector<double>& beta, int r,
                              const MultiIndex& box) {
  if (alpha.empty() || alpha.size() != beta.size() || box.dim() != static_cast<int>(alpha.size()))
    throw InvalidArgument("alpha, beta and box dimensions differ");
  for (double a : alpha)
    if (!(a > 0)) throw InvalidArgument("alpha must be positive");
  double acc = 0;
  unresolved_rec(alpha, beta, r, box, 0, 0.0, 1.0, false, acc);
  return acc;
}

double tail_model(const SmoothnessParams& params, double q, int r) {
  params.validate();
  check_q(q);
  const int c = min_multiplicity(params.alpha);
  const double p = params.p;
  const double rr = static_cast<double>(r);
  if (p <= q) {
    const double rate = min_alpha(shifted(params.alpha, 1.0 / p - 1.0 / q));
    return std::exp2(-rate * rr) * std::pow(rr, (c - 1) * pos(1.0 / std::min(2.0, q) - inv(params.theta)));
  }
  return std::exp2(-min_alpha(params.alpha) * rr) *
         std::pow(rr, (c - 1) * pos(1.0 / std::min(2.0, p) - inv(params.theta)));
}

BudgetPlan budget_plan(int r, const std::vector<double>& beta, const SmoothnessParams& params, double q) {
  params.validate();
  check_q(q);
  if (r < 1) throw InvalidArgument("cross radius must be >= 1");
  if (!budget_hypotheses(params, q))
    throw InvalidArgument("budget plan needs q >= max(2, p) and alpha - max(1/p, 1/2) > 0");
  const auto& alpha = params.alpha;
  if (beta.size() != alpha.size()) throw InvalidArgument("beta needs one entry per axis");
  const double p = params.p;
  const double delta = decay_exponent_shift(p, q);
  const double s = budget_shift(p);
  const double a_min = min_alpha(alpha);
  const double m = min_alpha(shifted(alpha, delta));

  BudgetPlan plan;
  plan.r = r;
  plan.beta = beta;
  plan.mu = min_alpha(shifted(alpha, s));

  std::vector<std::size_t> rest;  // J'
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (close(alpha[j], a_min)) {
      if (!close(beta[j], 1.0)) throw InvalidArgument("beta must be 1 where alpha is minimal");
      continue;
    }
    if (!(beta[j] > 1.0) || !((alpha[j] - delta) / beta[j] > m) || !((alpha[j] - s) / beta[j] > plan.mu))
      throw InvalidArgument("beta outside its admissible interval");
    rest.push_back(j);
  }

  if (rest.empty()) {
    plan.epsilon = 1.0;
  } else {
    double hi = kInfinity;
    for (std::size_t j : rest) hi = std::min(hi, (alpha[j] - s) / beta[j] - plan.mu);
    plan.epsilon = 0.5 * hi;
  }
  const double ratio = min_alpha(shifted(alpha, pos(1.0 / p - 0.5))) / m;
  double g_hi = std::min(1.0 / 3.0, 2.0 * plan.mu);
  if (ratio > 1.0 + kTol) g_hi = std::min(g_hi, 1.0 / (3.0 * (ratio - 1.0)));
  plan.gamma = 0.5 * g_hi;
  plan.gamma_prime = 0.5 * std::min(plan.gamma, 2.0 * plan.epsilon);
  plan.j0 = static_cast<int>(std::floor(r / (3.0 * plan.gamma)));

  const DegreeVector l = params.projection_degree();
  // every kappa with entries in {0, 1} has the same detail dimension
  plan.c0 = poly_dim(l);
  plan.cross_dim = cross_dimension(beta, r, l);
  for (const auto& kappa : enum_cross({beta, r + plan.j0})) {
    if (within_cross(kappa, beta, r)) continue;
    const int j = shell_of(kappa, beta, r);
    double rest_dot = 0;
    for (std::size_t a : rest) rest_dot += kappa[a] * beta[a];
    const double raw = std::floor(plan.c0 * std::exp2(r - plan.gamma * j - plan.gamma_prime * rest_dot)) + 1.0;
    const double dim = detail_dim_real(kappa, l);
    const auto n = static_cast<std::uint64_t>(std::min(raw, dim));
    plan.allocation.emplace(kappa, n);
    plan.budget += n;
  }
  const int c = min_multiplicity(alpha);
  plan.audit_ratio = static_cast<double>(plan.total()) / (std::exp2(r) * std::pow(static_cast<double>(r), c - 1));
  return plan;
}

RateFit rate_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4) throw FitError("rate fit needs at least four points");
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd A(m, 3);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto [n, e] = points[static_cast<std::size_t>(i)];
    if (!(n > std::exp(1.0)) || !(e > 0) || !std::isfinite(n) || !std::isfinite(e))
      throw FitError("rate fit needs n > e and positive finite errors");
    if (i > 0 && !(n > points[static_cast<std::size_t>(i - 1)].first)) throw FitError("n must be strictly increasing");
    A(i, 0) = 1.0;
    A(i, 1) = std::log(n);
    A(i, 2) = std::log(std::log(n));
    y(i) = std::log(e);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) throw FitError("rate fit design is rank deficient");
  const Eigen::VectorXd x = qr.solve(y);
  RateFit fit;
  fit.intercept = x(0);
  fit.slope = x(1);
  fit.log_coefficient = x(2);
  fit.rms_residual = std::sqrt((A * x - y).squaredNorm() / static_cast<double>(m));
  return fit;
}

WidthExperiment run_width_experiment(const WidthExperimentConfig& cfg, Exec exec) {
  const auto& params = cfg.params;
  WidthExperiment out;
  out.exponent = width_exponent(params, cfg.q);
  if (out.exponent.which != WidthCase::truncation)
    throw Unsupported("only the truncation case is realized as an experiment");
  if (cfg.trials < 1) throw InvalidArgument("need at least one trial");
  if (cfg.r_min < 1 || cfg.r_max < cfg.r_min) throw InvalidArgument("need 1 <= r_min <= r_max");
  out.beta = choose_beta(params, cfg.q);
  const int d = params.dim();
  const auto l = params.projection_degree();
  const auto grid = Grid::for_degree(d, cfg.level, l);
  const auto box = MultiIndex::filled(d, cfg.level);
  out.analytic_tail = params.p == 2.0 && cfg.q == 2.0;

  std::vector<int> rs;
  for (int r = cfg.r_min; r <= cfg.r_max; ++r) rs.push_back(r);
  std::vector<TruncationPoint> worst;
  for (int t = 0; t < cfg.trials; ++t) {
    const auto ex = synthesize_extremal(params, grid, box, cfg.seed + static_cast<std::uint64_t>(t), exec);
    auto pts = truncation_curve(ex.dec, out.beta, rs, cfg.q, exec);
    if (worst.empty()) {
      worst = std::move(pts);
    } else {
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i].resolved > worst[i].resolved) worst[i] = pts[i];
    }
  }
  std::vector<std::pair<double, double>> fit_points;
  for (auto& pt : worst) {
    // blocks are orthogonal in L_2, so the unresolved part adds in squares
    if (out.analytic_tail) {
      pt.unresolved = std::sqrt(extremal_unresolved_sq(params.alpha, out.beta, pt.r, box));
      pt.error = std::hypot(pt.resolved, pt.unresolved);
    }
    WidthExperimentRow row;
    row.r = pt.r;
    row.n = pt.n;
    row.error = pt.error;
    row.model = tail_model(params, cfg.q, pt.r);
    out.rows.push_back(row);
    fit_points.emplace_back(static_cast<double>(pt.n), pt.error);
  }
  out.fit = rate_fit(fit_points);
  return out;
}

}  // namespace mra
