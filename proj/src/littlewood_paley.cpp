#include "mra/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mra/error.hpp"

namespace mra {

namespace {

void check_open_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidArgument("p must satisfy 1 < p < inf");
}

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("p must satisfy 1 <= p < inf");
}

std::map<MultiIndex, GridFunction> details(const GridFunction& f, const MultiIndex& k, const DegreeVector& l, Exec exec) {
  return detail_functions(analyze(f, IndexSet::box(k), l, exec), exec);
}

GridFunction signed_sum(const std::map<MultiIndex, GridFunction>& d, const SignFamily& signs, const Grid& grid) {
  GridFunction out(grid);
  for (const auto& [kappa, g] : d) out.axpy(signs.sign(kappa), g);
  return out;
}

}  // namespace

SignFamily SignFamily::product(std::vector<std::vector<int>> axis_signs) {
  if (axis_signs.empty()) throw InvalidArgument("sign family needs at least one axis");
  for (const auto& axis : axis_signs)
    for (int s : axis)
      if (s != 1 && s != -1) throw InvalidArgument("signs must be +1 or -1");
  SignFamily f;
  f.axis_ = std::move(axis_signs);
  return f;
}

SignFamily SignFamily::table(std::map<MultiIndex, int> signs) {
  if (signs.empty()) throw InvalidArgument("sign table is empty");
  for (const auto& [k, s] : signs)
    if (s != 1 && s != -1) throw InvalidArgument("signs must be +1 or -1");
  SignFamily f;
  f.table_ = std::move(signs);
  return f;
}

SignFamily SignFamily::all_plus(const MultiIndex& k) {
  std::vector<std::vector<int>> a;
  for (int kj : k) a.emplace_back(static_cast<std::size_t>(kj) + 1, 1);
  return product(std::move(a));
}

SignFamily SignFamily::random_product(const MultiIndex& k, Rng& rng) {
  std::vector<std::vector<int>> a;
  std::bernoulli_distribution coin;
  for (int kj : k) {
    std::vector<int> s(static_cast<std::size_t>(kj) + 1);
    for (int& v : s) v = coin(rng) ? 1 : -1;
    a.push_back(std::move(s));
  }
  return product(std::move(a));
}

int SignFamily::sign(const MultiIndex& kappa) const {
  if (!table_.empty()) {
    const auto it = table_.find(kappa);
    if (it == table_.end()) throw InvalidArgument("no sign for level " + kappa.str());
    return it->second;
  }
  if (static_cast<std::size_t>(kappa.dim()) != axis_.size()) throw InvalidArgument("sign family dimension mismatch");
  int s = 1;
  for (std::size_t j = 0; j < axis_.size(); ++j) {
    const auto m = static_cast<std::size_t>(kappa[j]);
    if (m >= axis_[j].size()) throw InvalidArgument("sign family too short for level " + kappa.str());
    s *= axis_[j][m];
  }
  return s;
}

GridFunction square_function(const Decomposition& dec) {
  GridFunction out(dec.grid);
  auto o = out.values();
  for (const auto& [kappa, g] : detail_functions(dec)) {
    const auto v = g.values();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += v[i] * v[i];
  }
  for (double& x : o) x = std::sqrt(x);
  return out;
}

GridFunction apply_signs(const GridFunction& f, const SignFamily& signs, const MultiIndex& k, const DegreeVector& l) {
  return signed_sum(details(f, k, l, default_exec()), signs, f.grid());
}

LPRatio lp_equivalence(const GridFunction& f, double p, const MultiIndex& k, const DegreeVector& l) {
  check_open_p(p);
  const auto dec = analyze(f, IndexSet::box(k), l);
  const auto s = square_function(dec);
  return {lp_norm(s, p), lp_norm(synthesize(dec), p)};
}

double sign_series(const GridFunction& f, const SignFamily& signs, double p, const MultiIndex& k, const DegreeVector& l) {
  check_open_p(p);
  return lp_norm(apply_signs(f, signs, k, l), p);
}

double pstar_ratio(const GridFunction& f, double p, const MultiIndex& k, const DegreeVector& l) {
  check_p(p);
  const double ps = std::min(2.0, p);
  const auto d = details(f, k, l, default_exec());
  double s = 0.0;
  GridFunction e(f.grid());
  for (const auto& [kappa, g] : d) {
    s += std::pow(lp_norm(g, p), ps);
    e += g;
  }
  return lp_norm(e, p) / std::pow(s, 1.0 / ps);
}

int rademacher_eval(const MultiIndex& kappa, std::span<const double> t) {
  if (static_cast<std::size_t>(kappa.dim()) != t.size()) throw InvalidArgument("point and level dimensions differ");
  int s = 1;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (kappa[j] < 0) throw InvalidArgument("levels must be non-negative");
    if (!(t[j] > 0.0 && t[j] < 1.0)) throw DomainError("rademacher functions are evaluated on (0,1)^d");
    // scaling by a power of two is exact
    const double x = std::ldexp(t[j], kappa[j] + 1);
    const double m = std::floor(x);
    if (m == x) throw BoundaryError("coordinate " + std::to_string(j) + " lies on a dyadic breakpoint");
    if (std::fmod(m, 2.0) != 0.0) s = -s;
  }
  return s;
}

std::vector<double> rademacher_sum_cells(const std::vector<double>& a, const MultiIndex& k) {
  const int d = k.dim();
  std::size_t expected = 1;
  for (int kj : k) {
    if (kj < 0 || kj > 24) throw InvalidArgument("box bound out of range");
    expected *= static_cast<std::size_t>(kj) + 1;
  }
  if (a.size() != expected) throw InvalidArgument("coefficient count does not match the box");
  // contract one axis at a time: extent (k_j + 1) -> 2^{k_j + 1} cells
  std::vector<std::size_t> shape;
  for (int kj : k) shape.push_back(static_cast<std::size_t>(kj) + 1);
  std::vector<double> cur = a;
  for (int j = 0; j < d; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    const int kj = k[sj];
    const std::size_t cells = std::size_t{1} << (kj + 1);
    std::size_t outer = 1, inner = 1;
    for (std::size_t i = 0; i < sj; ++i) outer *= shape[i];
    for (std::size_t i = sj + 1; i < shape.size(); ++i) inner *= shape[i];
    std::vector<double> next(outer * cells * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t c = 0; c < cells; ++c)
        for (int m = 0; m <= kj; ++m) {
          // omega_m on cell c of level k_j + 1: parity of floor(2^{m+1} t)
          const double s = ((c >> (kj - m)) & 1u) ? -1.0 : 1.0;
          const double* src = cur.data() + (o * shape[sj] + static_cast<std::size_t>(m)) * inner;
          double* dst = next.data() + (o * cells + c) * inner;
          for (std::size_t i = 0; i < inner; ++i) dst[i] += s * src[i];
        }
    shape[sj] = cells;
    cur = std::move(next);
  }
  return cur;
}

KhintchineResult khintchine_check(const std::vector<double>& a, const MultiIndex& k, double p) {
  check_p(p);
  const auto v = rademacher_sum_cells(a, k);
  KhintchineResult r;
  for (double x : a) r.l2 += x * x;
  r.l2 = std::sqrt(r.l2);
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  r.lp = std::pow(s / static_cast<double>(v.size()), 1.0 / p);
  return r;
}

std::string to_string(FunctionFamily f) {
  switch (f) {
    case FunctionFamily::coefficients:
      return "coefficients";
    case FunctionFamily::multiscale:
      return "multiscale";
    case FunctionFamily::sparse:
      return "sparse";
    case FunctionFamily::steps:
      return "steps";
  }
  return "unknown";
}

FunctionFamily function_family_from_string(const std::string& s) {
  for (auto f : {FunctionFamily::coefficients, FunctionFamily::multiscale, FunctionFamily::sparse, FunctionFamily::steps})
    if (to_string(f) == s) return f;
  throw InvalidArgument("unknown function family '" + s + "'");
}

GridFunction random_test_function(FunctionFamily family, const Grid& grid, const MultiIndex& k, const DegreeVector& l,
                                  Rng& rng) {
  switch (family) {
    case FunctionFamily::coefficients:
      return to_grid(random_piecewise_poly(k, l, rng), grid, Exec::serial);
    case FunctionFamily::multiscale: {
      const double decay = std::uniform_real_distribution<double>(0.25, 1.0)(rng);
      return random_multiscale(grid, k, l, decay, rng);
    }
    case FunctionFamily::sparse:
      return random_sparse(grid, k, l, std::uniform_int_distribution<int>(1, 8)(rng), rng);
    case FunctionFamily::steps: {
      std::normal_distribution<double> normal;
      GridFunction f(grid);
      const int terms = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int t = 0; t < terms; ++t) f.axpy(normal(rng), random_steps(grid, k, rng));
      return f;
    }
  }
  throw InvalidArgument("unknown function family");
}

void Stats::add(double v) {
  if (count == 0) {
    min = max = v;
  } else {
    min = std::min(min, v);
    max = std::max(max, v);
  }
  mean += (v - mean) / (count + 1);
  ++count;
}

std::vector<LPSweepRow> lp_sweep(const LPSweepConfig& cfg) {
  if (cfg.dim < 1 || cfg.degree.dim() != cfg.dim) throw InvalidArgument("degree vector must have one entry per axis");
  if (cfg.trials < 1 || cfg.sign_draws < 0) throw InvalidArgument("trials must be >= 1 and sign draws >= 0");
  if (cfg.families.empty()) throw InvalidArgument("at least one function family is required");
  for (double p : cfg.p_values) check_p(p);
  const Grid grid = Grid::for_degree(cfg.dim, cfg.level, cfg.degree);
  const MultiIndex k = MultiIndex::filled(cfg.dim, cfg.level);
  const std::size_t np = cfg.p_values.size();
  std::vector<LPSweepRow> rows(static_cast<std::size_t>(cfg.trials) * np);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

#pragma omp parallel for schedule(dynamic)
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(trial));
    const auto family = cfg.families[static_cast<std::size_t>(trial) % cfg.families.size()];
    const auto f = random_test_function(family, grid, k, cfg.degree, rng);
    const auto d = details(f, k, cfg.degree, Exec::serial);
    GridFunction e(grid), sq(grid);
    for (const auto& [kappa, g] : d) {
      e += g;
      auto s = sq.values();
      const auto v = g.values();
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += v[i] * v[i];
    }
    for (double& x : sq.values()) x = std::sqrt(x);
    std::vector<SignFamily> draws;
    for (int s = 0; s < cfg.sign_draws; ++s) draws.push_back(SignFamily::random_product(k, rng));

    for (std::size_t ip = 0; ip < np; ++ip) {
      const double p = cfg.p_values[ip];
      const double ps = std::min(2.0, p);
      const double fn = lp_norm(e, p);
      double blocks = 0.0;
      for (const auto& [kappa, g] : d) blocks += std::pow(lp_norm(g, p), ps);
      LPSweepRow row;
      row.trial = trial;
      row.family = family;
      row.p = p;
      row.level = cfg.level;
      row.pstar_ratio = fn / std::pow(blocks, 1.0 / ps);
      row.square_ratio = nan;
      row.sign_min = nan;
      row.sign_max = nan;
      if (p > 1.0) {
        row.square_ratio = lp_norm(sq, p) / fn;
        for (std::size_t s = 0; s < draws.size(); ++s) {
          const double v = lp_norm(signed_sum(d, draws[s], grid), p) / fn;
          row.sign_min = s == 0 ? v : std::min(row.sign_min, v);
          row.sign_max = s == 0 ? v : std::max(row.sign_max, v);
        }
      }
      rows[static_cast<std::size_t>(trial) * np + ip] = row;
    }
  }
  return rows;
}

std::vector<LPReport> summarize(const std::vector<LPSweepRow>& rows) {
  std::vector<LPReport> out;
  for (const auto& r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const LPReport& x) { return x.p == r.p && x.level == r.level; });
    if (it == out.end()) {
      out.push_back(LPReport{r.p, r.level, {}, {}, {}, {}});
      it = out.end() - 1;
    }
    it->pstar_ratio.add(r.pstar_ratio);
    if (!std::isnan(r.square_ratio)) it->square_ratio.add(r.square_ratio);
    if (!std::isnan(r.sign_max)) {
      it->sign_min.add(r.sign_min);
      it->sign_max.add(r.sign_max);
    }
  }
  return out;
}

}  // namespace mra
