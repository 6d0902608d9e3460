#include "mra/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mra/dyadic.hpp"
#include "mra/error.hpp"
#include "mra/random.hpp"

namespace mra {

namespace {

bool close_rel(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_shape(const GridFunction& f, const std::vector<int>& shift, const std::vector<int>& order) {
  const auto d = static_cast<std::size_t>(f.grid().dim());
  if (shift.size() != d || order.size() != d) throw InvalidArgument("shift and order need one entry per axis");
  for (int o : order)
    if (o < 0) throw InvalidArgument("difference order must be non-negative");
}

// Per-axis sample range [lo, hi) of the restricted domain.
void restricted_range(const Grid& grid, const std::vector<int>& shift, const std::vector<int>& order,
                      std::vector<long>& lo, std::vector<long>& hi) {
  const int d = grid.dim();
  lo.assign(static_cast<std::size_t>(d), 0);
  hi.assign(static_cast<std::size_t>(d), 0);
  for (int j = 0; j < d; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    const long samples = grid.samples_per_axis(j);
    const long reach = order[sj] == 0 ? 0 : static_cast<long>(order[sj]) * shift[sj] * grid.nodes_per_cell(j);
    lo[sj] = std::max(0L, -reach);
    hi[sj] = std::min(samples, samples - reach);
  }
}

MaskedFunction masked_from_range(GridFunction values, const std::vector<long>& lo, const std::vector<long>& hi) {
  MaskedFunction out{std::move(values), {}};
  const Grid& grid = out.values.grid();
  const int d = grid.dim();
  out.mask.assign(grid.size(), 0);
  std::vector<int> g(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    grid.unflatten(flat, g.data());
    bool in = true;
    for (int j = 0; j < d && in; ++j) in = g[static_cast<std::size_t>(j)] >= lo[static_cast<std::size_t>(j)] &&
                                           g[static_cast<std::size_t>(j)] < hi[static_cast<std::size_t>(j)];
    if (in)
      out.mask[flat] = 1;
    else
      out.values[flat] = 0.0;
  }
  return out;
}

// Enumerates all m with 1 <= m_j <= top_j, row-major.
std::vector<std::vector<int>> step_grid(const std::vector<int>& top) {
  std::vector<std::vector<int>> out;
  std::size_t total = 1;
  for (int t : top) total *= static_cast<std::size_t>(std::max(t, 0));
  out.reserve(total);
  for (std::size_t m = 0; m < total; ++m) {
    std::vector<int> v(top.size());
    std::size_t rest = m;
    for (std::size_t j = top.size(); j-- > 0;) {
      v[j] = 1 + static_cast<int>(rest % static_cast<std::size_t>(top[j]));
      rest /= static_cast<std::size_t>(top[j]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<double> difference_norms(const GridFunction& f, const std::vector<int>& order, const std::vector<int>& axes,
                                     const std::vector<std::vector<int>>& steps, double p, Exec exec) {
  const int d = f.grid().dim();
  std::vector<double> norms(steps.size(), 0.0);
  auto one = [&](std::size_t s) {
    std::vector<int> shift(static_cast<std::size_t>(d), 0);
    for (std::size_t a = 0; a < axes.size(); ++a) shift[static_cast<std::size_t>(axes[a])] = steps[s][a];
    const auto diff = mixed_difference(f, shift, order);
    norms[s] = diff.empty() ? 0.0 : diff.lp_norm(p);
  };
  const auto n = static_cast<long>(steps.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long s = 0; s < n; ++s) one(static_cast<std::size_t>(s));
  } else {
    for (long s = 0; s < n; ++s) one(static_cast<std::size_t>(s));
  }
  return norms;
}

}  // namespace

std::vector<int> SmoothnessParams::order() const {
  std::vector<int> l;
  for (double a : alpha) l.push_back(static_cast<int>(std::floor(a)) + 1);
  return l;
}

DegreeVector SmoothnessParams::projection_degree() const {
  std::vector<int> l = order();
  for (int& x : l) x -= 1;
  return DegreeVector(l);
}

void SmoothnessParams::validate() const {
  if (alpha.empty()) throw InvalidArgument("alpha must have at least one component");
  for (double a : alpha)
    if (!(a > 0) || !std::isfinite(a)) throw InvalidArgument("alpha must be positive and finite");
  if (!(p >= 1) || !std::isfinite(p)) throw InvalidArgument("p must satisfy 1 <= p < inf");
  if (!(theta >= 1)) throw InvalidArgument("theta must satisfy theta >= 1");
}

double min_alpha(const std::vector<double>& alpha) { return *std::min_element(alpha.begin(), alpha.end()); }

int min_multiplicity(const std::vector<double>& alpha) {
  const double m = min_alpha(alpha);
  int c = 0;
  for (double a : alpha) c += close_rel(a, m) ? 1 : 0;
  return c;
}

bool MaskedFunction::empty() const { return std::find(mask.begin(), mask.end(), 1) == mask.end(); }

double MaskedFunction::lp_norm(double p) const {
  if (!(p >= 1) || !std::isfinite(p)) throw InvalidArgument("p must satisfy 1 <= p < inf");
  const Grid& grid = values.grid();
  double scale = 0;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) scale = std::max(scale, std::abs(values[i]));
  if (scale == 0) return 0.0;
  double s = 0;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) s += grid.weight(i) * std::pow(std::abs(values[i]) / scale, p);
  return scale * std::pow(s, 1.0 / p);
}

MaskedFunction mixed_difference(const GridFunction& f, const std::vector<int>& shift, const std::vector<int>& order) {
  check_shape(f, shift, order);
  const Grid& grid = f.grid();
  const int d = grid.dim();
  std::vector<long> lo, hi;
  restricted_range(grid, shift, order, lo, hi);

  // binomial terms: coefficient and flat offset
  std::vector<double> coef{1.0};
  std::vector<long> offset{0};
  for (int j = 0; j < d; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    const long step = static_cast<long>(shift[sj]) * grid.nodes_per_cell(j) * static_cast<long>(grid.stride(j));
    std::vector<double> c2;
    std::vector<long> o2;
    for (std::size_t t = 0; t < coef.size(); ++t)
      for (int k = 0; k <= order[sj]; ++k) {
        c2.push_back(coef[t] * binomial(order[sj], k) * (((order[sj] - k) % 2) ? -1.0 : 1.0));
        o2.push_back(offset[t] + k * step);
      }
    coef = std::move(c2);
    offset = std::move(o2);
  }

  GridFunction out(grid);
  std::vector<int> g(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    grid.unflatten(flat, g.data());
    bool in = true;
    for (int j = 0; j < d && in; ++j) in = g[static_cast<std::size_t>(j)] >= lo[static_cast<std::size_t>(j)] &&
                                           g[static_cast<std::size_t>(j)] < hi[static_cast<std::size_t>(j)];
    if (!in) continue;
    double s = 0;
    for (std::size_t t = 0; t < coef.size(); ++t) s += coef[t] * f[static_cast<std::size_t>(static_cast<long>(flat) + offset[t])];
    out[flat] = s;
  }
  return masked_from_range(std::move(out), lo, hi);
}

MaskedFunction mixed_difference_iterated(const GridFunction& f, const std::vector<int>& shift,
                                         const std::vector<int>& order) {
  check_shape(f, shift, order);
  const Grid& grid = f.grid();
  const int d = grid.dim();
  GridFunction cur = f;
  std::vector<int> g(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    const long step = static_cast<long>(shift[sj]) * grid.nodes_per_cell(j);
    const long samples = grid.samples_per_axis(j);
    for (int rep = 0; rep < order[sj]; ++rep) {
      GridFunction next(grid);
      for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        grid.unflatten(flat, g.data());
        const long to = g[sj] + step;
        if (to < 0 || to >= samples) continue;
        next[flat] = cur[flat + static_cast<std::size_t>(step * static_cast<long>(grid.stride(j)))] - cur[flat];
      }
      cur = std::move(next);
    }
  }
  std::vector<long> lo, hi;
  restricted_range(grid, shift, order, lo, hi);
  return masked_from_range(std::move(cur), lo, hi);
}

double mixed_modulus(const GridFunction& f, const std::vector<double>& t, const std::vector<int>& order, double p,
                     Exec exec) {
  const Grid& grid = f.grid();
  const int d = grid.dim();
  if (t.size() != static_cast<std::size_t>(d) || order.size() != static_cast<std::size_t>(d))
    throw InvalidArgument("t and order need one entry per axis");
  std::vector<int> axes, top;
  for (int j = 0; j < d; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    if (order[sj] == 0) continue;
    if (!(t[sj] > 0)) throw InvalidArgument("t must be positive");
    const int reach = (grid.cells_per_axis() - 1) / order[sj];
    const double cells = std::floor(t[sj] * grid.cells_per_axis() * (1 + 1e-12));
    axes.push_back(j);
    top.push_back(static_cast<int>(std::min<double>(cells, reach)));
  }
  if (axes.empty()) return 0.0;
  for (int x : top)
    if (x <= 0) return 0.0;
  const auto norms = difference_norms(f, order, axes, step_grid(top), p, exec);
  return norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
}

std::size_t ModulusTable::index(const std::vector<int>& a) const {
  std::size_t idx = 0;
  for (int x : a) idx = idx * static_cast<std::size_t>(level + 1) + static_cast<std::size_t>(x);
  return idx;
}

ModulusTable modulus_table(const GridFunction& f, const std::vector<int>& order, double p, Exec exec) {
  const Grid& grid = f.grid();
  const int d = grid.dim();
  const int K = grid.level();
  if (order.size() != static_cast<std::size_t>(d)) throw InvalidArgument("order needs one entry per axis");
  ModulusTable table;
  table.level = K;
  std::vector<int> top;
  for (int j = 0; j < d; ++j)
    if (order[static_cast<std::size_t>(j)] > 0) {
      table.axes.push_back(j);
      top.push_back((grid.cells_per_axis() - 1) / order[static_cast<std::size_t>(j)]);
    }
  const auto nj = table.axes.size();
  std::size_t cells = 1;
  for (std::size_t a = 0; a < nj; ++a) cells *= static_cast<std::size_t>(K + 1);
  table.values.assign(cells, 0.0);
  if (nj == 0) return table;
  for (int x : top)
    if (x <= 0) return table;

  const auto steps = step_grid(top);
  auto norms = difference_norms(f, order, table.axes, steps, p, exec);
  // running max along every axis of the step grid
  std::vector<std::size_t> stride(nj, 1);
  for (std::size_t a = nj - 1; a-- > 0;) stride[a] = stride[a + 1] * static_cast<std::size_t>(top[a + 1]);
  for (std::size_t a = 0; a < nj; ++a)
    for (std::size_t s = 0; s < norms.size(); ++s)
      if (steps[s][a] > 1) norms[s] = std::max(norms[s], norms[s - stride[a]]);

  std::vector<int> av(nj);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rest = c;
    for (std::size_t a = nj; a-- > 0;) {
      av[a] = static_cast<int>(rest % static_cast<std::size_t>(K + 1));
      rest /= static_cast<std::size_t>(K + 1);
    }
    std::size_t idx = 0;
    bool none = false;
    for (std::size_t a = 0; a < nj; ++a) {
      const int m = std::min(1 << (K - av[a]), top[a]);
      if (m < 1) none = true;
      idx += static_cast<std::size_t>(m - 1) * stride[a];
    }
    table.values[c] = none ? 0.0 : norms[idx];
  }
  return table;
}

SeminormReport besov_seminorm(const GridFunction& f, const SmoothnessParams& params, Exec exec) {
  params.validate();
  const int d = f.grid().dim();
  if (params.dim() != d) throw InvalidArgument("alpha needs one entry per axis");
  const int K = f.grid().level();
  const auto l = params.order();
  const double theta = params.theta;
  const double ln2 = std::log(2.0);
  SeminormReport rep;
  for (unsigned J = 1; J < (1u << d); ++J) {
    std::vector<int> order(static_cast<std::size_t>(d), 0);
    for (int j = 0; j < d; ++j)
      if (J & (1u << j)) order[static_cast<std::size_t>(j)] = l[static_cast<std::size_t>(j)];
    const auto table = modulus_table(f, order, params.p, exec);
    const auto nj = table.axes.size();
    std::vector<int> a(nj);
    double value = 0;
    if (std::isinf(theta)) {
      for (std::size_t c = 0; c < table.values.size(); ++c) {
        std::size_t rest = c;
        double e = 0;
        for (std::size_t x = nj; x-- > 0;) {
          a[x] = static_cast<int>(rest % static_cast<std::size_t>(K + 1));
          rest /= static_cast<std::size_t>(K + 1);
          e += a[x] * params.alpha[static_cast<std::size_t>(table.axes[x])];
        }
        value = std::max(value, std::exp2(e) * table.values[c]);
      }
    } else {
      // log-sum-exp of log w(a) + theta log Omega(a)
      std::vector<double> terms;
      for (std::size_t c = 0; c < table.values.size(); ++c) {
        if (table.values[c] <= 0) continue;
        std::size_t rest = c;
        double lw = 0;
        for (std::size_t x = nj; x-- > 0;) {
          a[x] = static_cast<int>(rest % static_cast<std::size_t>(K + 1));
          rest /= static_cast<std::size_t>(K + 1);
          const double ta = theta * params.alpha[static_cast<std::size_t>(table.axes[x])];
          lw += -std::log(ta);
          if (a[x] > 0) lw += ta * a[x] * ln2 + std::log1p(-std::exp2(-ta));
        }
        terms.push_back(lw + theta * std::log(table.values[c]));
      }
      if (!terms.empty()) {
        const double mx = *std::max_element(terms.begin(), terms.end());
        double s = 0;
        for (double t : terms) s += std::exp(t - mx);
        value = std::exp((mx + std::log(s)) / theta);
      }
    }
    rep.subsets.push_back(J);
    rep.per_subset.push_back(value);
    rep.value = std::max(rep.value, value);
  }
  return rep;
}

double decay_exponent_shift(double p, double q) { return std::max(0.0, 1.0 / p - 1.0 / q); }

std::vector<DecayRow> decay_check(const GridFunction& f, const SmoothnessParams& params, double q, const MultiIndex& box,
                                  Exec exec) {
  params.validate();
  if (params.dim() != f.grid().dim() || box.dim() != f.grid().dim())
    throw InvalidArgument("alpha and box need one entry per axis");
  const double shift = decay_exponent_shift(params.p, q);
  const auto dec = analyze(f, IndexSet::box(box), params.projection_degree(), exec);
  std::vector<DecayRow> rows;
  for (const auto& [kappa, block] : dec.blocks) {
    if (kappa.sum() == 0) continue;
    DecayRow row;
    row.kappa = kappa;
    row.norm = lp_norm(synthesize_block(block, f.grid(), exec), q);
    double e = 0;
    for (int j = 0; j < kappa.dim(); ++j)
      e += kappa[static_cast<std::size_t>(j)] * (params.alpha[static_cast<std::size_t>(j)] - shift);
    row.model = std::exp2(-e);
    rows.push_back(row);
  }
  return rows;
}

ExtremalFunction synthesize_extremal(const SmoothnessParams& params, const Grid& grid, const MultiIndex& box,
                                     std::uint64_t seed, Exec exec) {
  params.validate();
  if (params.dim() != grid.dim() || box.dim() != grid.dim()) throw InvalidArgument("alpha and box need one entry per axis");
  const DegreeVector l = params.projection_degree();
  Rng rng(seed);
  std::normal_distribution<double> normal;
  ExtremalFunction out;
  out.dec.grid = grid;
  out.dec.degree = l;
  out.dec.index_set = IndexSet::box(box);
  for (const auto& kappa : enum_box(box)) {
    if (!kappa.leq(MultiIndex::filled(grid.dim(), grid.level())))
      throw ResolutionError("grid does not resolve the requested box");
    DetailCoeffs block{kappa, l, {}};
    block.coeffs.resize(block.cell_count() * block.functions());
    for (double& c : block.coeffs) c = normal(rng);
    double norm = 0;
    if (params.p == 2.0) {
      for (double c : block.coeffs) norm += c * c;
      norm = std::sqrt(norm);
    } else {
      norm = lp_norm(synthesize_block(block, grid, exec), params.p);
    }
    double e = 0;
    for (int j = 0; j < kappa.dim(); ++j) e += kappa[static_cast<std::size_t>(j)] * params.alpha[static_cast<std::size_t>(j)];
    const double s = std::exp2(-e) / norm;
    for (double& c : block.coeffs) c *= s;
    out.dec.blocks.emplace(kappa, std::move(block));
  }
  out.f = synthesize(out.dec, exec);
  return out;
}

double normalize(GridFunction& f, const SmoothnessParams& params, Exec exec) {
  const double s = besov_seminorm(f, params, exec).value;
  if (!(s > 0)) return 1.0;
  f *= 1.0 / s;
  return 1.0 / s;
}

}  // namespace mra
