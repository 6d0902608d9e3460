#include "mra/calderon_zygmund.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "mra/error.hpp"

namespace mra {

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Antiderivative of sqrt(r^2 - x^2).
double half_chord_integral(double x, double r) {
  const double t = std::clamp(x / r, -1.0, 1.0);
  return 0.5 * (x * std::sqrt(std::max(0.0, r * r - x * x)) + r * r * std::asin(t));
}

// Local node layout of a finest cell: per-axis offsets in cell units.
struct CellNodes {
  int dim = 1;
  std::size_t count = 1;
  std::vector<double> offsets;  // offsets[t * dim + j]
  std::vector<int> multi;       // multi[t * dim + j]
};

CellNodes cell_nodes(const Grid& grid) {
  CellNodes c;
  c.dim = grid.dim();
  for (int j = 0; j < c.dim; ++j) c.count *= static_cast<std::size_t>(grid.nodes_per_cell(j));
  c.offsets.resize(c.count * static_cast<std::size_t>(c.dim));
  c.multi.resize(c.count * static_cast<std::size_t>(c.dim));
  for (std::size_t t = 0; t < c.count; ++t) {
    std::size_t rest = t;
    for (int j = c.dim - 1; j >= 0; --j) {
      const auto n = static_cast<std::size_t>(grid.nodes_per_cell(j));
      const int m = static_cast<int>(rest % n);
      rest /= n;
      c.multi[t * static_cast<std::size_t>(c.dim) + static_cast<std::size_t>(j)] = m;
      c.offsets[t * static_cast<std::size_t>(c.dim) + static_cast<std::size_t>(j)] =
          grid.rule().nodes[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
    }
  }
  return c;
}

// Supremum of the centred ball averages of the piecewise constant function
// with cell values a on [0, n), at x in cell units. Exact: between two
// consecutive radii |x - b| the average is (u + v r) / r, hence monotone.
double ball_sup_1d(const std::vector<double>& prefix, double total, double x) {
  const auto n = static_cast<std::int64_t>(prefix.size()) - 1;
  auto G = [&](double y) {
    if (y <= 0) return 0.0;
    if (y >= static_cast<double>(n)) return total;
    const auto c = static_cast<std::int64_t>(std::floor(y));
    const double a = prefix[static_cast<std::size_t>(c + 1)] - prefix[static_cast<std::size_t>(c)];
    return prefix[static_cast<std::size_t>(c)] + a * (y - static_cast<double>(c));
  };
  double best = 0;
  const auto cx = static_cast<std::int64_t>(std::floor(x));
  if (cx >= 0 && cx < n) best = prefix[static_cast<std::size_t>(cx + 1)] - prefix[static_cast<std::size_t>(cx)];
  std::int64_t left = cx, right = cx + 1;
  while (true) {
    const double rl = x - static_cast<double>(left);
    const double rr = static_cast<double>(right) - x;
    const double r = std::min(rl, rr);
    if (total <= best * 2 * r) break;
    if (r > 0) best = std::max(best, (G(x + r) - G(x - r)) / (2 * r));
    if (rl <= rr)
      --left;
    else
      ++right;
  }
  return best;
}

// 2D: radii j/2 in cell units, cells a (row-major n x n) with row prefix sums.
double ball_sup_2d(const std::vector<double>& a, const std::vector<double>& row_prefix, int n, double total, double x,
                   double y) {
  const double pi = std::numbers::pi;
  double best = 0;
  const auto cx = static_cast<std::int64_t>(std::floor(x));
  const auto cy = static_cast<std::int64_t>(std::floor(y));
  if (cx >= 0 && cx < n && cy >= 0 && cy < n)
    best = a[static_cast<std::size_t>(cx) * static_cast<std::size_t>(n) + static_cast<std::size_t>(cy)];
  const auto np1 = static_cast<std::size_t>(n) + 1;
  for (int j = 1;; ++j) {
    const double r = 0.5 * j;
    const double area = pi * r * r;
    if (total <= best * area) break;
    double mass = 0;
    // axis 0 is x (rows), axis 1 is y (columns)
    const auto i0 = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(x - r)));
    const auto i1 = std::min<std::int64_t>(n - 1, static_cast<std::int64_t>(std::ceil(x + r)) - 1);
    for (std::int64_t i = i0; i <= i1; ++i) {
      const double u0 = static_cast<double>(i) - x, u1 = u0 + 1;
      const double dmin = (u0 <= 0 && u1 >= 0) ? 0.0 : std::min(std::abs(u0), std::abs(u1));
      if (dmin >= r) continue;
      const double dmax = std::max(std::abs(u0), std::abs(u1));
      const double touch = std::sqrt(r * r - dmin * dmin);
      auto t0 = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(y - touch)));
      auto t1 = std::min<std::int64_t>(n - 1, static_cast<std::int64_t>(std::ceil(y + touch)) - 1);
      if (t0 > t1) continue;
      std::int64_t f0 = t1 + 1, f1 = t1;  // empty full range
      if (dmax < r) {
        const double half = std::sqrt(r * r - dmax * dmax);
        f0 = std::max<std::int64_t>(t0, static_cast<std::int64_t>(std::ceil(y - half)));
        f1 = std::min<std::int64_t>(t1, static_cast<std::int64_t>(std::floor(y + half)) - 1);
        if (f0 > f1) {
          f0 = t1 + 1;
          f1 = t1;
        }
      }
      const double* row = row_prefix.data() + static_cast<std::size_t>(i) * np1;
      if (f0 <= f1) mass += row[f1 + 1] - row[f0];
      for (std::int64_t c = t0; c <= t1; ++c) {
        if (c >= f0 && c <= f1) continue;
        const double v = a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)];
        if (v == 0) continue;
        mass += v * disc_rect_area(u0, u1, static_cast<double>(c) - y, static_cast<double>(c) + 1 - y, r);
      }
    }
    best = std::max(best, mass / area);
  }
  return best;
}

}  // namespace

double disc_rect_area(double x0, double x1, double y0, double y1, double r) {
  x0 = std::max(x0, -r);
  x1 = std::min(x1, r);
  if (!(x0 < x1) || !(y0 < y1)) return 0.0;
  std::vector<double> br{x0, x1};
  for (double v : {y0, y1}) {
    if (std::abs(v) < r) {
      const double b = std::sqrt(r * r - v * v);
      if (b > x0 && b < x1) br.push_back(b);
      if (-b > x0 && -b < x1) br.push_back(-b);
    }
  }
  std::sort(br.begin(), br.end());
  double total = 0;
  for (std::size_t k = 0; k + 1 < br.size(); ++k) {
    const double u = br[k], w = br[k + 1];
    if (!(u < w)) continue;
    const double m = 0.5 * (u + w);
    const double s = std::sqrt(std::max(0.0, r * r - m * m));
    const bool top_flat = y1 < s, bot_flat = y0 > -s;
    const double top = top_flat ? y1 : s, bot = bot_flat ? y0 : -s;
    if (top <= bot) continue;
    const double chord = half_chord_integral(w, r) - half_chord_integral(u, r);
    const double top_int = top_flat ? y1 * (w - u) : chord;
    const double bot_int = bot_flat ? y0 * (w - u) : -chord;
    total += top_int - bot_int;
  }
  return total;
}

void CellSet::cell_of(std::size_t flat, std::int64_t* c) const {
  const auto e = static_cast<std::size_t>(extent());
  for (int j = dim - 1; j >= 0; --j) {
    c[j] = static_cast<std::int64_t>(flat % e) - pad;
    flat /= e;
  }
}

std::size_t CellSet::flat_of(const std::int64_t* c) const {
  const auto e = static_cast<std::size_t>(extent());
  std::size_t flat = 0;
  for (int j = 0; j < dim; ++j) flat = flat * e + static_cast<std::size_t>(c[j] + pad);
  return flat;
}

bool CellSet::contains(const std::int64_t* c) const {
  for (int j = 0; j < dim; ++j)
    if (c[j] < -pad || c[j] >= (std::int64_t{1} << level) + pad) return closed;
  return members[flat_of(c)] != 0;
}

double CellSet::measure() const {
  std::size_t n = 0;
  for (auto m : members) n += m;
  return std::ldexp(static_cast<double>(n), -level * dim);
}

CellSet CellSet::complement() const {
  CellSet out = *this;
  out.closed = !closed;
  for (auto& m : out.members) m = m ? 0 : 1;
  return out;
}

std::vector<double> cell_means_abs(const GridFunction& f) {
  const Grid& grid = f.grid();
  const int d = grid.dim();
  const auto n = static_cast<std::size_t>(grid.cells_per_axis());
  std::vector<double> a(ipow(n, d), 0.0);
  const double scale = std::ldexp(1.0, grid.level() * d);
  std::vector<int> g(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    grid.unflatten(flat, g.data());
    std::size_t cell = 0;
    for (int j = 0; j < d; ++j) cell = cell * n + static_cast<std::size_t>(g[static_cast<std::size_t>(j)] / grid.nodes_per_cell(j));
    a[cell] += grid.weight(flat) * std::abs(f[flat]) * scale;
  }
  return a;
}

MaximalField maximal_field(const GridFunction& f, int pad, Exec exec) {
  const Grid& grid = f.grid();
  const int d = grid.dim();
  if (d > 2) throw Unsupported("maximal function is implemented for d <= 2");
  if (pad < 0) throw InvalidArgument("padding must be non-negative");
  const int n = grid.cells_per_axis();
  const int e = n + 2 * pad;
  const auto a = cell_means_abs(f);
  double total = 0;
  for (double v : a) total += v;

  std::vector<double> prefix;
  if (d == 1) {
    prefix.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (int c = 0; c < n; ++c) prefix[static_cast<std::size_t>(c) + 1] = prefix[static_cast<std::size_t>(c)] + a[static_cast<std::size_t>(c)];
  } else {
    const auto np1 = static_cast<std::size_t>(n) + 1;
    prefix.assign(static_cast<std::size_t>(n) * np1, 0.0);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < n; ++c)
        prefix[static_cast<std::size_t>(i) * np1 + static_cast<std::size_t>(c) + 1] =
            prefix[static_cast<std::size_t>(i) * np1 + static_cast<std::size_t>(c)] +
            a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)];
  }

  const CellNodes local = cell_nodes(grid);
  const std::size_t cells = ipow(static_cast<std::size_t>(e), d);
  MaximalField out;
  out.grid = grid;
  out.pad = pad;
  out.values.assign(cells * local.count, 0.0);

  auto one_cell = [&](std::size_t cell) {
    std::int64_t c[2] = {0, 0};
    std::size_t rest = cell;
    for (int j = d - 1; j >= 0; --j) {
      c[j] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(e)) - pad;
      rest /= static_cast<std::size_t>(e);
    }
    bool inside = true;
    for (int j = 0; j < d; ++j) inside = inside && c[j] >= 0 && c[j] < n;
    for (std::size_t t = 0; t < local.count; ++t) {
      double x[2] = {0, 0};
      for (int j = 0; j < d; ++j)
        x[j] = static_cast<double>(c[j]) + local.offsets[t * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
      double v = d == 1 ? ball_sup_1d(prefix, total, x[0]) : ball_sup_2d(a, prefix, n, total, x[0], x[1]);
      if (inside) {
        int g[2] = {0, 0};
        for (int j = 0; j < d; ++j)
          g[j] = static_cast<int>(c[j]) * grid.nodes_per_cell(j) + local.multi[t * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
        v = std::max(v, std::abs(f[grid.flatten(g)]));
      }
      out.values[cell * local.count + t] = v;
    }
  };

  const auto count = static_cast<std::int64_t>(cells);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t cell = 0; cell < count; ++cell) one_cell(static_cast<std::size_t>(cell));
  } else {
    for (std::int64_t cell = 0; cell < count; ++cell) one_cell(static_cast<std::size_t>(cell));
  }
  return out;
}

GridFunction maximal_function(const GridFunction& f, Exec exec) {
  const Grid& grid = f.grid();
  const auto field = maximal_field(f, 0, exec);
  const CellNodes local = cell_nodes(grid);
  const int d = grid.dim();
  const auto n = static_cast<std::size_t>(grid.cells_per_axis());
  GridFunction out(grid);
  std::vector<int> g(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    grid.unflatten(flat, g.data());
    std::size_t cell = 0, t = 0;
    for (int j = 0; j < d; ++j) {
      const int m = grid.nodes_per_cell(j);
      cell = cell * n + static_cast<std::size_t>(g[static_cast<std::size_t>(j)] / m);
      t = t * static_cast<std::size_t>(m) + static_cast<std::size_t>(g[static_cast<std::size_t>(j)] % m);
    }
    out[flat] = field.values[cell * local.count + t];
  }
  return out;
}

int exterior_padding(const GridFunction& f, double alpha) {
  if (!(alpha > 0)) throw InvalidArgument("alpha must be positive");
  const int d = f.grid().dim();
  if (d > 2) throw Unsupported("maximal function is implemented for d <= 2");
  const double l1 = lp_norm(f, 1.0);
  const double dist = d == 1 ? l1 / (2 * alpha) : std::sqrt(l1 / (std::numbers::pi * alpha));
  const double cells = std::ceil(dist * f.grid().cells_per_axis()) + 1;
  return static_cast<int>(std::min(cells, static_cast<double>(std::numeric_limits<int>::max() / 4)));
}

CellSet level_set(const GridFunction& f, double alpha, bool* truncated) {
  const Grid& grid = f.grid();
  int pad = exterior_padding(f, alpha);
  const int cap = 4 * grid.cells_per_axis();
  const bool capped = pad > cap;
  if (capped) pad = cap;
  if (truncated) *truncated = capped;
  const auto field = maximal_field(f, pad);
  const CellNodes local = cell_nodes(grid);
  CellSet F;
  F.dim = grid.dim();
  F.level = grid.level();
  F.pad = pad;
  F.closed = true;
  F.members.assign(ipow(static_cast<std::size_t>(F.extent()), F.dim), 1);
  for (std::size_t cell = 0; cell < F.members.size(); ++cell)
    for (std::size_t t = 0; t < local.count; ++t)
      if (field.values[cell * local.count + t] > alpha) {
        F.members[cell] = 0;
        break;
      }
  return F;
}

WhitneyDecomposition whitney(const CellSet& F) {
  if (!F.closed) throw InvalidArgument("whitney expects the closed set F");
  const int d = F.dim;
  const int K = F.level;
  const std::int64_t lo = -F.pad, hi = (std::int64_t{1} << K) + F.pad;
  const std::size_t cells = F.cell_count();

  // Cells of F that touch W; the nearest point of F lies in one of them or
  // beyond the box.
  std::vector<std::int64_t> frontier;  // flattened cell coordinates
  std::vector<std::int64_t> c(static_cast<std::size_t>(d)), nb(static_cast<std::size_t>(d));
  const std::size_t neigh = ipow(3, d);
  for (std::size_t flat = 0; flat < cells; ++flat) {
    if (!F.members[flat]) continue;
    F.cell_of(flat, c.data());
    bool touches = false;
    for (std::size_t m = 0; m < neigh && !touches; ++m) {
      std::size_t rest = m;
      for (int j = 0; j < d; ++j) {
        nb[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)] + static_cast<std::int64_t>(rest % 3) - 1;
        rest /= 3;
      }
      touches = !F.contains(nb.data());
    }
    if (touches) frontier.insert(frontier.end(), c.begin(), c.end());
  }
  const std::size_t nf = frontier.size() / static_cast<std::size_t>(d);

  // Squared gap distance (units 2^-K) from every W cell to F; -1 marks F.
  std::vector<std::int64_t> dist2(cells, -1);
  WhitneyDecomposition out;
  out.dim = d;
  out.level = K;
  bool any_w = false;
  for (std::size_t flat = 0; flat < cells; ++flat) {
    if (F.members[flat]) continue;
    any_w = true;
    F.cell_of(flat, c.data());
    std::int64_t ext = std::numeric_limits<std::int64_t>::max();
    for (int j = 0; j < d; ++j)
      ext = std::min({ext, c[static_cast<std::size_t>(j)] - lo, hi - 1 - c[static_cast<std::size_t>(j)]});
    std::int64_t best = ext * ext;
    for (std::size_t q = 0; q < nf && best > 0; ++q) {
      std::int64_t s = 0;
      for (int j = 0; j < d; ++j) {
        const std::int64_t gap = std::max<std::int64_t>(
            0, std::abs(c[static_cast<std::size_t>(j)] - frontier[q * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)]) - 1);
        s += gap * gap;
      }
      best = std::min(best, s);
    }
    dist2[flat] = best;
    if (best == 0) ++out.boundary_cells;
  }
  if (!any_w) return out;

  // Cubes of side s = 2^(K-k) cells lying fully inside the box, with their
  // distance to F (or -1 when they meet F).
  auto cube_scan = [&](int k, auto&& visit) {
    const std::int64_t s = std::int64_t{1} << (K - k);
    const std::int64_t q0 = -floor_div(F.pad, s);  // ceil(lo / s)
    const std::int64_t q1 = floor_div(hi, s) - 1;
    if (q0 > q1) return;
    const std::int64_t per = q1 - q0 + 1;
    const std::size_t total = ipow(static_cast<std::size_t>(per), d);
    std::vector<std::int64_t> q(static_cast<std::size_t>(d)), cc(static_cast<std::size_t>(d));
    const std::size_t inner = ipow(static_cast<std::size_t>(s), d);
    for (std::size_t m = 0; m < total; ++m) {
      std::size_t rest = m;
      for (int j = d - 1; j >= 0; --j) {
        q[static_cast<std::size_t>(j)] = q0 + static_cast<std::int64_t>(rest % static_cast<std::size_t>(per));
        rest /= static_cast<std::size_t>(per);
      }
      std::int64_t dq = std::numeric_limits<std::int64_t>::max();
      for (std::size_t t = 0; t < inner && dq >= 0; ++t) {
        std::size_t r2 = t;
        for (int j = d - 1; j >= 0; --j) {
          cc[static_cast<std::size_t>(j)] = q[static_cast<std::size_t>(j)] * s + static_cast<std::int64_t>(r2 % static_cast<std::size_t>(s));
          r2 /= static_cast<std::size_t>(s);
        }
        dq = std::min(dq, dist2[F.flat_of(cc.data())]);
      }
      visit(q, dq, s);
    }
  };
  auto qualifies = [d](std::int64_t dq, std::int64_t s) { return dq >= 0 && dq > static_cast<std::int64_t>(d) * s * s; };

  int k0 = -1;
  for (int k = 0; k <= K && k0 < 0; ++k) {
    bool found = false;
    cube_scan(k, [&](const std::vector<std::int64_t>&, std::int64_t dq, std::int64_t s) { found = found || qualifies(dq, s); });
    if (found) k0 = k;
  }
  if (k0 < 0) k0 = K;
  out.base_level = k0;
  if (k0 == 0) {
    // would a cube of side 2 qualify as well?
    cube_scan(-1, [&](const std::vector<std::int64_t>&, std::int64_t dq, std::int64_t s) {
      out.base_clamped = out.base_clamped || qualifies(dq, s);
    });
  }

  std::vector<std::uint8_t> covered(cells, 0);
  for (int k = k0; k <= K; ++k) {
    cube_scan(k, [&](const std::vector<std::int64_t>& q, std::int64_t dq, std::int64_t s) {
      if (!qualifies(dq, s)) return;
      std::vector<std::int64_t> cc(static_cast<std::size_t>(d));
      const std::size_t inner = ipow(static_cast<std::size_t>(s), d);
      std::vector<std::size_t> flats(inner);
      for (std::size_t t = 0; t < inner; ++t) {
        std::size_t r2 = t;
        for (int j = d - 1; j >= 0; --j) {
          cc[static_cast<std::size_t>(j)] = q[static_cast<std::size_t>(j)] * s + static_cast<std::int64_t>(r2 % static_cast<std::size_t>(s));
          r2 /= static_cast<std::size_t>(s);
        }
        flats[t] = F.flat_of(cc.data());
        if (covered[flats[t]]) return;
      }
      for (auto fl : flats) covered[fl] = 1;
      out.cubes.push_back({DyadicCube{MultiIndex::filled(d, k), q}, dq});
    });
  }

  std::size_t residual = 0;
  for (std::size_t flat = 0; flat < cells; ++flat)
    if (!F.members[flat] && !covered[flat]) ++residual;
  out.residual_measure = std::ldexp(static_cast<double>(residual), -K * d);
  return out;
}

double cube_diameter(const WhitneyCube& q, int dim) {
  return std::sqrt(static_cast<double>(dim)) * std::ldexp(1.0, -q.cube.level[0]);
}

double cube_distance(const WhitneyCube& q, int K) { return std::sqrt(static_cast<double>(q.dist2)) * std::ldexp(1.0, -K); }

double BadBlock::integral(const Grid& grid) const {
  double s = 0;
  for (std::size_t t = 0; t < nodes.size(); ++t) s += grid.weight(nodes[t]) * values[t];
  return s;
}

GridFunction CZSplit::reassemble() const {
  GridFunction out = good;
  for (const auto& b : bad)
    for (std::size_t t = 0; t < b.nodes.size(); ++t) out[b.nodes[t]] += b.values[t];
  return out;
}

CZResult cz_split(const GridFunction& f, double alpha) {
  if (!(alpha > 0)) throw InvalidArgument("alpha must be positive");
  CZResult res;
  res.closed_set = level_set(f, alpha, &res.padding_truncated);
  res.whitney = whitney(res.closed_set);
  const Grid& grid = f.grid();
  const int d = grid.dim();
  const int K = grid.level();
  res.split.good = f;
  std::vector<int> g(static_cast<std::size_t>(d)), lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  for (const auto& w : res.whitney.cubes) {
    if (!w.cube.inside_unit_cube()) continue;
    BadBlock b;
    b.cube = w.cube;
    std::size_t count = 1;
    for (int j = 0; j < d; ++j) {
      const int m = grid.nodes_per_cell(j);
      lo[static_cast<std::size_t>(j)] = static_cast<int>(w.cube.lo(j, K)) * m;
      hi[static_cast<std::size_t>(j)] = static_cast<int>(w.cube.hi(j, K)) * m;
      count *= static_cast<std::size_t>(hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)]);
    }
    b.nodes.reserve(count);
    double mass = 0;
    for (std::size_t t = 0; t < count; ++t) {
      std::size_t rest = t;
      for (int j = d - 1; j >= 0; --j) {
        const auto span = static_cast<std::size_t>(hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)]);
        g[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)] + static_cast<int>(rest % span);
        rest /= span;
      }
      const std::size_t flat = grid.flatten(g.data());
      b.nodes.push_back(flat);
      mass += grid.weight(flat) * f[flat];
    }
    b.average = mass / std::ldexp(1.0, -w.cube.level[0] * d);
    b.values.reserve(count);
    for (auto flat : b.nodes) {
      b.values.push_back(f[flat] - b.average);
      res.split.good[flat] = b.average;
    }
    res.split.bad.push_back(std::move(b));
  }
  return res;
}

void write_cubes(std::ostream& os, const WhitneyDecomposition& w) {
  for (const auto& q : w.cubes) {
    os << q.cube.level[0];
    for (auto p : q.cube.position) os << ' ' << p;
    os << '\n';
  }
}

}  // namespace mra
