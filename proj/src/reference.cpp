#include "mra/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mra/calderon_zygmund.hpp"
#include "mra/dyadic.hpp"
#include "mra/error.hpp"
#include "mra/local_projection.hpp"

namespace mra::reference {

PiecewisePoly project_level(const GridFunction& f, const MultiIndex& kappa, const DegreeVector& l) {
  const int d = f.grid().dim();
  PiecewisePoly out{kappa, l, {}};
  DyadicCube cube{kappa, std::vector<std::int64_t>(static_cast<std::size_t>(d), 0)};
  for (std::size_t flat = 0; flat < out.cell_count(); ++flat) {
    std::size_t rest = flat;
    for (int j = d - 1; j >= 0; --j) {
      const auto n = std::size_t{1} << kappa[static_cast<std::size_t>(j)];
      cube.position[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(rest % n);
      rest /= n;
    }
    const auto local = local_project(f, cube, l);
    out.coeffs.insert(out.coeffs.end(), local.coeffs.begin(), local.coeffs.end());
  }
  return out;
}

double lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("p must satisfy 1 <= p < inf");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.grid().weight(i) * std::pow(std::abs(f[i]), p);
  return std::pow(s, 1.0 / p);
}

GridFunction maximal_function(const GridFunction& f, int step, int sub) {
  const Grid& grid = f.grid();
  const int d = grid.dim();
  if (d > 2) throw Unsupported("maximal function is implemented for d <= 2");
  const int n = grid.cells_per_axis();
  const auto a = cell_means_abs(f);
  const int radii = static_cast<int>(std::ceil(n * step * std::sqrt(2.0))) + 1;
  GridFunction out(grid);
  std::vector<int> g(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    grid.unflatten(flat, g.data());
    double x[2] = {0, 0};
    for (int j = 0; j < d; ++j) x[j] = grid.coordinate(j, g[static_cast<std::size_t>(j)]) * n;
    // r -> 0 limit: the mean over the cell of the node
    std::size_t cell = 0;
    for (int j = 0; j < d; ++j)
      cell = cell * static_cast<std::size_t>(n) + static_cast<std::size_t>(g[static_cast<std::size_t>(j)] / grid.nodes_per_cell(j));
    double best = std::max(std::abs(f[flat]), a[cell]);
    for (int m = 1; m <= radii; ++m) {
      const double r = static_cast<double>(m) / step;
      double mass = 0;
      if (d == 1) {
        for (int c = 0; c < n; ++c) {
          const double len = std::min<double>(c + 1, x[0] + r) - std::max<double>(c, x[0] - r);
          if (len > 0) mass += a[static_cast<std::size_t>(c)] * len;
        }
        best = std::max(best, mass / (2 * r));
      } else {
        for (int i = 0; i < n; ++i)
          for (int c = 0; c < n; ++c) {
            const double v = a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)];
            if (v == 0) continue;
            int hits = 0;
            for (int s = 0; s < sub; ++s)
              for (int t = 0; t < sub; ++t) {
                const double px = i + (s + 0.5) / sub - x[0], py = c + (t + 0.5) / sub - x[1];
                if (px * px + py * py < r * r) ++hits;
              }
            mass += v * hits / (static_cast<double>(sub) * sub);
          }
        best = std::max(best, mass / (std::numbers::pi * r * r));
      }
    }
    out[flat] = best;
  }
  return out;
}

namespace {

// In place: root first, then the details of levels 1..K in order.
void pyramid_line(std::vector<double>& c) {
  std::vector<double> work(c), out(c.size());
  std::size_t n = c.size();
  while (n > 1) {
    const std::size_t h = n / 2;
    for (std::size_t i = 0; i < h; ++i) {
      out[h + i] = (work[2 * i + 1] - work[2 * i]) / std::numbers::sqrt2;
      work[i] = (work[2 * i] + work[2 * i + 1]) / std::numbers::sqrt2;
    }
    n = h;
  }
  out[0] = work[0];
  c = out;
}

}  // namespace

std::map<MultiIndex, std::vector<double>> haar_pyramid(const GridFunction& f) {
  const int d = f.grid().dim();
  const int K = f.grid().level();
  const auto n = std::size_t{1} << K;
  auto c = reference::project_level(f, MultiIndex::filled(d, K), DegreeVector::zeros(d)).coeffs;
  // stride of axis j in the row-major cell array
  std::vector<std::size_t> stride(static_cast<std::size_t>(d), 1);
  for (int j = d - 2; j >= 0; --j) stride[static_cast<std::size_t>(j)] = stride[static_cast<std::size_t>(j) + 1] * n;
  std::vector<double> line(n);
  for (int j = 0; j < d; ++j) {
    const std::size_t s = stride[static_cast<std::size_t>(j)];
    for (std::size_t base = 0; base < c.size(); ++base) {
      if ((base / s) % n != 0) continue;
      for (std::size_t i = 0; i < n; ++i) line[i] = c[base + i * s];
      pyramid_line(line);
      for (std::size_t i = 0; i < n; ++i) c[base + i * s] = line[i];
    }
  }
  std::map<MultiIndex, std::vector<double>> out;
  for (const auto& kappa : enum_box(MultiIndex::filled(d, K))) {
    std::vector<std::size_t> cells(static_cast<std::size_t>(d)), offset(static_cast<std::size_t>(d));
    std::size_t total = 1;
    for (int j = 0; j < d; ++j) {
      const int k = kappa[static_cast<std::size_t>(j)];
      cells[static_cast<std::size_t>(j)] = k == 0 ? 1 : std::size_t{1} << (k - 1);
      offset[static_cast<std::size_t>(j)] = k == 0 ? 0 : std::size_t{1} << (k - 1);
      total *= cells[static_cast<std::size_t>(j)];
    }
    std::vector<double> block(total);
    for (std::size_t rho = 0; rho < total; ++rho) {
      std::size_t rest = rho, at = 0;
      for (int j = d - 1; j >= 0; --j) {
        const auto uj = static_cast<std::size_t>(j);
        at += (offset[uj] + rest % cells[uj]) * stride[uj];
        rest /= cells[uj];
      }
      block[rho] = c[at];
    }
    out.emplace(kappa, std::move(block));
  }
  return out;
}

}  // namespace mra::reference
