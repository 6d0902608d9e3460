#include "mra/kernels.hpp"

#include <algorithm>
#include <atomic>

#include "mra/error.hpp"

namespace mra {

namespace {

std::atomic<Exec> g_default_exec{Exec::parallel};

constexpr std::size_t kReduceChunk = 4096;

std::vector<std::vector<double>> axis_weights(const Grid& grid) {
  std::vector<std::vector<double>> w(static_cast<std::size_t>(grid.dim()));
  for (int j = 0; j < grid.dim(); ++j) {
    auto& wj = w[static_cast<std::size_t>(j)];
    wj.resize(static_cast<std::size_t>(grid.samples_per_axis(j)));
    for (int g = 0; g < grid.samples_per_axis(j); ++g) wj[static_cast<std::size_t>(g)] = grid.weight(j, g);
  }
  return w;
}

// Outer product of per-axis table rows at one node, scaled by s.
// buf must hold function_count entries.
inline void node_products(const std::vector<AxisTable>& tables, const int* g, double s, double* buf) {
  std::size_t len = 1;
  buf[0] = s;
  for (std::size_t j = 0; j < tables.size(); ++j) {
    const auto& t = tables[j];
    const auto fj = static_cast<std::size_t>(t.functions);
    const double* row = t.values.data() + static_cast<std::size_t>(g[j]) * fj;
    // expand in place from the back so earlier entries are not overwritten
    for (std::size_t a = len; a-- > 0;) {
      const double v = buf[a];
      for (std::size_t b = fj; b-- > 0;) buf[a * fj + b] = v * row[b];
    }
    len *= fj;
  }
}

}  // namespace

Exec default_exec() { return g_default_exec.load(); }
void set_default_exec(Exec e) { g_default_exec.store(e); }

CellLayout::CellLayout(const Grid& grid, const std::vector<AxisTable>& tables) : grid_(&grid) {
  const int d = grid.dim();
  if (static_cast<int>(tables.size()) != d) throw InvalidArgument("one axis table per dimension required");
  std::size_t local = 1;
  for (int j = 0; j < d; ++j) {
    const auto& t = tables[static_cast<std::size_t>(j)];
    if (t.cells * t.samples_per_cell != grid.samples_per_axis(j))
      throw InvalidArgument("axis table does not tile the grid axis");
    if (t.values.size() != static_cast<std::size_t>(grid.samples_per_axis(j)) * static_cast<std::size_t>(t.functions))
      throw InvalidArgument("axis table has the wrong number of values");
    cells_.push_back(t.cells);
    functions_.push_back(t.functions);
    samples_per_cell_.push_back(t.samples_per_cell);
    cell_count_ *= static_cast<std::size_t>(t.cells);
    function_count_ *= static_cast<std::size_t>(t.functions);
    local *= static_cast<std::size_t>(t.samples_per_cell);
  }
  local_offsets_.resize(local);
  local_multi_.resize(local * static_cast<std::size_t>(d));
  std::vector<int> m(static_cast<std::size_t>(d), 0);
  for (std::size_t t = 0; t < local; ++t) {
    std::size_t off = 0;
    for (int j = 0; j < d; ++j) {
      off += static_cast<std::size_t>(m[static_cast<std::size_t>(j)]) * grid.stride(j);
      local_multi_[t * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(j)];
    }
    local_offsets_[t] = off;
    for (int j = d - 1; j >= 0; --j) {
      if (++m[static_cast<std::size_t>(j)] < samples_per_cell_[static_cast<std::size_t>(j)]) break;
      m[static_cast<std::size_t>(j)] = 0;
    }
  }
}

std::size_t CellLayout::cell_base(std::size_t cell, int* cell_multi) const {
  const int d = grid_->dim();
  std::size_t base = 0;
  for (int j = d - 1; j >= 0; --j) {
    const auto cj = static_cast<std::size_t>(cells_[static_cast<std::size_t>(j)]);
    cell_multi[j] = static_cast<int>(cell % cj);
    cell /= cj;
  }
  for (int j = 0; j < d; ++j)
    base += static_cast<std::size_t>(cell_multi[j]) * static_cast<std::size_t>(samples_per_cell_[static_cast<std::size_t>(j)]) *
            grid_->stride(j);
  return base;
}

std::vector<double> cell_inner_products(const GridFunction& f, const std::vector<AxisTable>& tables, Exec exec) {
  const Grid& grid = f.grid();
  const CellLayout layout(grid, tables);
  const int d = grid.dim();
  const auto F = layout.function_count();
  const auto weights = axis_weights(grid);
  std::vector<double> coeffs(layout.cell_count() * F, 0.0);
  const auto vals = f.values();
  const auto ncell = static_cast<std::ptrdiff_t>(layout.cell_count());

#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<int> c(static_cast<std::size_t>(d)), g(static_cast<std::size_t>(d));
    std::vector<double> buf(F);
#pragma omp for schedule(static)
    for (std::ptrdiff_t cell = 0; cell < ncell; ++cell) {
      const std::size_t base = layout.cell_base(static_cast<std::size_t>(cell), c.data());
      double* out = coeffs.data() + static_cast<std::size_t>(cell) * F;
      for (std::size_t t = 0; t < layout.nodes_per_cell(); ++t) {
        double w = vals[base + layout.local_offsets()[t]];
        for (int j = 0; j < d; ++j) {
          const auto sj = static_cast<std::size_t>(j);
          g[sj] = c[sj] * tables[sj].samples_per_cell + layout.local_multi()[t * static_cast<std::size_t>(d) + sj];
          w *= weights[sj][static_cast<std::size_t>(g[sj])];
        }
        node_products(tables, g.data(), w, buf.data());
        for (std::size_t i = 0; i < F; ++i) out[i] += buf[i];
      }
    }
  }
  return coeffs;
}

void cell_expand(std::span<const double> coeffs, const std::vector<AxisTable>& tables, GridFunction& out, bool accumulate,
                 Exec exec) {
  const Grid& grid = out.grid();
  const CellLayout layout(grid, tables);
  const int d = grid.dim();
  const auto F = layout.function_count();
  if (coeffs.size() != layout.cell_count() * F) throw InvalidArgument("coefficient count does not match cell layout");
  auto vals = out.values();
  const auto ncell = static_cast<std::ptrdiff_t>(layout.cell_count());

#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<int> c(static_cast<std::size_t>(d)), g(static_cast<std::size_t>(d));
    std::vector<double> buf(F);
#pragma omp for schedule(static)
    for (std::ptrdiff_t cell = 0; cell < ncell; ++cell) {
      const std::size_t base = layout.cell_base(static_cast<std::size_t>(cell), c.data());
      const double* in = coeffs.data() + static_cast<std::size_t>(cell) * F;
      for (std::size_t t = 0; t < layout.nodes_per_cell(); ++t) {
        for (int j = 0; j < d; ++j) {
          const auto sj = static_cast<std::size_t>(j);
          g[sj] = c[sj] * tables[sj].samples_per_cell + layout.local_multi()[t * static_cast<std::size_t>(d) + sj];
        }
        node_products(tables, g.data(), 1.0, buf.data());
        double s = 0.0;
        for (std::size_t i = 0; i < F; ++i) s += in[i] * buf[i];
        double& v = vals[base + layout.local_offsets()[t]];
        v = accumulate ? v + s : s;
      }
    }
  }
}

double weighted_reduce(const GridFunction& f, const std::function<double(double)>& phi, Exec exec) {
  const Grid& grid = f.grid();
  const auto weights = axis_weights(grid);
  const int d = grid.dim();
  const auto vals = f.values();
  const std::size_t n = vals.size();
  const std::size_t nchunk = (n + kReduceChunk - 1) / kReduceChunk;
  std::vector<double> partial(nchunk, 0.0);
  const auto nc = static_cast<std::ptrdiff_t>(nchunk);

#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<int> g(static_cast<std::size_t>(d));
#pragma omp for schedule(static)
    for (std::ptrdiff_t c = 0; c < nc; ++c) {
      const std::size_t lo = static_cast<std::size_t>(c) * kReduceChunk;
      const std::size_t hi = std::min(n, lo + kReduceChunk);
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) {
        grid.unflatten(i, g.data());
        double w = 1.0;
        for (int j = 0; j < d; ++j) w *= weights[static_cast<std::size_t>(j)][static_cast<std::size_t>(g[static_cast<std::size_t>(j)])];
        s += w * phi(vals[i]);
      }
      partial[static_cast<std::size_t>(c)] = s;
    }
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

GridFunction apply_lines(const LineOperator& op, int axis, const GridFunction& f, Exec exec) {
  const Grid& grid = f.grid();
  if (axis < 0 || axis >= grid.dim()) throw InvalidArgument("axis out of range");
  const auto len = static_cast<std::size_t>(grid.samples_per_axis(axis));
  const std::size_t stride = grid.stride(axis);
  const std::size_t lines = grid.size() / len;
  GridFunction out(grid);
  const auto in_vals = f.values();
  auto out_vals = out.values();
  const auto nl = static_cast<std::ptrdiff_t>(lines);

#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<double> a(len), b(len);
#pragma omp for schedule(static)
    for (std::ptrdiff_t li = 0; li < nl; ++li) {
      // line li enumerates all index combinations of the other axes
      const auto l = static_cast<std::size_t>(li);
      const std::size_t outer = l / stride;
      const std::size_t inner = l % stride;
      const std::size_t base = outer * stride * len + inner;
      for (std::size_t k = 0; k < len; ++k) a[k] = in_vals[base + k * stride];
      op(a, b);
      for (std::size_t k = 0; k < len; ++k) out_vals[base + k * stride] = b[k];
    }
  }
  return out;
}

}  // namespace mra
