#include "mra/dyadic.hpp"

#include <algorithm>
#include <cmath>

#include "mra/error.hpp"

namespace mra {

namespace {

constexpr double kTieTol = 1e-12;

bool close(double a, double b) { return std::abs(a - b) <= kTieTol * std::max({1.0, std::abs(a), std::abs(b)}); }

void check_beta(const std::vector<double>& beta) {
  if (beta.empty()) throw InvalidArgument("beta must be non-empty");
  for (double b : beta)
    if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("beta entries must be positive and finite");
}

}  // namespace

bool DyadicCube::inside_unit_cube() const {
  for (int j = 0; j < dim(); ++j) {
    const auto p = position[static_cast<std::size_t>(j)];
    if (p < 0 || p >= (std::int64_t{1} << level[static_cast<std::size_t>(j)])) return false;
  }
  return true;
}

std::int64_t DyadicCube::lo(int axis, int scale) const {
  const auto j = static_cast<std::size_t>(axis);
  return position[j] * (std::int64_t{1} << (scale - level[j]));
}

std::int64_t DyadicCube::hi(int axis, int scale) const {
  const auto j = static_cast<std::size_t>(axis);
  return (position[j] + 1) * (std::int64_t{1} << (scale - level[j]));
}

Nesting nesting(const DyadicCube& a, const DyadicCube& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("cubes of different dimension");
  const int d = a.dim();
  const int scale = std::max(a.level.max(), b.level.max());
  bool a_in_b = true, b_in_a = true;
  for (int j = 0; j < d; ++j) {
    const auto alo = a.lo(j, scale), ahi = a.hi(j, scale);
    const auto blo = b.lo(j, scale), bhi = b.hi(j, scale);
    if (!(alo < bhi && blo < ahi)) return Nesting::disjoint;
    a_in_b = a_in_b && blo <= alo && ahi <= bhi;
    b_in_a = b_in_a && alo <= blo && bhi <= ahi;
  }
  if (a_in_b && b_in_a) return Nesting::equal;
  if (a_in_b) return Nesting::a_inside_b;
  if (b_in_a) return Nesting::b_inside_a;
  return Nesting::overlap;
}

std::vector<MultiIndex> enum_box(const MultiIndex& k) {
  const int d = k.dim();
  for (int x : k)
    if (x < 0) throw InvalidArgument("box bound must be non-negative");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(d), 0);
  if (d == 0) return out;
  while (true) {
    out.emplace_back(cur);
    int j = d - 1;
    for (; j >= 0; --j) {
      if (++cur[static_cast<std::size_t>(j)] <= k[static_cast<std::size_t>(j)]) break;
      cur[static_cast<std::size_t>(j)] = 0;
    }
    if (j < 0) break;
  }
  return out;
}

double dot(const MultiIndex& kappa, const std::vector<double>& beta) {
  double s = 0.0;
  for (int j = 0; j < kappa.dim(); ++j) s += kappa[static_cast<std::size_t>(j)] * beta[static_cast<std::size_t>(j)];
  return s;
}

bool within_cross(const MultiIndex& kappa, const std::vector<double>& beta, double r) {
  return dot(kappa, beta) <= r + kTieTol * std::max(1.0, std::abs(r));
}

std::vector<MultiIndex> enum_cross(const CrossParams& params) {
  check_beta(params.beta);
  if (params.radius < 0) throw InvalidArgument("cross radius must be non-negative");
  const auto d = static_cast<int>(params.beta.size());
  MultiIndex box = MultiIndex::zeros(d);
  for (int j = 0; j < d; ++j) {
    const double r = params.radius;
    box[static_cast<std::size_t>(j)] =
        static_cast<int>(std::floor(r / params.beta[static_cast<std::size_t>(j)] * (1.0 + kTieTol) + kTieTol));
  }
  std::vector<MultiIndex> out;
  for (auto& k : enum_box(box))
    if (within_cross(k, params.beta, params.radius)) out.push_back(std::move(k));
  return out;
}

std::vector<MultiIndex> enum_shell(const std::vector<double>& beta, int s) {
  if (s < 1) throw InvalidArgument("shell index must be >= 1");
  std::vector<MultiIndex> out;
  for (auto& k : enum_cross({beta, s}))
    if (!within_cross(k, beta, s - 1)) out.push_back(std::move(k));
  return out;
}

Extremum max_with_multiplicity(const std::vector<double>& x) {
  double m = *std::max_element(x.begin(), x.end());
  int c = 0;
  for (double v : x) c += close(v, m) ? 1 : 0;
  return {m, c};
}

Extremum min_with_multiplicity(const std::vector<double>& x) {
  double m = *std::min_element(x.begin(), x.end());
  int c = 0;
  for (double v : x) c += close(v, m) ? 1 : 0;
  return {m, c};
}

std::vector<CountingRow> counting_ratios(const std::vector<double>& beta, const std::vector<double>& alpha, int r_max) {
  check_beta(beta);
  if (alpha.size() != beta.size()) throw InvalidArgument("alpha and beta must have equal length");
  for (double a : alpha)
    if (!(a > 0.0)) throw InvalidArgument("counting tail bound requires alpha > 0");
  if (r_max < 1) throw InvalidArgument("r_max must be >= 1");
  const auto d = static_cast<int>(beta.size());
  std::vector<double> ratio(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) ratio[static_cast<std::size_t>(j)] = alpha[static_cast<std::size_t>(j)] / beta[static_cast<std::size_t>(j)];
  const auto M = max_with_multiplicity(ratio);
  const auto m = min_with_multiplicity(ratio);

  // Terms with kappa_j > r/beta_j + 64/alpha_j are below 2^-64 times the
  // smallest retained tail term.
  std::vector<CountingRow> rows;
  for (int r = 1; r <= r_max; ++r) {
    MultiIndex box = MultiIndex::zeros(d);
    for (int j = 0; j < d; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      box[sj] = static_cast<int>(std::ceil(r / beta[sj] + 64.0 / alpha[sj]));
    }
    CountingRow row;
    row.r = r;
    for (const auto& k : enum_box(box)) {
      const double e = dot(k, alpha);
      if (within_cross(k, beta, r))
        row.head_sum += std::exp2(e);
      else
        row.tail_sum += std::exp2(-e);
    }
    row.head_model = std::exp2(M.value * r) * std::pow(static_cast<double>(r), M.multiplicity - 1);
    row.tail_model = std::exp2(-m.value * r) * std::pow(static_cast<double>(r), m.multiplicity - 1);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mra
