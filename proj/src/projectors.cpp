#include "mra/projectors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "mra/basis.hpp"
#include "mra/error.hpp"
#include "mra/quadrature.hpp"

namespace mra {

namespace {

void check_level(const Grid& grid, const MultiIndex& kappa, const DegreeVector& l) {
  if (kappa.dim() != grid.dim() || l.dim() != grid.dim()) throw InvalidArgument("level, degree and grid dimensions differ");
  for (int k : kappa)
    if (k < 0) throw InvalidArgument("levels must be non-negative");
  if (kappa.max() > grid.level())
    throw ResolutionError("level " + kappa.str() + " exceeds grid level " + std::to_string(grid.level()));
  if (!grid.exact_for_degree(l)) throw InvalidArgument("grid quadrature is not exact for degree 2l");
}

std::vector<AxisTable> level_tables(const Grid& grid, const MultiIndex& kappa, const DegreeVector& l) {
  std::vector<AxisTable> t;
  for (int j = 0; j < grid.dim(); ++j)
    t.push_back(legendre_table(grid, j, kappa[static_cast<std::size_t>(j)], l[static_cast<std::size_t>(j)]));
  return t;
}

std::vector<AxisTable> detail_tables(const Grid& grid, const MultiIndex& kappa, const DegreeVector& l) {
  std::vector<AxisTable> t;
  for (int j = 0; j < grid.dim(); ++j) {
    const auto sj = static_cast<std::size_t>(j);
    t.push_back(detail_table(grid, j, kappa[sj], wavelet_basis_1d(l[sj])));
  }
  return t;
}

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw InvalidArgument("malformed number '" + s + "'");
  return v;
}

std::vector<int> parse_ints(const std::string& s, char sep) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    if (tok.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stoi(tok, &pos));
      if (pos != tok.size()) throw InvalidArgument("malformed integer '" + tok + "'");
    } catch (const std::logic_error&) {
      throw InvalidArgument("malformed integer '" + tok + "'");
    }
  }
  return out;
}

std::string join(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

std::size_t PiecewisePoly::cell_count() const {
  std::size_t n = 1;
  for (int k : level) n <<= k;
  return n;
}

double PiecewisePoly::eval(std::span<const double> x) const {
  const int d = level.dim();
  std::size_t flat = 0;
  std::vector<std::vector<double>> phi(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    const double scale = std::ldexp(1.0, level[sj]);
    if (x[sj] < 0.0 || x[sj] > 1.0) return 0.0;
    const int n = 1 << level[sj];
    int cell = static_cast<int>(std::floor(x[sj] * scale));
    if (cell >= n) cell = n - 1;
    flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(cell);
    phi[sj].resize(static_cast<std::size_t>(degree[sj]) + 1);
    legendre_eval_all(degree[sj], x[sj] * scale - cell, phi[sj].data());
    for (double& v : phi[sj]) v *= std::sqrt(scale);
  }
  const auto block = cell(flat);
  double s = 0.0;
  std::vector<int> lam(static_cast<std::size_t>(d), 0);
  for (double c : block) {
    double p = c;
    for (int j = 0; j < d; ++j) p *= phi[static_cast<std::size_t>(j)][static_cast<std::size_t>(lam[static_cast<std::size_t>(j)])];
    s += p;
    for (int j = d - 1; j >= 0; --j) {
      if (++lam[static_cast<std::size_t>(j)] <= degree[static_cast<std::size_t>(j)]) break;
      lam[static_cast<std::size_t>(j)] = 0;
    }
  }
  return s;
}

PiecewisePoly project_level(const GridFunction& f, const MultiIndex& kappa, const DegreeVector& l, Exec exec) {
  check_level(f.grid(), kappa, l);
  return PiecewisePoly{kappa, l, cell_inner_products(f, level_tables(f.grid(), kappa, l), exec)};
}

GridFunction to_grid(const PiecewisePoly& p, const Grid& grid, Exec exec) {
  if (p.level.dim() != grid.dim()) throw InvalidArgument("piecewise polynomial and grid dimensions differ");
  if (p.level.max() > grid.level()) throw ResolutionError("grid is coarser than the piecewise polynomial");
  GridFunction out(grid);
  cell_expand(p.coeffs, level_tables(grid, p.level, p.degree), out, false, exec);
  return out;
}

GridFunction project_detail(const GridFunction& f, const MultiIndex& kappa, const DegreeVector& l, Exec exec) {
  check_level(f.grid(), kappa, l);
  const unsigned s = support_mask(kappa);
  GridFunction out(f.grid());
  // eps runs over the subsets of supp(kappa)
  for (unsigned eps = s;; eps = (eps - 1) & s) {
    MultiIndex k = kappa;
    for (int j = 0; j < kappa.dim(); ++j)
      if ((eps >> j) & 1u) k[static_cast<std::size_t>(j)] -= 1;
    auto p = project_level(f, k, l, exec);
    if (popcount(eps) % 2 == 1)
      for (double& c : p.coeffs) c = -c;
    cell_expand(p.coeffs, level_tables(f.grid(), k, l), out, true, exec);
    if (eps == 0) break;
  }
  return out;
}

int DetailCoeffs::cells(int axis) const {
  const int k = kappa[static_cast<std::size_t>(axis)];
  return k > 0 ? 1 << (k - 1) : 1;
}

std::size_t DetailCoeffs::cell_count() const {
  std::size_t n = 1;
  for (int j = 0; j < kappa.dim(); ++j) n *= static_cast<std::size_t>(cells(j));
  return n;
}

DetailCoeffs analyze_block(const GridFunction& f, const MultiIndex& kappa, const DegreeVector& l, Exec exec) {
  check_level(f.grid(), kappa, l);
  return DetailCoeffs{kappa, l, cell_inner_products(f, detail_tables(f.grid(), kappa, l), exec)};
}

GridFunction synthesize_block(const DetailCoeffs& block, const Grid& grid, Exec exec) {
  check_level(grid, block.kappa, block.degree);
  GridFunction out(grid);
  cell_expand(block.coeffs, detail_tables(grid, block.kappa, block.degree), out, false, exec);
  return out;
}

IndexSet IndexSet::box(MultiIndex k) {
  if (k.dim() < 1) throw InvalidArgument("index set dimension must be >= 1");
  for (int x : k)
    if (x < 0) throw InvalidArgument("box bound must be non-negative");
  return IndexSet(Box{std::move(k)});
}

IndexSet IndexSet::cross(std::vector<double> beta, int radius) {
  if (beta.empty()) throw InvalidArgument("index set dimension must be >= 1");
  for (double b : beta)
    if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("beta entries must be positive and finite");
  if (radius < 0) throw InvalidArgument("cross radius must be non-negative");
  return IndexSet(Cross{std::move(beta), radius});
}

int IndexSet::dim() const {
  if (const auto* b = std::get_if<Box>(&shape_)) return b->k.dim();
  return static_cast<int>(std::get<Cross>(shape_).beta.size());
}

std::vector<MultiIndex> IndexSet::members() const {
  if (const auto* b = std::get_if<Box>(&shape_)) return enum_box(b->k);
  const auto& c = std::get<Cross>(shape_);
  return enum_cross({c.beta, c.radius});
}

bool IndexSet::contains(const MultiIndex& kappa) const {
  if (kappa.dim() != dim()) return false;
  for (int k : kappa)
    if (k < 0) return false;
  if (const auto* b = std::get_if<Box>(&shape_)) return kappa.leq(b->k);
  const auto& c = std::get<Cross>(shape_);
  return within_cross(kappa, c.beta, c.radius);
}

MultiIndex IndexSet::bounding_box() const {
  MultiIndex m = MultiIndex::zeros(dim());
  for (const auto& k : members())
    for (int j = 0; j < dim(); ++j) m[static_cast<std::size_t>(j)] = std::max(m[static_cast<std::size_t>(j)], k[static_cast<std::size_t>(j)]);
  return m;
}

std::string IndexSet::str() const {
  if (const auto* b = std::get_if<Box>(&shape_)) return "box " + b->k.str();
  const auto& c = std::get<Cross>(shape_);
  std::string s = "cross r=" + std::to_string(c.radius) + " beta=(";
  for (std::size_t j = 0; j < c.beta.size(); ++j) {
    if (j) s += ",";
    std::ostringstream os;
    os << c.beta[j];
    s += os.str();
  }
  return s + ")";
}

Decomposition analyze(const GridFunction& f, const IndexSet& index_set, const DegreeVector& l, Exec exec) {
  if (index_set.dim() != f.grid().dim()) throw InvalidArgument("index set and grid dimensions differ");
  Decomposition dec{f.grid(), l, index_set, {}};
  for (const auto& kappa : index_set.members()) dec.blocks.emplace(kappa, analyze_block(f, kappa, l, exec));
  return dec;
}

GridFunction synthesize(const Decomposition& dec, Exec exec) {
  GridFunction out(dec.grid);
  for (const auto& [kappa, block] : dec.blocks) {
    check_level(dec.grid, kappa, block.degree);
    cell_expand(block.coeffs, detail_tables(dec.grid, kappa, block.degree), out, true, exec);
  }
  return out;
}

std::map<MultiIndex, GridFunction> detail_functions(const Decomposition& dec, Exec exec) {
  std::map<MultiIndex, GridFunction> out;
  for (const auto& [kappa, block] : dec.blocks) out.emplace(kappa, synthesize_block(block, dec.grid, exec));
  return out;
}

double parseval_gap(const GridFunction& f, const MultiIndex& k, const DegreeVector& l, Exec exec) {
  const auto e = to_grid(project_level(f, k, l, exec), f.grid(), exec);
  const double energy = inner_product(e, e);
  double coeff_sum = 0.0;
  for (const auto& kappa : enum_box(k))
    for (double c : analyze_block(f, kappa, l, exec).coeffs) coeff_sum += c * c;
  return std::abs(energy - coeff_sum);
}

GridFunction apply_axis(const LineOperator& op, int axis, const GridFunction& f, Exec exec) {
  if (axis < 0 || axis >= f.grid().dim()) throw InvalidArgument("axis " + std::to_string(axis) + " out of range");
  return apply_lines(op, axis, f, exec);
}

LineOperator level_operator_1d(const Grid& grid, int axis, int level, int degree) {
  if (axis < 0 || axis >= grid.dim()) throw InvalidArgument("axis out of range");
  if (level < 0 || level > grid.level()) throw ResolutionError("level beyond grid resolution");
  if (degree < 0) throw InvalidArgument("degree must be >= 0");
  if (2 * grid.nodes_per_cell(axis) - 1 < 2 * degree) throw InvalidArgument("grid quadrature is not exact for degree 2l");
  const int n = grid.samples_per_axis(axis);
  const int per = n >> level;
  const double scale = std::ldexp(1.0, level);
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> phi(static_cast<std::size_t>(n) * static_cast<std::size_t>(degree + 1));
  for (int g = 0; g < n; ++g) {
    w[static_cast<std::size_t>(g)] = grid.weight(axis, g);
    const double y = grid.coordinate(axis, g) * scale - g / per;
    for (int m = 0; m <= degree; ++m)
      phi[static_cast<std::size_t>(g * (degree + 1) + m)] = std::sqrt(scale) * legendre_eval(m, y);
  }
  return [n, per, degree, w = std::move(w), phi = std::move(phi)](std::span<const double> in, std::span<double> out) {
    std::vector<double> c(static_cast<std::size_t>(degree + 1));
    for (int start = 0; start < n; start += per) {
      std::fill(c.begin(), c.end(), 0.0);
      for (int g = start; g < start + per; ++g)
        for (int m = 0; m <= degree; ++m)
          c[static_cast<std::size_t>(m)] += w[static_cast<std::size_t>(g)] * in[static_cast<std::size_t>(g)] *
                                             phi[static_cast<std::size_t>(g * (degree + 1) + m)];
      for (int g = start; g < start + per; ++g) {
        double s = 0.0;
        for (int m = 0; m <= degree; ++m) s += c[static_cast<std::size_t>(m)] * phi[static_cast<std::size_t>(g * (degree + 1) + m)];
        out[static_cast<std::size_t>(g)] = s;
      }
    }
  };
}

LineOperator detail_operator_1d(const Grid& grid, int axis, int level, int degree) {
  auto fine = level_operator_1d(grid, axis, level, degree);
  if (level == 0) return fine;
  auto coarse = level_operator_1d(grid, axis, level - 1, degree);
  return [fine = std::move(fine), coarse = std::move(coarse)](std::span<const double> in, std::span<double> out) {
    std::vector<double> tmp(out.size());
    fine(in, out);
    coarse(in, tmp);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= tmp[i];
  };
}

GridFunction project_detail_axiswise(const GridFunction& f, const MultiIndex& kappa, const DegreeVector& l, Exec exec) {
  check_level(f.grid(), kappa, l);
  GridFunction g = f;
  for (int j = 0; j < f.grid().dim(); ++j)
    g = apply_axis(detail_operator_1d(f.grid(), j, kappa[static_cast<std::size_t>(j)], l[static_cast<std::size_t>(j)]), j, g,
                   exec);
  return g;
}

void write_decomposition(std::ostream& os, const Decomposition& dec) {
  os << "mra-decomposition v1\n";
  os << "dim " << dec.grid.dim() << "\n";
  os << "level " << dec.grid.level() << "\n";
  os << "nodes " << join(dec.grid.nodes_per_cell(), ' ') << "\n";
  os << "degree " << join(dec.degree.values(), ' ') << "\n";
  if (const auto* b = std::get_if<IndexSet::Box>(&dec.index_set.shape())) {
    os << "index box " << join(b->k.values(), ' ') << "\n";
  } else {
    const auto& c = std::get<IndexSet::Cross>(dec.index_set.shape());
    os << "index cross " << c.radius;
    for (double v : c.beta) os << ' ' << hex(v);
    os << "\n";
  }
  os << "blocks " << dec.blocks.size() << "\n";
  const int d = dec.grid.dim();
  for (const auto& [kappa, block] : dec.blocks) {
    const auto F = block.functions();
    const std::string ks = join(kappa.values(), ',');
    std::vector<int> rho(static_cast<std::size_t>(d), 0);
    for (std::size_t r = 0; r < block.cell_count(); ++r) {
      const std::string rs = join(rho, ',');
      for (std::size_t i = 0; i < F; ++i) os << ks << ';' << rs << ';' << i << ';' << hex(block.at(r, i)) << '\n';
      for (int j = d - 1; j >= 0; --j) {
        if (++rho[static_cast<std::size_t>(j)] < block.cells(j)) break;
        rho[static_cast<std::size_t>(j)] = 0;
      }
    }
  }
  if (!os) throw std::runtime_error("failed to write decomposition");
}

Decomposition read_decomposition(std::istream& is) {
  std::string line;
  auto next = [&](const std::string& key) {
    if (!std::getline(is, line)) throw InvalidArgument("truncated decomposition header");
    std::istringstream ls(line);
    std::string k;
    ls >> k;
    if (k != key) throw InvalidArgument("expected '" + key + "' in decomposition header, got '" + line + "'");
    std::string rest;
    std::getline(ls, rest);
    return rest;
  };
  if (!std::getline(is, line) || line != "mra-decomposition v1") throw InvalidArgument("not an mra-decomposition v1 stream");
  const int d = parse_ints(next("dim"), ' ').at(0);
  const int K = parse_ints(next("level"), ' ').at(0);
  const auto nodes = parse_ints(next("nodes"), ' ');
  const DegreeVector l(parse_ints(next("degree"), ' '));
  if (static_cast<int>(nodes.size()) != d || l.dim() != d) throw InvalidArgument("header dimension mismatch");

  std::istringstream idx(next("index"));
  std::string kind;
  idx >> kind;
  std::vector<std::string> toks;
  for (std::string t; idx >> t;) toks.push_back(t);
  IndexSet set = IndexSet::box(MultiIndex::zeros(d));
  if (kind == "box") {
    std::vector<int> k;
    for (const auto& t : toks) k.push_back(parse_ints(t, ' ').at(0));
    set = IndexSet::box(MultiIndex(k));
  } else if (kind == "cross") {
    if (toks.empty()) throw InvalidArgument("cross index set without radius");
    std::vector<double> beta;
    for (std::size_t i = 1; i < toks.size(); ++i) beta.push_back(parse_double(toks[i]));
    set = IndexSet::cross(beta, parse_ints(toks[0], ' ').at(0));
  } else {
    throw InvalidArgument("unknown index set kind '" + kind + "'");
  }
  if (set.dim() != d) throw InvalidArgument("index set dimension mismatch");
  const int nblocks = parse_ints(next("blocks"), ' ').at(0);

  Decomposition dec{Grid(d, K, nodes), l, set, {}};
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> parts;
    std::stringstream ss(line);
    for (std::string p; std::getline(ss, p, ';');) parts.push_back(p);
    if (parts.size() != 4) throw InvalidArgument("malformed record '" + line + "'");
    const MultiIndex kappa(parse_ints(parts[0], ','));
    const auto rho = parse_ints(parts[1], ',');
    const auto i = parse_ints(parts[2], ',');
    if (kappa.dim() != d || static_cast<int>(rho.size()) != d || i.size() != 1)
      throw InvalidArgument("malformed record '" + line + "'");
    if (!set.contains(kappa)) throw InvalidArgument("record level " + kappa.str() + " outside the index set");
    auto it = dec.blocks.find(kappa);
    if (it == dec.blocks.end()) {
      DetailCoeffs b{kappa, l, {}};
      b.coeffs.assign(b.cell_count() * b.functions(), 0.0);
      it = dec.blocks.emplace(kappa, std::move(b)).first;
    }
    auto& b = it->second;
    std::size_t r = 0;
    for (int j = 0; j < d; ++j) {
      const int rj = rho[static_cast<std::size_t>(j)];
      if (rj < 0 || rj >= b.cells(j)) throw InvalidArgument("record cell out of range in '" + line + "'");
      r = r * static_cast<std::size_t>(b.cells(j)) + static_cast<std::size_t>(rj);
    }
    if (i[0] < 0 || static_cast<std::size_t>(i[0]) >= b.functions()) throw InvalidArgument("record function out of range");
    b.coeffs[r * b.functions() + static_cast<std::size_t>(i[0])] = parse_double(parts[3]);
  }
  if (static_cast<int>(dec.blocks.size()) != nblocks) throw InvalidArgument("block count does not match header");
  return dec;
}

}  // namespace mra
