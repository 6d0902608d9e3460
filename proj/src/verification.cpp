#include "mra/verification.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mra/dyadic.hpp"
#include "mra/error.hpp"
#include "mra/projectors.hpp"
#include "mra/random.hpp"
#include "mra/reference.hpp"

namespace mra {

namespace {

Grid grid_for(const ProjectorCheckConfig& cfg) {
  if (cfg.level < 0) throw InvalidArgument("level must be non-negative");
  if (cfg.trials < 1) throw InvalidArgument("need at least one trial");
  return Grid::for_degree(cfg.degree.dim(), cfg.level, cfg.degree);
}

CheckResult result(const std::string& name, const ProjectorCheckConfig& cfg) { return {name, 0.0, cfg.tolerance, 0}; }

void record(CheckResult& r, double err) {
  r.value = std::max(r.value, err);
  ++r.cases;
}

double l2(const GridFunction& f) { return lp_norm(f, 2.0); }

MultiIndex capped_box(const Grid& g, int cap) { return MultiIndex::filled(g.dim(), std::min(g.level(), cap)); }

}  // namespace

CheckResult check_parseval(const ProjectorCheckConfig& cfg, Exec exec) {
  const auto g = grid_for(cfg);
  const auto k = MultiIndex::filled(g.dim(), g.level());
  auto r = result("parseval", cfg);
  for (int t = 0; t < cfg.trials; ++t) {
    auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    const auto f = to_grid(random_piecewise_poly(k, cfg.degree, rng), g, exec);
    record(r, parseval_gap(f, k, cfg.degree, exec) / inner_product(f, f));
  }
  return r;
}

std::vector<CheckResult> check_projector_algebra(const ProjectorCheckConfig& cfg, Exec exec) {
  const auto g = grid_for(cfg);
  const auto& l = cfg.degree;
  const auto levels = enum_box(capped_box(g, 2));
  auto idem = result("idempotency", cfg), annih = result("annihilation", cfg), adj = result("self_adjointness", cfg),
       orth = result("cross_orthogonality", cfg);
  for (int t = 0; t < cfg.trials; ++t) {
    auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    const auto f = random_nodal(g, rng);
    const auto h = random_nodal(g, rng);
    const double nf = l2(f), nh = l2(h);
    std::map<MultiIndex, GridFunction> ef, eh;
    for (const auto& k : levels) {
      ef.emplace(k, project_detail(f, k, l, exec));
      eh.emplace(k, project_detail(h, k, l, exec));
    }
    for (const auto& k : levels) {
      record(adj, std::abs(inner_product(ef.at(k), h) - inner_product(f, eh.at(k))) / (nf * nh));
      // piecewise polynomials of level k2 are killed unless k <= k2
      for (const auto& k2 : levels) {
        const auto twice = project_detail(ef.at(k2), k, l, exec);
        if (k == k2) {
          record(idem, l2(twice - ef.at(k)) / nf);
        } else {
          record(annih, l2(twice) / nf);
          record(orth, std::abs(inner_product(ef.at(k), eh.at(k2))) / (nf * nh));
        }
        if (!k.leq(k2)) {
          const auto p = to_grid(random_piecewise_poly(k2, l, rng), g, exec);
          record(annih, l2(project_detail(p, k, l, exec)) / l2(p));
        }
      }
    }
  }
  return {idem, annih, adj, orth};
}

CheckResult check_detail_routes(const ProjectorCheckConfig& cfg, Exec exec) {
  const auto g = grid_for(cfg);
  const auto& l = cfg.degree;
  auto r = result("detail_routes", cfg);
  for (int t = 0; t < cfg.trials; ++t) {
    auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    const auto f = random_nodal(g, rng);
    const double nf = l2(f);
    for (const auto& k : enum_box(capped_box(g, 3))) {
      const auto a = project_detail(f, k, l, exec);
      record(r, l2(a - synthesize_block(analyze_block(f, k, l, exec), g, exec)) / nf);
      record(r, l2(a - project_detail_axiswise(f, k, l, exec)) / nf);
    }
  }
  return r;
}

CheckResult check_telescoping(const ProjectorCheckConfig& cfg, Exec exec) {
  const auto g = grid_for(cfg);
  const auto& l = cfg.degree;
  auto r = result("telescoping", cfg);
  for (int t = 0; t < cfg.trials; ++t) {
    auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    const auto f = random_nodal(g, rng);
    const double nf = l2(f);
    for (const auto& k : enum_box(capped_box(g, 3))) {
      const auto sum = synthesize(analyze(f, IndexSet::box(k), l, exec), exec);
      record(r, l2(sum - to_grid(project_level(f, k, l, exec), g, exec)) / nf);
    }
  }
  return r;
}

CheckResult check_haar_oracle(const ProjectorCheckConfig& cfg, Exec exec) {
  if (cfg.degree != DegreeVector::zeros(cfg.degree.dim())) throw InvalidArgument("the Haar oracle needs degree 0");
  const auto g = grid_for(cfg);
  auto r = result("haar_oracle", cfg);
  for (int t = 0; t < cfg.trials; ++t) {
    auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    const auto f = random_nodal(g, rng);
    const double nf = l2(f);
    const auto dec = analyze(f, IndexSet::box(MultiIndex::filled(g.dim(), g.level())), cfg.degree, exec);
    const auto haar = reference::haar_pyramid(f);
    double err = 0;
    for (const auto& [k, block] : dec.blocks) {
      const auto& want = haar.at(k);
      for (std::size_t i = 0; i < want.size(); ++i) err = std::max(err, std::abs(block.coeffs[i] - want[i]));
    }
    record(r, err / nf);
  }
  return r;
}

std::vector<CheckResult> verify_projectors(const ProjectorCheckConfig& cfg, Exec exec) {
  std::vector<CheckResult> out{check_parseval(cfg, exec)};
  for (auto& r : check_projector_algebra(cfg, exec)) out.push_back(std::move(r));
  out.push_back(check_detail_routes(cfg, exec));
  out.push_back(check_telescoping(cfg, exec));
  if (cfg.degree == DegreeVector::zeros(cfg.degree.dim())) out.push_back(check_haar_oracle(cfg, exec));
  return out;
}

}  // namespace mra
