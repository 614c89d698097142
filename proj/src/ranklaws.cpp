#include "thermocode/ranklaws.hpp"

#include "thermocode/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thermocode {

namespace {

constexpr double kOrthogonality = 1e-10;
constexpr double kPureThreshold = 1e-9;
constexpr double kChiMatch = 1e-9;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

LinearDependence linear_dependence(const Ensemble& ensemble, double tol) {
  const int n = ensemble.size();
  const int d = ensemble.dim();
  CMatrix flat(static_cast<Eigen::Index>(d) * d, n);
  for (int x = 0; x < n; ++x) {
    const CMatrix& m = ensemble.items()[static_cast<std::size_t>(x)].rho.matrix();
    flat.col(x) = Eigen::Map<const CVector>(m.data(), m.size());
  }
  const RankReport rank = numerical_rank(flat, tol);
  LinearDependence out;
  out.rank = rank.value;
  out.dependent = rank.value < n;
  // Fewer singular values than states means the vectors cannot be independent.
  out.min_singular_value = static_cast<int>(rank.singular_values.size()) < n ? 0.0 : rank.singular_values.back();
  return out;
}

RankLawReport lemma1_check(const DensityMatrix& register_state, const DensityMatrix& system,
                           const Ensemble& ensemble, bool unitary_origin) {
  RankLawReport r;
  r.unitary_origin = unitary_origin;
  r.lhs = numerical_rank(system).value * numerical_rank(register_state).value;
  int max_rank = 0;
  for (const auto& it : ensemble.items()) {
    const int k = numerical_rank(it.rho).value;
    r.per_state_ranks.push_back(k);
    max_rank = std::max(max_rank, k);
  }
  r.rhs = ensemble.size() * max_rank;
  r.holds = r.lhs <= r.rhs;
  r.linear_dependence = linear_dependence(ensemble);
  return r;
}

NoGoReport theorem1_nogo_probe(int n, int d_s, double beta, int trials, std::uint64_t seed) {
  require_finite_beta(beta);
  if (n < 1 || d_s < 1 || trials < 1) throw InvalidInput("theorem1_nogo_probe: n, d_S and trials must be positive");
  const Hamiltonian h = Hamiltonian::unit_bandwidth_ladder(d_s);
  const DensityMatrix gamma = gibbs_state(h, beta);
  const DensityMatrix gamma_r = gibbs_state(Hamiltonian::unit_bandwidth_ladder(n), beta);

  NoGoReport rep;
  rep.trials = trials;
  rep.min_state_entropy = std::numeric_limits<double>::infinity();
  rep.min_rank = std::numeric_limits<int>::max();
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = mix_seed(seed, static_cast<std::uint64_t>(t));
    const Register reg = prepare_register(gamma_r, haar_unitary(n, mix_seed(trial_seed, 0)));
    std::vector<Unitary> us;
    us.reserve(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) us.push_back(haar_unitary(d_s, mix_seed(trial_seed, 1 + static_cast<std::uint64_t>(x))));
    const Encoding enc = encode(reg, gamma, us);
    for (const auto& it : enc.ensemble.items()) {
      const double purity = it.rho.purity();
      rep.min_state_entropy = std::min(rep.min_state_entropy, von_neumann_entropy(it.rho));
      rep.min_rank = std::min(rep.min_rank, numerical_rank(it.rho).value);
      rep.max_purity = std::max(rep.max_purity, purity);
      if (purity >= 1.0 - kPureThreshold) rep.any_pure = true;
    }
  }
  return rep;
}

Remark1Report remark1_check(const ProbVector& p, const std::vector<CVector>& states) {
  if (static_cast<int>(states.size()) != p.size()) throw InvalidInput("remark1_check: size mismatch");
  if (states.empty()) throw InvalidInput("remark1_check: no states");
  const auto d = states.front().size();
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != d) throw InvalidInput("remark1_check: states differ in dimension");
    for (std::size_t j = 0; j < states.size(); ++j) {
      const Complex ip = states[i].dot(states[j]);
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(ip - expected) > kOrthogonality) {
        throw InvalidInput("remark1_check: states are not orthonormal");
      }
    }
  }
  std::vector<Ensemble::Item> items;
  for (std::size_t i = 0; i < states.size(); ++i) {
    items.push_back({p[static_cast<int>(i)], DensityMatrix::pure(states[i])});
  }
  const Ensemble ens(std::move(items));
  Remark1Report r;
  r.rank = numerical_rank(ens.average()).value;
  r.support = static_cast<int>(std::count_if(p.entries().begin(), p.entries().end(), [](double v) { return v > 0.0; }));
  r.chi = holevo(ens);
  r.hx = shannon_entropy(p);
  r.holds = r.rank == r.support && r.rank <= static_cast<int>(d) && std::abs(r.chi - r.hx) <= kChiMatch;
  return r;
}

}  // namespace thermocode
