#include "thermocode/infotherm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace thermocode {

namespace {

constexpr double kProbSum = 1e-10;
constexpr double kIdentity = 1e-9;
constexpr double kGibbsMatch = 1e-10;

double nats_to_bits(double v) { return v / std::numbers::ln2; }

// log2 Z for energies measured from their minimum, plus the shift term.
double log2_partition(std::span<const double> energies, double beta) {
  const double e0 = *std::min_element(energies.begin(), energies.end());
  double z = 0.0;
  for (double e : energies) z += std::exp(-beta * (e - e0));
  return std::log2(z) - nats_to_bits(beta * e0);
}

double mean_energy(const DensityMatrix& rho, std::span<const double> energies) {
  double u = 0.0;
  for (int i = 0; i < rho.dim(); ++i) u += rho(i, i).real() * energies[static_cast<std::size_t>(i)];
  return u;
}

}  // namespace

ProbVector::ProbVector(std::vector<double> entries) : p_(std::move(entries)) {
  if (p_.empty()) throw InvalidInput("ProbVector: empty");
  double total = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) throw InvalidInput("ProbVector: entries must be non-negative");
    total += v;
  }
  if (std::abs(total - 1.0) > kProbSum) throw InvalidInput("ProbVector: entries sum to " + std::to_string(total));
}

double shannon_entropy(const ProbVector& p) {
  double h = 0.0;
  for (double v : p.entries()) h -= xlog2x(v);
  return std::max(0.0, h);
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("binary_entropy: p outside [0, 1]");
  return std::max(0.0, -xlog2x(p) - xlog2x(1.0 - p));
}

double holevo(const Ensemble& ensemble) {
  double conditional = 0.0;
  for (const auto& it : ensemble.items()) conditional += it.p * von_neumann_entropy(it.rho);
  return std::max(0.0, von_neumann_entropy(ensemble.average()) - conditional);
}

ProbVector output_distribution(const ProbVector& px, const ConditionalDistribution& cond) {
  if (px.size() != cond.n_in()) throw InvalidInput("output_distribution: size mismatch");
  std::vector<double> py(static_cast<std::size_t>(cond.n_out()), 0.0);
  for (int y = 0; y < cond.n_out(); ++y)
    for (int x = 0; x < cond.n_in(); ++x) py[y] += px[x] * cond(y, x);
  // Renormalize away summation roundoff; columns already sum to 1 within 1e-10.
  double total = 0.0;
  for (double v : py) total += v;
  for (double& v : py) v /= total;
  return ProbVector(std::move(py));
}

double mutual_information(const ProbVector& px, const ConditionalDistribution& cond) {
  const ProbVector py = output_distribution(px, cond);
  double h_y_given_x = 0.0;
  for (int x = 0; x < cond.n_in(); ++x)
    for (int y = 0; y < cond.n_out(); ++y) h_y_given_x -= px[x] * xlog2x(cond(y, x));
  return std::max(0.0, shannon_entropy(py) - h_y_given_x);
}

FanoFloor fano_floor(double hx, double c_max, int n) {
  if (!(c_max > 0.0 && c_max <= 1.0)) throw InvalidInput("fano_floor: c_max must lie in (0, 1]");
  if (n < 2) throw InvalidInput("fano_floor: alphabet size must be >= 2");
  FanoFloor f;
  f.raw = hx - binary_entropy(c_max) - (1.0 - c_max) * std::log2(static_cast<double>(n - 1));
  f.value = std::max(0.0, f.raw);
  return f;
}

double l1_distance(const ProbVector& y, const ProbVector& x) {
  if (y.size() != x.size()) throw InvalidInput("l1_distance: length mismatch");
  double s = 0.0;
  for (int i = 0; i < y.size(); ++i) s += std::abs(y[i] - x[i]);
  return 0.5 * s;
}

double gibbs_relative_entropy(const DensityMatrix& rho, std::span<const double> energies, double beta) {
  if (static_cast<int>(energies.size()) != rho.dim()) {
    throw InvalidInput("gibbs_relative_entropy: energies do not match the state dimension");
  }
  require_finite_beta(beta);
  // -Tr(rho log2 gamma) = beta <H>_rho / ln 2 + log2 Z
  const double cross = nats_to_bits(beta * mean_energy(rho, energies)) + log2_partition(energies, beta);
  return std::max(0.0, -von_neumann_entropy(rho) + cross);
}

ThermoLedger thermo_ledger(const DensityMatrix& system_before, const DensityMatrix& system_after,
                           const DensityMatrix& register_before, const DensityMatrix& register_after,
                           std::span<const double> energies, double beta, const Ensemble& ensemble) {
  require_finite_beta(beta);
  if (static_cast<int>(energies.size()) != system_before.dim() || system_after.dim() != system_before.dim()) {
    throw InvalidInput("thermo_ledger: system and Hamiltonian dimensions differ");
  }
  if (register_before.dim() != register_after.dim()) {
    throw InvalidInput("thermo_ledger: register dimensions differ");
  }
  const DensityMatrix gamma = DensityMatrix::from_diagonal(gibbs_populations(energies, beta));
  if ((system_before.matrix() - gamma.matrix()).cwiseAbs().maxCoeff() > kGibbsMatch) {
    throw InvalidInput("thermo_ledger: the initial system state must be the Gibbs state gamma_beta");
  }

  ThermoLedger led;
  const double s_before = von_neumann_entropy(system_before);
  const double s_after = von_neumann_entropy(system_after);
  led.delta_S_S = s_after - s_before;
  led.delta_S_R = von_neumann_entropy(register_after) - von_neumann_entropy(register_before);
  led.heat_betaQ = nats_to_bits(beta * (mean_energy(system_after, energies) - mean_energy(gamma, energies)));
  led.rel_entropy_D = gibbs_relative_entropy(system_after, energies, beta);
  led.free_energy_beta_dF = led.rel_entropy_D;
  led.holevo_chi = holevo(ensemble);
  led.entropy_residual = std::abs(led.holevo_chi - led.delta_S_S);
  led.heat_residual = std::abs(led.holevo_chi - (led.heat_betaQ - led.rel_entropy_D));
  return led;
}

ThermoLedger thermo_ledger(const DensityMatrix& system_before, const DensityMatrix& system_after,
                           const DensityMatrix& register_before, const DensityMatrix& register_after,
                           const Hamiltonian& h, double beta, const Ensemble& ensemble) {
  return thermo_ledger(system_before, system_after, register_before, register_after,
                       std::span<const double>(h.energies()), beta, ensemble);
}

ChainCheck chain_inequality(double hx, double chi, double ixy, double floor) {
  ChainCheck c;
  c.slack = {hx - chi, chi - ixy, ixy - floor};
  c.holds = std::all_of(c.slack.begin(), c.slack.end(), [](double s) { return s >= -kIdentity; });
  return c;
}

}  // namespace thermocode
