#pragma once

// Classical and quantum information quantities (all in bits), decoding bounds
// and the heat/free-energy ledger of an encoding.

#include "thermocode/discriminate.hpp"
#include "thermocode/protocol.hpp"
#include "thermocode/qmatrix.hpp"
#include "thermocode/thermal.hpp"

#include <array>
#include <span>
#include <vector>

namespace thermocode {

class ProbVector {
 public:
  explicit ProbVector(std::vector<double> entries);

  const std::vector<double>& entries() const { return p_; }
  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<double> p_;
};

struct FanoFloor {
  double value = 0.0;  // clamped at 0
  double raw = 0.0;
};

/// Every entry in bits. free_energy_beta_dF equals rel_entropy_D.
struct ThermoLedger {
  double delta_S_S = 0.0;
  double delta_S_R = 0.0;
  double heat_betaQ = 0.0;
  double rel_entropy_D = 0.0;
  double holevo_chi = 0.0;
  double free_energy_beta_dF = 0.0;
  double entropy_residual = 0.0;  // |chi - delta_S_S|
  double heat_residual = 0.0;     // |chi - (betaQ - D)|
};

struct ChainCheck {
  bool holds = false;
  // H(X) - chi, chi - I(X:Y), I(X:Y) - floor
  std::array<double, 3> slack{};
};

double shannon_entropy(const ProbVector& p);
double binary_entropy(double p);
double holevo(const Ensemble& ensemble);

/// p(y) = sum_x p_x p(y|x)
ProbVector output_distribution(const ProbVector& px, const ConditionalDistribution& cond);

/// H(Y) - H(Y|X)
double mutual_information(const ProbVector& px, const ConditionalDistribution& cond);

FanoFloor fano_floor(double hx, double c_max, int n);

/// (1/2) sum_z |y_z - x_z|
double l1_distance(const ProbVector& y, const ProbVector& x);

/// D(rho || gamma_beta) from the closed form of log gamma_beta; the state is
/// expressed in the eigenbasis of H with level energies `energies`.
double gibbs_relative_entropy(const DensityMatrix& rho, std::span<const double> energies, double beta);

/// Heat and entropy bookkeeping for an encoding that starts from the Gibbs
/// state of a Hamiltonian diagonal in the working basis with the given level
/// energies. Q = Tr[H (rho_S_after - gamma_beta)].
ThermoLedger thermo_ledger(const DensityMatrix& system_before, const DensityMatrix& system_after,
                           const DensityMatrix& register_before, const DensityMatrix& register_after,
                           std::span<const double> energies, double beta, const Ensemble& ensemble);

ThermoLedger thermo_ledger(const DensityMatrix& system_before, const DensityMatrix& system_after,
                           const DensityMatrix& register_before, const DensityMatrix& register_after,
                           const Hamiltonian& h, double beta, const Ensemble& ensemble);

/// H(X) >= chi >= I(X:Y) >= floor, each link with slack >= -1e-9.
ChainCheck chain_inequality(double hx, double chi, double ixy, double floor);

}  // namespace thermocode
