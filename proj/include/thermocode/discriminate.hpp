#pragma once

// Decoding side: measurements, conditional statistics, success probability,
// C_max and optimality checks for minimum-error discrimination.

#include "thermocode/protocol.hpp"
#include "thermocode/qmatrix.hpp"
#include "thermocode/thermal.hpp"

#include <random>
#include <vector>

namespace thermocode {

class Povm {
 public:
  explicit Povm(std::vector<CMatrix> elements);

  const std::vector<CMatrix>& elements() const { return elements_; }
  int size() const { return static_cast<int>(elements_.size()); }
  int dim() const { return static_cast<int>(elements_.front().rows()); }

  /// Same elements, outcome x reported as label[x].
  Povm relabeled(const std::vector<int>& label) const;

 private:
  std::vector<CMatrix> elements_;
};

/// p(y|x) stored with outcomes y as rows and inputs x as columns.
struct ConditionalDistribution {
  Eigen::MatrixXd table;

  int n_in() const { return static_cast<int>(table.cols()); }
  int n_out() const { return static_cast<int>(table.rows()); }
  double operator()(int y, int x) const { return table(y, x); }
};

struct BarnettCrokeReport {
  bool optimal = false;
  double max_cross_residual = 0.0;  // max_{x,y} ||P_x (p_x rho_x - p_y rho_y) P_y||
  double min_eigenvalue = 0.0;      // min_y lambda_min(sum_x p_x rho_x P_x - p_y rho_y)
};

/// Projectors Pi_x = sum_l |pi_x^(l)><pi_x^(l)| in the encoding basis.
Povm projective_povm(const SubspacePartition& partition);

ConditionalDistribution conditional_distribution(const Ensemble& ensemble, const Povm& povm);

/// sum_x p_x Tr(P_x rho_x)
double success_probability(const Ensemble& ensemble, const Povm& povm);

/// Sum of the largest dim/d_r eigenvalues of the system state.
double c_max(const DensityMatrix& system, int d_r);

BarnettCrokeReport barnett_croke_certificate(const Ensemble& ensemble, const Povm& povm, double tol = 1e-9);

/// Two-state optimum (1 + ||p0 rho0 - p1 rho1||_1) / 2.
double helstrom_oracle(double p0, const DensityMatrix& rho0, double p1, const DensityMatrix& rho1);

/// max over relabelings sigma of sum_x p_x Tr(P_sigma(x) rho_x); n <= 8.
double exhaustive_permutation_oracle(const Ensemble& ensemble, const Povm& povm);

/// One decoding round: sample y ~ p(.|x).
int decode_round(const ConditionalDistribution& cond, int x, std::mt19937_64& rng);

}  // namespace thermocode
