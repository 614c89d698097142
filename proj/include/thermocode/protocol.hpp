#pragma once

// Encoding pipeline: register preparation, block-shift unitaries, the
// controlled interaction sum_x |x><x| ⊗ U_x and the ensemble it induces.

#include "thermocode/qmatrix.hpp"
#include "thermocode/thermal.hpp"

#include <span>
#include <vector>

namespace thermocode {

enum class RegisterMode { Explicit, Haar };

struct Register {
  DensityMatrix state;
  std::vector<double> diag;  // p_x, equal to the diagonal of `state`
  RegisterMode mode = RegisterMode::Explicit;

  int dim() const { return state.dim(); }
};

class Ensemble {
 public:
  struct Item {
    double p;
    DensityMatrix rho;
  };

  explicit Ensemble(std::vector<Item> items);

  const std::vector<Item>& items() const { return items_; }
  int size() const { return static_cast<int>(items_.size()); }
  int dim() const { return items_.front().rho.dim(); }
  std::vector<double> probabilities() const;
  /// sum_x p_x rho_x
  DensityMatrix average() const;

 private:
  std::vector<Item> items_;
};

/// rho_R = U_R gamma U_R†, p_x = sum_j |u_xj|^2 gamma_jj.
Register prepare_register(const DensityMatrix& gamma, const Unitary& u_r);

/// Diagonal register diag(p) of dimension d_r (p zero-padded when shorter).
Register explicit_register(std::span<const double> probabilities, int d_r);

/// Permutation |pi_y^(l)> -> |pi_{(y+x) mod n}^(l)>.
Unitary shift_unitary(int x, const SubspacePartition& partition);

/// sum_x |x><x| ⊗ U_x on C^{d_r} ⊗ C^{d_S}; letters x >= unitaries.size()
/// act as identity.
Unitary controlled_unitary(std::span<const Unitary> unitaries, int d_r);

struct Encoding {
  DensityMatrix joint;  // U (rho_R ⊗ rho_S) U†, coherences kept
  Ensemble ensemble;    // {p_x, U_x rho_S U_x†}
};

/// Runs the controlled interaction. The ensemble carries every register
/// letter with non-negligible weight; explicit registers must put at most
/// 1e-12 of their mass on letters beyond unitaries.size(), and those letters
/// are omitted.
Encoding encode(const Register& reg, const DensityMatrix& system, std::span<const Unitary> unitaries);

/// The n shift unitaries U_0 .. U_{n-1} for a partition.
std::vector<Unitary> shift_unitaries(const SubspacePartition& partition);

/// Tr(Pi_z rho_x) evaluated on the states; entry (z, x).
Eigen::MatrixXd overlap_table(const Ensemble& ensemble, const SubspacePartition& partition);

/// Closed form for shift encodings: entry (z, x) = sum_l r_{(z-x) mod n}^(l).
Eigen::MatrixXd shift_overlap_table(const BlockedThermalState& blocked);

}  // namespace thermocode
