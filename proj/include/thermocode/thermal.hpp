#pragma once

// Hamiltonians, Gibbs states and the coarse-graining of a thermal spectrum
// into equal-sized message blocks.

#include "thermocode/qmatrix.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace thermocode {

/// Diagonal Hamiltonian stored by its energies, ascending.
class Hamiltonian {
 public:
  explicit Hamiltonian(std::vector<double> energies);

  /// Equally spaced ladder E_i = i / (d - 1) on [0, 1]; E = {0} for d = 1.
  static Hamiltonian unit_bandwidth_ladder(int d);

  int dim() const { return static_cast<int>(energies_.size()); }
  const std::vector<double>& energies() const { return energies_; }

 private:
  std::vector<double> energies_;
};

/// H_S = H_0 ⊕ ... ⊕ H_{n-1} with every block of dimension d_S / n.
class SubspacePartition {
 public:
  SubspacePartition(int total_dim, int letters);

  int letters() const { return n_; }
  int block_dim() const { return block_; }
  int total_dim() const { return n_ * block_; }
  std::vector<int> block_dims() const { return std::vector<int>(static_cast<std::size_t>(n_), block_); }

  int index_of(int x, int l) const;
  std::pair<int, int> label_of(int index) const;

 private:
  int n_;
  int block_;
};

/// Thermal populations r_x^(l) laid out in flattened (x, l) order, i.e. the
/// entry at index_of(x, l).
struct BlockedThermalState {
  SubspacePartition partition;
  std::vector<double> populations;
  std::vector<double> level_energies;  // e_x^(l), same order as populations
  double beta = 0.0;
  Hamiltonian hamiltonian;             // single-copy Hamiltonian
  int copies = 1;

  double population(int x, int l) const {
    return populations[static_cast<std::size_t>(partition.index_of(x, l))];
  }
  /// sum_l r_x^(l)
  double block_weight(int x) const;
  /// The diagonal state sum_{x,l} r_x^(l) |pi_x^(l)><pi_x^(l)|.
  DensityMatrix state() const { return DensityMatrix::from_diagonal(populations); }
};

struct MultiIndex {
  std::int64_t f = 0;
  std::int64_t x = 0;
  std::int64_t l = 0;
};

/// Rejects beta < 0 and non-finite beta (a zero-temperature state is not
/// preparable with finite resources).
void require_finite_beta(double beta);

double partition_function(const Hamiltonian& h, double beta);

/// Boltzmann weights exp(-beta E_i) / Z, evaluated relative to the ground
/// energy so large beta does not underflow Z.
std::vector<double> gibbs_populations(const Hamiltonian& h, double beta);
std::vector<double> gibbs_populations(std::span<const double> energies, double beta);

DensityMatrix gibbs_state(const Hamiltonian& h, double beta);

BlockedThermalState coarse_grain(const Hamiltonian& h, double beta, int n);

/// f = sum_mu k_mu d_S^(mu-1) (k_1 least significant), x = f / d_x, l = f % d_x.
MultiIndex multicopy_index(std::span<const int> digits, int d_s, int d_x);

/// Coarse-grains gamma^{⊗N}; flattened index f of the result holds the
/// population of the product level with digits k(f).
BlockedThermalState multicopy_coarse_grain(const Hamiltonian& h, double beta, int copies, int n);

/// d_S^N, rejecting results above `limit`.
std::int64_t checked_power(int base, int exponent, std::int64_t limit);

}  // namespace thermocode
