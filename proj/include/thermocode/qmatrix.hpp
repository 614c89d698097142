#pragma once

// Dense complex-matrix primitives and validated quantum-state types.
//
// Every state in the library is a DensityMatrix (Hermitian, PSD, unit trace)
// and every evolution is a Unitary. Both are immutable values that check
// their invariants on construction, so downstream code never re-validates.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace thermocode {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Tolerances shared by the state invariants.
namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsd = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kRankRelative = 1e-10;
}  // namespace tol

/// Thrown whenever an operation receives inputs outside its contract.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, trace and positivity, then stores the exact
  /// Hermitian part of `m`.
  explicit DensityMatrix(CMatrix m);

  static DensityMatrix from_diagonal(std::span<const double> probabilities);
  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix pure(const CVector& psi);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  /// Eigenvalues in ascending order.
  RVector eigenvalues() const;
  std::vector<double> diagonal() const;
  double purity() const;

 private:
  CMatrix m_;
};

class Unitary {
 public:
  explicit Unitary(CMatrix m);

  static Unitary identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  Unitary adjoint() const;
  /// U ρ U†
  DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  CMatrix m_;
};

Unitary operator*(const Unitary& a, const Unitary& b);

struct RankReport {
  int value = 0;
  std::vector<double> singular_values;  // descending
  double tolerance = 0.0;               // absolute cutoff actually applied
};

enum class Keep { A, B };

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
Unitary tensor(const Unitary& a, const Unitary& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Trace out one factor of a joint state on C^{d_a} ⊗ C^{d_b}.
DensityMatrix partial_trace(const DensityMatrix& joint, int d_a, int d_b, Keep keep);

/// Zero every register block <x|·|y> with x != y in the computational basis
/// of the register (the first tensor factor).
DensityMatrix dephase_register(const DensityMatrix& joint, int d_r, int d_s);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal folded back into Q.
Unitary haar_unitary(int d, std::uint64_t seed);

/// Counts singular values above `relative_tol * sigma_max`.
RankReport numerical_rank(const CMatrix& m, double relative_tol = tol::kRankRelative);
RankReport numerical_rank(const DensityMatrix& rho, double relative_tol = tol::kRankRelative);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// Quantum relative entropy D(rho||sigma) in bits; +infinity when the support
/// of rho is not contained in the support of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Eigenvalues of a Hermitian matrix (Hermitian part taken), ascending.
RVector hermitian_eigenvalues(const CMatrix& m);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const CMatrix& hermitian);

/// x log2 x with the 0 log 0 = 0 convention; negative roundoff treated as 0.
double xlog2x(double x);

}  // namespace thermocode
