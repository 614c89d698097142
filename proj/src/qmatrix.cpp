#include "thermocode/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

namespace thermocode {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw InvalidInput(os.str());
  }
}

}  // namespace

double xlog2x(double x) {
  if (x <= 0.0) return 0.0;
  return x * std::log2(x);
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double trace_norm(const CMatrix& hermitian) {
  return hermitian_eigenvalues(hermitian).cwiseAbs().sum();
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
  require_square(m_, "DensityMatrix");
  const double herm_dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol::kHermitian) {
    throw InvalidInput("DensityMatrix: not Hermitian (max deviation " + std::to_string(herm_dev) + ")");
  }
  m_ = 0.5 * (m_ + m_.adjoint()).eval();
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    throw InvalidInput("DensityMatrix: trace is " + std::to_string(tr) + ", expected 1");
  }
  const double min_eig = hermitian_eigenvalues(m_).minCoeff();
  if (min_eig < -tol::kPsd) {
    throw InvalidInput("DensityMatrix: not positive semidefinite (min eigenvalue " +
                       std::to_string(min_eig) + ")");
  }
}

DensityMatrix DensityMatrix::from_diagonal(std::span<const double> probabilities) {
  const auto d = static_cast<Eigen::Index>(probabilities.size());
  CMatrix m = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = probabilities[static_cast<std::size_t>(i)];
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw InvalidInput("maximally_mixed: dim must be >= 1");
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw InvalidInput("pure: zero vector");
  const CVector v = psi / norm;
  return DensityMatrix(v * v.adjoint());
}

RVector DensityMatrix::eigenvalues() const { return hermitian_eigenvalues(m_); }

std::vector<double> DensityMatrix::diagonal() const {
  std::vector<double> out(static_cast<std::size_t>(dim()));
  for (int i = 0; i < dim(); ++i) out[static_cast<std::size_t>(i)] = m_(i, i).real();
  return out;
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

// ---------------------------------------------------------------------------
// Unitary

Unitary::Unitary(CMatrix m) : m_(std::move(m)) {
  require_square(m_, "Unitary");
  const auto d = m_.rows();
  const double dev = (m_ * m_.adjoint() - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > tol::kUnitary) {
    throw InvalidInput("Unitary: U U^dagger deviates from identity by " + std::to_string(dev));
  }
}

Unitary Unitary::identity(int dim) {
  if (dim < 1) throw InvalidInput("Unitary::identity: dim must be >= 1");
  return Unitary(CMatrix::Identity(dim, dim));
}

Unitary Unitary::adjoint() const { return Unitary(m_.adjoint()); }

DensityMatrix Unitary::apply(const DensityMatrix& rho) const {
  if (rho.dim() != dim()) throw InvalidInput("Unitary::apply: dimension mismatch");
  return DensityMatrix(m_ * rho.matrix() * m_.adjoint());
}

Unitary operator*(const Unitary& a, const Unitary& b) {
  if (a.dim() != b.dim()) throw InvalidInput("Unitary product: dimension mismatch");
  return Unitary(a.matrix() * b.matrix());
}

// ---------------------------------------------------------------------------
// Tensor structure

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

Unitary tensor(const Unitary& a, const Unitary& b) { return Unitary(kron(a.matrix(), b.matrix())); }

DensityMatrix partial_trace(const DensityMatrix& joint, int d_a, int d_b, Keep keep) {
  if (d_a < 1 || d_b < 1 || joint.dim() != d_a * d_b) {
    std::ostringstream os;
    os << "partial_trace: joint dimension " << joint.dim() << " != " << d_a << " * " << d_b;
    throw InvalidInput(os.str());
  }
  const CMatrix& m = joint.matrix();
  if (keep == Keep::A) {
    CMatrix out = CMatrix::Zero(d_a, d_a);
    for (int i = 0; i < d_a; ++i)
      for (int j = 0; j < d_a; ++j) out(i, j) = m.block(i * d_b, j * d_b, d_b, d_b).trace();
    return DensityMatrix(std::move(out));
  }
  CMatrix out = CMatrix::Zero(d_b, d_b);
  for (int i = 0; i < d_a; ++i) out += m.block(i * d_b, i * d_b, d_b, d_b);
  return DensityMatrix(std::move(out));
}

DensityMatrix dephase_register(const DensityMatrix& joint, int d_r, int d_s) {
  if (d_r < 1 || d_s < 1 || joint.dim() != d_r * d_s) {
    throw InvalidInput("dephase_register: joint dimension does not match d_R * d_S");
  }
  CMatrix out = CMatrix::Zero(joint.dim(), joint.dim());
  for (int x = 0; x < d_r; ++x) {
    out.block(x * d_s, x * d_s, d_s, d_s) = joint.matrix().block(x * d_s, x * d_s, d_s, d_s);
  }
  return DensityMatrix(std::move(out));
}

// ---------------------------------------------------------------------------
// Random unitaries

Unitary haar_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw InvalidInput("haar_unitary: d must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    const Complex phase = mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return Unitary(std::move(q));
}

// ---------------------------------------------------------------------------
// Spectral quantities

RankReport numerical_rank(const CMatrix& m, double relative_tol) {
  RankReport report;
  if (m.size() == 0) return report;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const RVector& sv = svd.singularValues();
  report.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  report.tolerance = sigma_max * relative_tol;
  for (double s : report.singular_values) {
    if (s > report.tolerance) ++report.value;
  }
  return report;
}

RankReport numerical_rank(const DensityMatrix& rho, double relative_tol) {
  return numerical_rank(rho.matrix(), relative_tol);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const RVector ev = rho.eigenvalues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) s -= xlog2x(ev(i));
  return std::max(0.0, s);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw InvalidInput("relative_entropy: dimension mismatch");
  constexpr double kKernel = 1e-12;
  constexpr double kWeight = 1e-10;

  Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma.matrix());
  const RVector& s = es.eigenvalues();
  const CMatrix& v = es.eigenvectors();

  // Tr(rho log2 sigma) = sum_k <v_k|rho|v_k> log2 s_k
  double cross = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    const double weight = (v.col(k).adjoint() * rho.matrix() * v.col(k))(0, 0).real();
    if (s(k) < kKernel) {
      if (weight > kWeight) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += weight * std::log2(s(k));
  }
  const double d = -von_neumann_entropy(rho) - cross;
  return std::max(0.0, d);
}

}  // namespace thermocode
