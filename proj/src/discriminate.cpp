#include "thermocode/discriminate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace thermocode {

namespace {

constexpr double kCompleteness = 1e-10;
constexpr int kMaxPermutationLetters = 8;

void require_same_dims(const Ensemble& ensemble, const Povm& povm, const char* what) {
  if (ensemble.dim() != povm.dim()) throw InvalidInput(std::string(what) + ": dimension mismatch");
}

void require_paired(const Ensemble& ensemble, const Povm& povm, const char* what) {
  require_same_dims(ensemble, povm, what);
  if (ensemble.size() != povm.size()) {
    throw InvalidInput(std::string(what) + ": ensemble and POVM have different sizes");
  }
}

}  // namespace

Povm::Povm(std::vector<CMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidInput("Povm: needs at least one element");
  const auto d = elements_.front().rows();
  CMatrix total = CMatrix::Zero(d, d);
  for (auto& e : elements_) {
    if (e.rows() != d || e.cols() != d) throw InvalidInput("Povm: elements differ in dimension");
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian) {
      throw InvalidInput("Povm: element is not Hermitian");
    }
    e = (0.5 * (e + e.adjoint())).eval();
    if (hermitian_eigenvalues(e).minCoeff() < -tol::kPsd) {
      throw InvalidInput("Povm: element is not positive semidefinite");
    }
    total += e;
  }
  if ((total - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kCompleteness) {
    throw InvalidInput("Povm: elements do not sum to the identity");
  }
}

Povm Povm::relabeled(const std::vector<int>& label) const {
  if (static_cast<int>(label.size()) != size()) throw InvalidInput("Povm::relabeled: label size mismatch");
  std::vector<CMatrix> out(elements_.size());
  std::vector<bool> seen(elements_.size(), false);
  for (std::size_t x = 0; x < label.size(); ++x) {
    const int y = label[x];
    if (y < 0 || y >= size() || seen[static_cast<std::size_t>(y)]) {
      throw InvalidInput("Povm::relabeled: labels must be a permutation");
    }
    seen[static_cast<std::size_t>(y)] = true;
    out[static_cast<std::size_t>(y)] = elements_[x];
  }
  return Povm(std::move(out));
}

Povm projective_povm(const SubspacePartition& partition) {
  const int d = partition.total_dim();
  const int dx = partition.block_dim();
  std::vector<CMatrix> elements;
  elements.reserve(static_cast<std::size_t>(partition.letters()));
  for (int x = 0; x < partition.letters(); ++x) {
    CMatrix pi = CMatrix::Zero(d, d);
    for (int l = 0; l < dx; ++l) pi(x * dx + l, x * dx + l) = 1.0;
    elements.push_back(std::move(pi));
  }
  return Povm(std::move(elements));
}

ConditionalDistribution conditional_distribution(const Ensemble& ensemble, const Povm& povm) {
  require_same_dims(ensemble, povm, "conditional_distribution");
  Eigen::MatrixXd t(povm.size(), ensemble.size());
  for (int x = 0; x < ensemble.size(); ++x) {
    const CMatrix& rho = ensemble.items()[static_cast<std::size_t>(x)].rho.matrix();
    for (int y = 0; y < povm.size(); ++y) {
      const double v = (povm.elements()[static_cast<std::size_t>(y)] * rho).trace().real();
      t(y, x) = std::clamp(v, 0.0, 1.0);
    }
  }
  return ConditionalDistribution{std::move(t)};
}

double success_probability(const Ensemble& ensemble, const Povm& povm) {
  require_paired(ensemble, povm, "success_probability");
  double s = 0.0;
  for (int x = 0; x < ensemble.size(); ++x) {
    const auto& it = ensemble.items()[static_cast<std::size_t>(x)];
    s += it.p * (povm.elements()[static_cast<std::size_t>(x)] * it.rho.matrix()).trace().real();
  }
  return s;
}

double c_max(const DensityMatrix& system, int d_r) {
  if (d_r < 1 || system.dim() % d_r != 0) {
    throw InvalidInput("c_max: register dimension must divide the system dimension");
  }
  const int r = system.dim() / d_r;
  const RVector ev = system.eigenvalues();  // ascending
  double s = 0.0;
  for (int i = 0; i < r; ++i) s += ev(ev.size() - 1 - i);
  return std::min(1.0, s);
}

BarnettCrokeReport barnett_croke_certificate(const Ensemble& ensemble, const Povm& povm, double tol) {
  require_paired(ensemble, povm, "barnett_croke_certificate");
  const int n = ensemble.size();
  std::vector<CMatrix> weighted;
  weighted.reserve(static_cast<std::size_t>(n));
  for (const auto& it : ensemble.items()) weighted.push_back(it.p * it.rho.matrix());
  const auto& p = povm.elements();

  BarnettCrokeReport r;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const CMatrix m = p[x] * (weighted[x] - weighted[y]) * p[y];
      r.max_cross_residual = std::max(r.max_cross_residual, m.operatorNorm());
    }

  CMatrix lagrange = CMatrix::Zero(ensemble.dim(), ensemble.dim());
  for (int x = 0; x < n; ++x) lagrange += weighted[x] * p[x];
  r.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int y = 0; y < n; ++y) {
    r.min_eigenvalue = std::min(r.min_eigenvalue, hermitian_eigenvalues(lagrange - weighted[y]).minCoeff());
  }
  r.optimal = r.max_cross_residual <= tol && r.min_eigenvalue >= -tol;
  return r;
}

double helstrom_oracle(double p0, const DensityMatrix& rho0, double p1, const DensityMatrix& rho1) {
  if (rho0.dim() != rho1.dim()) throw InvalidInput("helstrom_oracle: dimension mismatch");
  if (p0 < 0.0 || p1 < 0.0 || std::abs(p0 + p1 - 1.0) > 1e-12) {
    throw InvalidInput("helstrom_oracle: priors must be a probability pair");
  }
  return 0.5 * (1.0 + trace_norm(p0 * rho0.matrix() - p1 * rho1.matrix()));
}

double exhaustive_permutation_oracle(const Ensemble& ensemble, const Povm& povm) {
  require_paired(ensemble, povm, "exhaustive_permutation_oracle");
  const int n = ensemble.size();
  if (n > kMaxPermutationLetters) {
    throw InvalidInput("exhaustive_permutation_oracle: n > 8 would enumerate too many relabelings");
  }
  // score(x, y) = p_x Tr(P_y rho_x)
  Eigen::MatrixXd score(n, n);
  for (int x = 0; x < n; ++x) {
    const auto& it = ensemble.items()[static_cast<std::size_t>(x)];
    for (int y = 0; y < n; ++y) score(x, y) = it.p * (povm.elements()[y] * it.rho.matrix()).trace().real();
  }
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  double best = -1.0;
  do {
    double s = 0.0;
    for (int x = 0; x < n; ++x) s += score(x, sigma[static_cast<std::size_t>(x)]);
    best = std::max(best, s);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

int decode_round(const ConditionalDistribution& cond, int x, std::mt19937_64& rng) {
  if (x < 0 || x >= cond.n_in()) throw InvalidInput("decode_round: input letter out of range");
  const Eigen::VectorXd col = cond.table.col(x);
  std::discrete_distribution<int> dist(col.data(), col.data() + col.size());
  return dist(rng);
}

}  // namespace thermocode
