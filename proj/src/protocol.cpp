#include "thermocode/protocol.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace thermocode {

namespace {

constexpr double kProbabilitySum = 1e-12;
constexpr double kSurplusMass = 1e-12;

}  // namespace

Ensemble::Ensemble(std::vector<Item> items) : items_(std::move(items)) {
  if (items_.empty()) throw InvalidInput("Ensemble: needs at least one state");
  double total = 0.0;
  for (const auto& it : items_) {
    if (it.rho.dim() != items_.front().rho.dim()) throw InvalidInput("Ensemble: states differ in dimension");
    if (!(it.p >= 0.0)) throw InvalidInput("Ensemble: probabilities must be non-negative");
    total += it.p;
  }
  if (std::abs(total - 1.0) > kProbabilitySum) {
    throw InvalidInput("Ensemble: probabilities sum to " + std::to_string(total));
  }
}

std::vector<double> Ensemble::probabilities() const {
  std::vector<double> p;
  p.reserve(items_.size());
  for (const auto& it : items_) p.push_back(it.p);
  return p;
}

DensityMatrix Ensemble::average() const {
  CMatrix m = CMatrix::Zero(dim(), dim());
  for (const auto& it : items_) m += it.p * it.rho.matrix();
  return DensityMatrix(std::move(m));
}

Register prepare_register(const DensityMatrix& gamma, const Unitary& u_r) {
  if (gamma.dim() != u_r.dim()) throw InvalidInput("prepare_register: dimension mismatch");
  DensityMatrix state = u_r.apply(gamma);
  std::vector<double> diag(static_cast<std::size_t>(gamma.dim()), 0.0);
  for (int x = 0; x < gamma.dim(); ++x) {
    for (int j = 0; j < gamma.dim(); ++j) diag[x] += std::norm(u_r(x, j)) * gamma(j, j).real();
  }
  return Register{std::move(state), std::move(diag), RegisterMode::Haar};
}

Register explicit_register(std::span<const double> probabilities, int d_r) {
  if (static_cast<int>(probabilities.size()) > d_r) {
    throw InvalidInput("explicit_register: more probabilities than register levels");
  }
  std::vector<double> diag(static_cast<std::size_t>(d_r), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (!(probabilities[i] >= 0.0)) throw InvalidInput("explicit_register: negative probability");
    diag[i] = probabilities[i];
    total += probabilities[i];
  }
  if (std::abs(total - 1.0) > kProbabilitySum) {
    throw InvalidInput("explicit_register: probabilities sum to " + std::to_string(total));
  }
  DensityMatrix state = DensityMatrix::from_diagonal(diag);
  return Register{std::move(state), std::move(diag), RegisterMode::Explicit};
}

Unitary shift_unitary(int x, const SubspacePartition& partition) {
  const int n = partition.letters();
  const int dx = partition.block_dim();
  if (x < 0 || x >= n) throw InvalidInput("shift_unitary: letter out of range");
  const int d = partition.total_dim();
  CMatrix m = CMatrix::Zero(d, d);
  for (int y = 0; y < n; ++y)
    for (int l = 0; l < dx; ++l) m(((y + x) % n) * dx + l, y * dx + l) = 1.0;
  return Unitary(std::move(m));
}

std::vector<Unitary> shift_unitaries(const SubspacePartition& partition) {
  std::vector<Unitary> out;
  out.reserve(static_cast<std::size_t>(partition.letters()));
  for (int x = 0; x < partition.letters(); ++x) out.push_back(shift_unitary(x, partition));
  return out;
}

Unitary controlled_unitary(std::span<const Unitary> unitaries, int d_r) {
  if (unitaries.empty()) throw InvalidInput("controlled_unitary: no system unitaries");
  if (static_cast<int>(unitaries.size()) > d_r) {
    std::ostringstream os;
    os << "controlled_unitary: " << unitaries.size() << " letters exceed register dimension " << d_r;
    throw InvalidInput(os.str());
  }
  const int ds = unitaries.front().dim();
  for (const auto& u : unitaries) {
    if (u.dim() != ds) throw InvalidInput("controlled_unitary: system unitaries differ in dimension");
  }
  CMatrix m = CMatrix::Zero(d_r * ds, d_r * ds);
  for (int x = 0; x < d_r; ++x) {
    auto block = m.block(x * ds, x * ds, ds, ds);
    if (x < static_cast<int>(unitaries.size())) {
      block = unitaries[static_cast<std::size_t>(x)].matrix();
    } else {
      block.setIdentity();
    }
  }
  return Unitary(std::move(m));
}

Encoding encode(const Register& reg, const DensityMatrix& system, std::span<const Unitary> unitaries) {
  if (unitaries.empty()) throw InvalidInput("encode: no system unitaries");
  const int n = static_cast<int>(unitaries.size());
  const int d_r = reg.dim();
  const int d_s = system.dim();
  if (unitaries.front().dim() != d_s) throw InvalidInput("encode: unitary and system dimensions differ");
  if (n > d_r) throw InvalidInput("encode: register smaller than the number of letters");

  const Unitary u = controlled_unitary(unitaries, d_r);
  DensityMatrix joint = u.apply(tensor(reg.state, system));

  int letters = d_r;
  if (reg.mode == RegisterMode::Explicit) {
    double surplus = 0.0;
    for (int x = n; x < d_r; ++x) surplus += reg.diag[static_cast<std::size_t>(x)];
    if (surplus > kSurplusMass) {
      throw InvalidInput("encode: explicit register puts mass on letters without a system unitary");
    }
    letters = n;
  }

  std::vector<Ensemble::Item> items;
  items.reserve(static_cast<std::size_t>(letters));
  for (int x = 0; x < letters; ++x) {
    const double p = reg.diag[static_cast<std::size_t>(x)];
    if (x < n) {
      items.push_back({p, unitaries[static_cast<std::size_t>(x)].apply(system)});
    } else {
      items.push_back({p, system});
    }
  }
  return Encoding{std::move(joint), Ensemble(std::move(items))};
}

Eigen::MatrixXd overlap_table(const Ensemble& ensemble, const SubspacePartition& partition) {
  if (ensemble.dim() != partition.total_dim()) throw InvalidInput("overlap_table: dimension mismatch");
  const int n = partition.letters();
  const int dx = partition.block_dim();
  Eigen::MatrixXd t(n, ensemble.size());
  for (int x = 0; x < ensemble.size(); ++x) {
    const CMatrix& rho = ensemble.items()[static_cast<std::size_t>(x)].rho.matrix();
    for (int z = 0; z < n; ++z) t(z, x) = rho.block(z * dx, z * dx, dx, dx).trace().real();
  }
  return t;
}

Eigen::MatrixXd shift_overlap_table(const BlockedThermalState& blocked) {
  const int n = blocked.partition.letters();
  Eigen::MatrixXd t(n, n);
  for (int z = 0; z < n; ++z)
    for (int x = 0; x < n; ++x) t(z, x) = blocked.block_weight(((z - x) % n + n) % n);
  return t;
}

}  // namespace thermocode
