#include "thermocode/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace thermocode {

namespace {

// Largest joint Hilbert-space dimension the dense simulator accepts.
constexpr std::int64_t kMaxDim = 4096;

}  // namespace

Hamiltonian::Hamiltonian(std::vector<double> energies) : energies_(std::move(energies)) {
  if (energies_.empty()) throw InvalidInput("Hamiltonian: needs at least one level");
  for (double e : energies_) {
    if (!std::isfinite(e)) throw InvalidInput("Hamiltonian: energies must be finite");
  }
  if (!std::is_sorted(energies_.begin(), energies_.end())) {
    throw InvalidInput("Hamiltonian: energies must be sorted in non-decreasing order");
  }
}

Hamiltonian Hamiltonian::unit_bandwidth_ladder(int d) {
  if (d < 1) throw InvalidInput("unit_bandwidth_ladder: d must be >= 1");
  std::vector<double> e(static_cast<std::size_t>(d), 0.0);
  for (int i = 1; i < d; ++i) e[static_cast<std::size_t>(i)] = static_cast<double>(i) / (d - 1);
  return Hamiltonian(std::move(e));
}

SubspacePartition::SubspacePartition(int total_dim, int letters) : n_(letters), block_(0) {
  if (total_dim < 1 || letters < 1) {
    throw InvalidInput("SubspacePartition: dimension and letter count must be positive");
  }
  if (total_dim % letters != 0) {
    std::ostringstream os;
    os << "SubspacePartition: n = " << letters << " does not divide d_S = " << total_dim
       << "; only uniform blocks d_x = d_S / n are supported";
    throw InvalidInput(os.str());
  }
  block_ = total_dim / letters;
}

int SubspacePartition::index_of(int x, int l) const {
  if (x < 0 || x >= n_ || l < 0 || l >= block_) throw InvalidInput("SubspacePartition: label out of range");
  return x * block_ + l;
}

std::pair<int, int> SubspacePartition::label_of(int index) const {
  if (index < 0 || index >= total_dim()) throw InvalidInput("SubspacePartition: index out of range");
  return {index / block_, index % block_};
}

double BlockedThermalState::block_weight(int x) const {
  const int dx = partition.block_dim();
  const auto first = populations.begin() + static_cast<std::ptrdiff_t>(partition.index_of(x, 0));
  return std::accumulate(first, first + dx, 0.0);
}

void require_finite_beta(double beta) {
  if (!std::isfinite(beta)) {
    throw InvalidInput(
        "beta must be finite: only full-rank states can be prepared with finite resources "
        "(third law), so the zero-temperature limit is rejected");
  }
  if (beta < 0.0) throw InvalidInput("beta must be non-negative");
}

double partition_function(const Hamiltonian& h, double beta) {
  require_finite_beta(beta);
  double z = 0.0;
  for (double e : h.energies()) z += std::exp(-beta * e);
  return z;
}

std::vector<double> gibbs_populations(std::span<const double> energies, double beta) {
  require_finite_beta(beta);
  if (energies.empty()) throw InvalidInput("gibbs_populations: empty spectrum");
  const double e0 = *std::min_element(energies.begin(), energies.end());
  std::vector<double> w(energies.size());
  double z = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    w[i] = std::exp(-beta * (energies[i] - e0));
    z += w[i];
  }
  for (double& v : w) v /= z;
  return w;
}

std::vector<double> gibbs_populations(const Hamiltonian& h, double beta) {
  return gibbs_populations(std::span<const double>(h.energies()), beta);
}

DensityMatrix gibbs_state(const Hamiltonian& h, double beta) {
  return DensityMatrix::from_diagonal(gibbs_populations(h, beta));
}

BlockedThermalState coarse_grain(const Hamiltonian& h, double beta, int n) {
  SubspacePartition partition(h.dim(), n);
  auto pops = gibbs_populations(h, beta);
  return BlockedThermalState{partition, std::move(pops), h.energies(), beta, h, 1};
}

std::int64_t checked_power(int base, int exponent, std::int64_t limit) {
  if (base < 1 || exponent < 1) throw InvalidInput("checked_power: base and exponent must be positive");
  std::int64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    out *= base;
    if (out > limit) {
      std::ostringstream os;
      os << base << "^" << exponent << " exceeds the supported dimension " << limit;
      throw InvalidInput(os.str());
    }
  }
  return out;
}

MultiIndex multicopy_index(std::span<const int> digits, int d_s, int d_x) {
  if (d_x < 1) throw InvalidInput("multicopy_index: d_x must be >= 1");
  if (d_s < 1) throw InvalidInput("multicopy_index: d_S must be >= 1");
  MultiIndex out;
  std::int64_t place = 1;
  for (int k : digits) {
    if (k < 0 || k >= d_s) {
      throw InvalidInput("multicopy_index: digit " + std::to_string(k) + " outside [0, d_S)");
    }
    out.f += static_cast<std::int64_t>(k) * place;
    place *= d_s;
  }
  out.x = out.f / d_x;
  out.l = out.f % d_x;
  return out;
}

BlockedThermalState multicopy_coarse_grain(const Hamiltonian& h, double beta, int copies, int n) {
  if (copies < 1) throw InvalidInput("multicopy_coarse_grain: copies must be >= 1");
  const int d_s = h.dim();
  const auto total = checked_power(d_s, copies, kMaxDim);
  SubspacePartition partition(static_cast<int>(total), n);
  const auto single = gibbs_populations(h, beta);

  std::vector<double> pops(static_cast<std::size_t>(total));
  std::vector<double> energies(static_cast<std::size_t>(total));
  std::vector<int> digits(static_cast<std::size_t>(copies), 0);
  // Odometer over k with k_1 fastest, which visits f = 0, 1, 2, ... in order.
  for (std::int64_t step = 0; step < total; ++step) {
    const auto idx = multicopy_index(digits, d_s, partition.block_dim());
    double p = 1.0;
    double e = 0.0;
    for (int k : digits) {
      p *= single[static_cast<std::size_t>(k)];
      e += h.energies()[static_cast<std::size_t>(k)];
    }
    pops[static_cast<std::size_t>(idx.f)] = p;
    energies[static_cast<std::size_t>(idx.f)] = e;
    for (auto& k : digits) {
      if (++k < d_s) break;
      k = 0;
    }
  }
  return BlockedThermalState{partition, std::move(pops), std::move(energies), beta, h, copies};
}

}  // namespace thermocode
