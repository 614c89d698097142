#pragma once

// Checks of the rank relations between register, system and ensemble.

#include "thermocode/infotherm.hpp"
#include "thermocode/protocol.hpp"
#include "thermocode/qmatrix.hpp"

#include <cstdint>
#include <vector>

namespace thermocode {

struct LinearDependence {
  bool dependent = false;
  int rank = 0;
  double min_singular_value = 0.0;  // of the d^2 x n matrix of flattened states
};

struct RankLawReport {
  int lhs = 0;  // rank(rho_S) * rank(rho_R)
  int rhs = 0;  // n * max_x rank(rho_x)
  bool holds = false;
  std::vector<int> per_state_ranks;
  LinearDependence linear_dependence;
  /// False when the caller could not vouch for a unitary origin of the
  /// ensemble; `holds == false` then reports an inequality status, not a
  /// violated law.
  bool unitary_origin = true;
};

struct NoGoReport {
  int trials = 0;
  double min_state_entropy = 0.0;  // bits, over every rho_x of every trial
  int min_rank = 0;
  double max_purity = 0.0;
  bool any_pure = false;  // purity >= 1 - 1e-9 somewhere
};

struct Remark1Report {
  int rank = 0;
  int support = 0;
  double chi = 0.0;
  double hx = 0.0;
  bool holds = false;
};

LinearDependence linear_dependence(const Ensemble& ensemble, double tol = tol::kRankRelative);

RankLawReport lemma1_check(const DensityMatrix& register_state, const DensityMatrix& system,
                           const Ensemble& ensemble, bool unitary_origin = true);

/// Random controlled-unitary encodings (Haar U_x per letter, Haar register
/// preparation) of the Gibbs state of the unit-bandwidth ladder on d_S levels.
NoGoReport theorem1_nogo_probe(int n, int d_s, double beta, int trials, std::uint64_t seed);

/// Ensemble {p_x, |phi_x><phi_x|} of orthonormal pure states.
Remark1Report remark1_check(const ProbVector& p, const std::vector<CVector>& states);

}  // namespace thermocode
