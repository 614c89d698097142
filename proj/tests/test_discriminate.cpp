#include "thermocode/discriminate.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace thermocode;

namespace {

Encoding shift_encoding(const BlockedThermalState& b, const std::vector<double>& p) {
  const auto us = shift_unitaries(b.partition);
  return encode(explicit_register(p, b.partition.letters()), b.state(), us);
}

std::vector<double> uniform(int n) { return std::vector<double>(static_cast<std::size_t>(n), 1.0 / n); }

}  // namespace

TEST_CASE("Povm validation") {
  CHECK_THROWS_AS(Povm({CMatrix::Identity(2, 2) * 0.5}), InvalidInput);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = 1.0;
  CMatrix other = CMatrix::Zero(2, 2);
  other(0, 0) = -0.5;
  CHECK_THROWS_AS(Povm({neg, other}), InvalidInput);
  const auto pv = projective_povm(SubspacePartition(4, 2));
  CHECK(pv.size() == 2);
  CHECK((pv.elements()[0] + pv.elements()[1] - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(pv.elements()[0](1, 1) == Complex(1.0, 0.0));
  CHECK(pv.elements()[0](2, 2) == Complex(0.0, 0.0));
}

TEST_CASE("minimal qubit example") {
  const auto b = coarse_grain(Hamiltonian({0.0, 1.0}), 1.0, 2);
  const auto enc = shift_encoding(b, {0.6, 0.4});
  const auto pv = projective_povm(b.partition);
  const auto cond = conditional_distribution(enc.ensemble, pv);
  const double a = oracle::logistic(1.0);
  CHECK(cond(0, 0) == doctest::Approx(a).epsilon(1e-15));
  CHECK(cond(1, 0) == doctest::Approx(1.0 - a).epsilon(1e-15));
  CHECK(cond(1, 1) == doctest::Approx(a).epsilon(1e-15));
  CHECK(success_probability(enc.ensemble, pv) == doctest::Approx(0.7310585786300049).epsilon(1e-14));
  CHECK(c_max(b.state(), 2) == doctest::Approx(0.7310585786300049).epsilon(1e-14));
}

TEST_CASE("projective success equals C_max") {
  for (int d : {2, 4, 6, 8}) {
    for (int n = 2; n <= d; ++n) {
      if (d % n != 0) continue;
      for (double beta : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        const auto b = coarse_grain(Hamiltonian::unit_bandwidth_ladder(d), beta, n);
        std::vector<double> p(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) p[x] = (x + 1.0) / (n * (n + 1) / 2.0);
        const auto enc = shift_encoding(b, p);
        CHECK(std::abs(success_probability(enc.ensemble, projective_povm(b.partition)) - c_max(b.state(), n)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("C_max") {
  SUBCASE("maximally mixed gives 1/n") {
    CHECK(c_max(DensityMatrix::maximally_mixed(6), 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("non-decreasing in beta, bounded by 1") {
    const auto h = Hamiltonian::unit_bandwidth_ladder(6);
    for (int n : {2, 3, 6}) {
      double previous = 0.0;
      for (double beta = 0.0; beta <= 30.0; beta += 0.5) {
        const double c = c_max(gibbs_state(h, beta), n);
        CHECK(c >= previous - 1e-15);
        CHECK(c <= 1.0 + 1e-15);
        previous = c;
      }
    }
  }
  SUBCASE("n = d is the ground population") {
    const auto g = gibbs_state(Hamiltonian({0.0, 0.5, 2.0}), 1.0);
    CHECK(c_max(g, 3) == doctest::Approx(oracle::boltzmann({0.0, 0.5, 2.0}, 1.0)[0]).epsilon(1e-15));
  }
  CHECK_THROWS_AS(c_max(DensityMatrix::maximally_mixed(6), 4), InvalidInput);
}

TEST_CASE("Barnett-Croke certificate") {
  const auto b = coarse_grain(Hamiltonian::unit_bandwidth_ladder(4), 1.0, 2);
  const auto pv = projective_povm(b.partition);

  SUBCASE("uniform prior: projective measurement is optimal") {
    for (int n : {2, 4}) {
      const auto bb = coarse_grain(Hamiltonian::unit_bandwidth_ladder(4), 1.5, n);
      const auto enc = shift_encoding(bb, uniform(n));
      const auto rep = barnett_croke_certificate(enc.ensemble, projective_povm(bb.partition));
      CHECK(rep.optimal);
      CHECK(rep.max_cross_residual <= 1e-12);
      CHECK(rep.min_eigenvalue >= -1e-12);
    }
  }
  SUBCASE("relabelled measurement fails the certificate") {
    const auto enc = shift_encoding(b, uniform(2));
    const auto swapped = pv.relabeled({1, 0});
    CHECK_FALSE(barnett_croke_certificate(enc.ensemble, swapped).optimal);
    CHECK(success_probability(enc.ensemble, swapped) == doctest::Approx(1.0 - b.block_weight(0)).epsilon(1e-14));
  }
  SUBCASE("strongly skewed prior: projective measurement is not optimal") {
    const auto q = coarse_grain(Hamiltonian({0.0, 1.0}), 1.0, 2);
    const auto enc = shift_encoding(q, {0.9, 0.1});
    const auto rep = barnett_croke_certificate(enc.ensemble, projective_povm(q.partition));
    CHECK_FALSE(rep.optimal);
    CHECK(rep.min_eigenvalue < -1e-3);
  }
}

TEST_CASE("Helstrom oracle") {
  SUBCASE("agrees with the generic eigen-solver") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const DensityMatrix r0(oracle::random_state(3, 3, seed));
      const DensityMatrix r1(oracle::random_state(3, 2, seed + 100));
      const double p0 = 0.2 + 0.03 * static_cast<double>(seed);
      CHECK(std::abs(helstrom_oracle(p0, r0, 1.0 - p0, r1) - oracle::helstrom(p0, r0.matrix(), 1.0 - p0, r1.matrix())) <=
            1e-12);
    }
  }
  SUBCASE("upper bounds any two-outcome measurement") {
    for (double p0 : {0.5, 0.6, 0.75}) {
      for (double beta : {0.2, 1.0, 3.0}) {
        const auto b = coarse_grain(Hamiltonian::unit_bandwidth_ladder(4), beta, 2);
        const auto enc = shift_encoding(b, {p0, 1.0 - p0});
        const auto& it = enc.ensemble.items();
        const double h = helstrom_oracle(it[0].p, it[0].rho, it[1].p, it[1].rho);
        CHECK(h + 1e-12 >= success_probability(enc.ensemble, projective_povm(b.partition)));
      }
    }
  }
  SUBCASE("equals C_max for a uniform prior") {
    const auto b = coarse_grain(Hamiltonian({0.0, 1.0}), 1.0, 2);
    const auto enc = shift_encoding(b, uniform(2));
    const auto& it = enc.ensemble.items();
    CHECK(helstrom_oracle(it[0].p, it[0].rho, it[1].p, it[1].rho) == doctest::Approx(0.7310585786300049).epsilon(1e-12));
  }
  SUBCASE("skewed prior exceeds C_max") {
    const auto b = coarse_grain(Hamiltonian({0.0, 1.0}), 1.0, 2);
    const auto enc = shift_encoding(b, {0.9, 0.1});
    const auto& it = enc.ensemble.items();
    const double h = helstrom_oracle(it[0].p, it[0].rho, it[1].p, it[1].rho);
    // both states are diagonal: (1 + sum_i |0.9 r_i - 0.1 r_{1-i}|) / 2
    const double a = oracle::logistic(1.0);
    const double expected = 0.5 * (1.0 + std::abs(0.9 * a - 0.1 * (1 - a)) + std::abs(0.9 * (1 - a) - 0.1 * a));
    CHECK(h == doctest::Approx(expected).epsilon(1e-12));
    CHECK(h == doctest::Approx(0.9).epsilon(1e-12));
  }
}

TEST_CASE("exhaustive permutation oracle") {
  for (double beta : {0.0, 1.0, 4.0}) {
    const auto b = coarse_grain(Hamiltonian::unit_bandwidth_ladder(6), beta, 3);
    const auto enc = shift_encoding(b, {0.5, 0.3, 0.2});
    const auto pv = projective_povm(b.partition);
    CHECK(exhaustive_permutation_oracle(enc.ensemble, pv) ==
          doctest::Approx(success_probability(enc.ensemble, pv)).epsilon(1e-14));
  }
  const auto big = coarse_grain(Hamiltonian::unit_bandwidth_ladder(9), 1.0, 9);
  const auto enc = shift_encoding(big, uniform(9));
  CHECK_THROWS_AS(exhaustive_permutation_oracle(enc.ensemble, projective_povm(big.partition)), InvalidInput);
}

TEST_CASE("decode rounds follow p(y|x)") {
  const auto b = coarse_grain(Hamiltonian({0.0, 1.0}), 1.0, 2);
  const auto enc = shift_encoding(b, uniform(2));
  const auto cond = conditional_distribution(enc.ensemble, projective_povm(b.partition));
  std::mt19937_64 rng(99);
  const int rounds = 20000;
  int hits = 0;
  for (int i = 0; i < rounds; ++i) hits += decode_round(cond, 0, rng) == 0;
  const double a = oracle::logistic(1.0);
  const double sigma = std::sqrt(a * (1 - a) / rounds);
  CHECK(std::abs(static_cast<double>(hits) / rounds - a) < 5 * sigma);
}
