#include "thermocode/qmatrix.hpp"
#include "thermocode/thermal.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace thermocode;

namespace {

DensityMatrix random_density(int d, std::uint64_t seed, int rank = -1) {
  return DensityMatrix(oracle::random_state(d, rank < 0 ? d : rank, seed));
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("DensityMatrix rejects malformed inputs") {
  CMatrix m = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{m}, InvalidInput);  // trace 2
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{m}, InvalidInput);  // not PSD
  CMatrix h = CMatrix::Identity(2, 2) / 2.0;
  h(0, 1) = Complex(0.1, 0.0);
  CHECK_THROWS_AS(DensityMatrix{h}, InvalidInput);  // not Hermitian
  CHECK_THROWS_AS(Unitary{CMatrix::Identity(2, 2) * 1.01}, InvalidInput);
}

TEST_CASE("tensor") {
  SUBCASE("identity case") {
    const Unitary i4 = tensor(Unitary::identity(2), Unitary::identity(2));
    CHECK(max_abs(i4.matrix() - CMatrix::Identity(4, 4)) == 0.0);
  }
  SUBCASE("diagonal product") {
    const double p = 0.3;
    const auto a = DensityMatrix::from_diagonal(std::vector<double>{1.0, 0.0});
    const auto b = DensityMatrix::from_diagonal(std::vector<double>{p, 1.0 - p});
    const auto ab = tensor(a, b);
    CHECK(ab.dim() == 4);
    const std::vector<double> expected{p, 1.0 - p, 0.0, 0.0};
    for (int i = 0; i < 4; ++i) CHECK(ab(i, i).real() == doctest::Approx(expected[i]).epsilon(1e-15));
    CHECK(max_abs(ab.matrix() - ab.matrix().diagonal().asDiagonal().toDenseMatrix()) == 0.0);
  }
  SUBCASE("trace factorizes and matches element-wise Kronecker") {
    const CMatrix a = oracle::random_state(3, 3, 11) * 2.0;
    const CMatrix b = oracle::random_state(2, 2, 12) * 3.0;
    const CMatrix ab = kron(a, b);
    CHECK(std::abs(ab.trace() - a.trace() * b.trace()) < 1e-12);
    CHECK(max_abs(ab - oracle::kron(a, b)) == 0.0);
  }
}

TEST_CASE("partial_trace") {
  SUBCASE("product factorization") {
    const auto a = random_density(3, 21);
    const auto b = random_density(4, 22);
    const auto ab = tensor(a, b);
    CHECK(max_abs(partial_trace(ab, 3, 4, Keep::A).matrix() - a.matrix()) <= 1e-12);
    CHECK(max_abs(partial_trace(ab, 3, 4, Keep::B).matrix() - b.matrix()) <= 1e-12);
  }
  SUBCASE("maximally correlated diagonal state has a maximally mixed marginal") {
    const int n = 3;
    std::vector<double> diag(n * n, 0.0);
    for (int x = 0; x < n; ++x) diag[x * n + x] = 1.0 / n;
    const auto joint = DensityMatrix::from_diagonal(diag);
    const auto a = partial_trace(joint, n, n, Keep::A);
    CHECK(max_abs(a.matrix() - CMatrix::Identity(n, n) / 3.0) <= 1e-15);
  }
  SUBCASE("trace preservation and agreement with the loop oracle") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto rho = random_density(6, 100 + seed);
      for (Keep k : {Keep::A, Keep::B}) {
        const auto red = partial_trace(rho, 2, 3, k);
        CHECK(std::abs(red.matrix().trace().real() - 1.0) <= 1e-12);
        const CMatrix ref = oracle::partial_trace(rho.matrix(), 2, 3, k == Keep::A);
        CHECK(max_abs(red.matrix() - ref) <= 1e-14);
      }
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(partial_trace(random_density(6, 1), 4, 2, Keep::A), InvalidInput);
  }
}

TEST_CASE("dephase_register") {
  SUBCASE("classical-quantum state is a fixed point") {
    const std::vector<double> p{0.2, 0.5, 0.3};
    CMatrix cq = CMatrix::Zero(6, 6);
    for (int x = 0; x < 3; ++x) cq.block(x * 2, x * 2, 2, 2) = p[x] * random_density(2, 40 + x).matrix();
    const DensityMatrix rho(cq);
    CHECK(max_abs(dephase_register(rho, 3, 2).matrix() - rho.matrix()) == 0.0);
  }
  SUBCASE("rank never decreases, idempotent, trace preserving") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const int rank = 1 + static_cast<int>(seed % 4);
      const auto rho = random_density(6, 300 + seed, rank);
      const auto deph = dephase_register(rho, 2, 3);
      CHECK(numerical_rank(deph).value >= numerical_rank(rho).value);
      CHECK(max_abs(dephase_register(deph, 2, 3).matrix() - deph.matrix()) == 0.0);
      CHECK(std::abs(deph.matrix().trace().real() - 1.0) <= 1e-12);
      // diagonal blocks are untouched
      for (int x = 0; x < 2; ++x)
        CHECK(max_abs(deph.matrix().block(3 * x, 3 * x, 3, 3) - rho.matrix().block(3 * x, 3 * x, 3, 3)) == 0.0);
    }
  }
}

TEST_CASE("haar_unitary") {
  SUBCASE("d = 1 is a phase") {
    const auto u = haar_unitary(1, 7);
    CHECK(std::abs(std::abs(u(0, 0)) - 1.0) <= 1e-12);
  }
  SUBCASE("deterministic per seed") {
    CHECK(max_abs(haar_unitary(5, 42).matrix() - haar_unitary(5, 42).matrix()) == 0.0);
    CHECK(max_abs(haar_unitary(5, 42).matrix() - haar_unitary(5, 43).matrix()) > 1e-3);
  }
  SUBCASE("column norms") {
    const auto u = haar_unitary(16, 3);
    for (int j = 0; j < 16; ++j) CHECK(std::abs(u.matrix().col(j).norm() - 1.0) <= 1e-10);
  }
  SUBCASE("first moment: E|u_00|^2 = 1/d") {
    const int d = 4;
    double acc = 0.0;
    const int samples = 4000;
    for (int s = 0; s < samples; ++s) acc += std::norm(haar_unitary(d, 1000 + s)(0, 0));
    // Var |u_00|^2 = (d-1)/(d^2 (d+1)) = 0.0375; 5 sigma of the sample mean ~ 0.0153
    CHECK(std::abs(acc / samples - 1.0 / d) < 0.0153);
  }
  SUBCASE("diagonal phases are uniform, not biased toward the real axis") {
    // QR without the phase fix gives a positive real R diagonal; check the
    // mean of u_00 / |u_00| vanishes.
    Complex acc = 0.0;
    const int samples = 4000;
    for (int s = 0; s < samples; ++s) {
      const Complex u = haar_unitary(3, 5000 + s)(0, 0);
      acc += u / std::abs(u);
    }
    CHECK(std::abs(acc / static_cast<double>(samples)) < 5.0 / std::sqrt(samples));
  }
}

TEST_CASE("numerical_rank") {
  CHECK(numerical_rank(DensityMatrix::maximally_mixed(5)).value == 5);
  CVector psi = CVector::Zero(4);
  psi(0) = 1.0;
  CHECK(numerical_rank(DensityMatrix::pure(psi)).value == 1);

  SUBCASE("monotone in tolerance") {
    const auto rho = DensityMatrix::from_diagonal(std::vector<double>{0.9, 0.09, 0.009, 0.001});
    int previous = std::numeric_limits<int>::max();
    for (double t : {0.0, 1e-12, 1e-3, 5e-3, 0.05, 0.5, 1.0}) {
      const auto r = numerical_rank(rho, t);
      CHECK(r.value <= previous);
      previous = r.value;
    }
    CHECK(numerical_rank(rho, 5e-3).value == 3);
    CHECK(numerical_rank(rho, 0.05).value == 2);
  }
  SUBCASE("report carries singular values and the applied cutoff") {
    const auto r = numerical_rank(DensityMatrix::from_diagonal(std::vector<double>{0.75, 0.25}));
    REQUIRE(r.singular_values.size() == 2);
    CHECK(r.singular_values[0] == doctest::Approx(0.75));
    CHECK(r.tolerance == doctest::Approx(0.75e-10));
  }
  SUBCASE("Gibbs states are full rank") {
    const Hamiltonian gapped({0.0, 0.4, 1.1, 2.0});
    for (double beta : {0.0, 0.1, 1.0, 10.0}) CHECK(numerical_rank(gibbs_state(gapped, beta)).value == 4);
  }
}

TEST_CASE("von_neumann_entropy") {
  CVector psi = CVector::Zero(3);
  psi(1) = 1.0;
  CHECK(von_neumann_entropy(DensityMatrix::pure(psi)) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(4)) == doctest::Approx(2.0).epsilon(1e-14));

  const double a = oracle::logistic(1.0);
  const double expected = oracle::binary_entropy(a);
  CHECK(expected == doctest::Approx(0.8399415379831693).epsilon(1e-14));
  const auto rho = DensityMatrix::from_diagonal(std::vector<double>{a, 1.0 - a});
  CHECK(std::abs(von_neumann_entropy(rho) - 0.8399415379831693) <= 1e-12);

  SUBCASE("bounded by log2 d") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto r = random_density(5, seed);
      const double s = von_neumann_entropy(r);
      CHECK(s >= 0.0);
      CHECK(s <= std::log2(5.0) + 1e-12);
    }
  }
}

TEST_CASE("unitary invariance of entropy and rank over 100 seeded pairs") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int d = 2 + static_cast<int>(seed % 5);
    const int rank = 1 + static_cast<int>(seed % d);
    const auto rho = random_density(d, 7000 + seed, rank);
    const auto u = haar_unitary(d, 9000 + seed);
    const auto rotated = u.apply(rho);
    CHECK(std::abs(von_neumann_entropy(rotated) - von_neumann_entropy(rho)) <= 1e-9);
    CHECK(numerical_rank(rotated).value == numerical_rank(rho).value);
  }
}

TEST_CASE("relative_entropy") {
  const auto rho = random_density(3, 77);
  CHECK(relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-12));

  CVector zero = CVector::Zero(2);
  zero(0) = 1.0;
  CHECK(relative_entropy(DensityMatrix::pure(zero), DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(1.0).epsilon(1e-13));

  SUBCASE("support violation is infinite") {
    CVector one = CVector::Zero(2);
    one(1) = 1.0;
    CHECK(std::isinf(relative_entropy(DensityMatrix::maximally_mixed(2), DensityMatrix::pure(one))));
    // rho inside the support of sigma stays finite
    CHECK(std::isfinite(relative_entropy(DensityMatrix::pure(one), DensityMatrix::maximally_mixed(2))));
  }
  SUBCASE("against the Gibbs closed form") {
    const Hamiltonian h({0.0, 0.3, 0.7, 1.0});
    for (double beta : {0.0, 0.5, 2.0}) {
      const auto gamma = gibbs_state(h, beta);
      const auto r = random_density(4, 500 + static_cast<std::uint64_t>(beta * 10));
      // D = -S(rho) + beta <H>/ln2 + log2 Z, with Z from scalar exponentials
      double u = 0.0;
      for (int i = 0; i < 4; ++i) u += r(i, i).real() * h.energies()[i];
      double z = 0.0;
      for (double e : h.energies()) z += std::exp(-beta * e);
      const double closed = -von_neumann_entropy(r) + beta * u / std::log(2.0) + std::log2(z);
      CHECK(std::abs(relative_entropy(r, gamma) - closed) <= 1e-10);
    }
  }
  SUBCASE("non-negative on random pairs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      CHECK(relative_entropy(random_density(3, seed), random_density(3, seed + 50)) >= 0.0);
    }
  }
  CHECK_THROWS_AS(relative_entropy(random_density(2, 1), random_density(3, 2)), InvalidInput);
}
