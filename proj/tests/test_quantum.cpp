#include "doctest.h"

#include <Eigen/Eigenvalues>

#include "support/oracles.hpp"
#include "support/random.hpp"
#include "tomowitness/classical.hpp"
#include "tomowitness/quantum.hpp"

using namespace tomowitness;
using namespace tomowitness::testing;

namespace {

template <typename F>
Errc error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no tomowitness::Error thrown");
  return Errc::NonFinite;
}

}  // namespace

TEST_CASE("Bloch parametrization") {
  CHECK(linalg::max_abs(bloch_to_density({0, 0, 0}).matrix() - 0.5 * ComplexMatrix::Identity(2, 2)) < 1e-15);

  ComplexMatrix up = ComplexMatrix::Zero(2, 2);
  up(0, 0) = 1.0;
  CHECK(linalg::max_abs(bloch_to_density({0, 0, 1}).matrix() - up) < 1e-15);

  ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
  CHECK(linalg::max_abs(bloch_to_density({1, 0, 0}).matrix() - plus) < 1e-15);

  // rho_12 = (x - i y) / 2
  const DensityMatrix rho = bloch_to_density({0.1, 0.2, 0.3});
  CHECK(rho.matrix()(0, 1).real() == doctest::Approx(0.05));
  CHECK(rho.matrix()(0, 1).imag() == doctest::Approx(-0.1));

  Rng rng(1);
  for (int rep = 0; rep < 50; ++rep) {
    const DensityMatrix r = random_density(rng, 2);
    const BlochVector b = density_to_bloch(r);
    CHECK(b.norm() <= 1.0 + 1e-12);
    CHECK(linalg::max_abs(bloch_to_density(b).matrix() - r.matrix()) < 1e-14);
  }

  CHECK(error_code([] { bloch_to_density({1.0, 0.1, 0.0}); }) == Errc::BallViolation);
  CHECK(error_code([&] { density_to_bloch(random_density(rng, 3)); }) == Errc::WrongDimension);
}

TEST_CASE("DensityMatrix validation") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  CHECK(error_code([&] { DensityMatrix{m}; }) == Errc::NotDensityMatrix);
  m << 1.2, 0.0, 0.0, -0.2;
  CHECK(error_code([&] { DensityMatrix{m}; }) == Errc::NotDensityMatrix);
  m << 0.5, 0.1, 0.2, 0.5;
  CHECK(error_code([&] { DensityMatrix{m}; }) == Errc::NotDensityMatrix);
}

TEST_CASE("apply_gksl: commuting Hamiltonian gives zero") {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h.diagonal() << 1.0, -0.5, 2.0;
  ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
  rho.diagonal() << 0.2, 0.3, 0.5;
  CHECK(linalg::max_abs(apply_gksl(GkslGenerator(h, {}), DensityMatrix(rho))) == 0.0);
}

TEST_CASE("apply_gksl: Pauli channel matrix form") {
  Rng rng(2);
  for (int rep = 0; rep < 10; ++rep) {
    const double g1 = uniform(rng), g2 = uniform(rng), g3 = uniform(rng);
    const DensityMatrix rho = random_density(rng, 2);
    const ComplexMatrix& r = rho.matrix();
    const ComplexMatrix out = apply_gksl(example3_generator(g1, g2, g3), rho);
    CHECK(std::abs(out(0, 0) - (g1 + g2) * (r(1, 1) - r(0, 0))) < 1e-14);
    CHECK(std::abs(out(1, 1) - (g1 + g2) * (r(0, 0) - r(1, 1))) < 1e-14);
    CHECK(std::abs(out(0, 1) - (-r(0, 1) * (g1 + g2 + 2 * g3) + r(1, 0) * (g1 - g2))) < 1e-14);
    CHECK(std::abs(out(1, 0) - (-r(1, 0) * (g1 + g2 + 2 * g3) + r(0, 1) * (g1 - g2))) < 1e-14);
  }
}

TEST_CASE("apply_gksl: single jump population equation") {
  // d rho_11/dt = -|V_21|^2 rho_11 + |V_12|^2 rho_22 + kappa rho_12 + conj(kappa) rho_21,
  // kappa = V_11 conj(V_12) - (V^+ V)_21 / 2. With |V_12| = |V_21| this is the
  // symmetric form with gamma = |V_12|^2.
  Rng rng(4);
  for (int rep = 0; rep < 20; ++rep) {
    ComplexMatrix v = random_complex(rng, 2, 2);
    if (rep % 2 == 0) v(1, 0) = v(0, 1) * std::polar(1.0, uniform(rng, 0, 6.28));
    const DensityMatrix rho = random_density(rng, 2);
    const ComplexMatrix& r = rho.matrix();
    const Complex kappa = v(0, 0) * std::conj(v(0, 1)) - 0.5 * (v.adjoint() * v)(1, 0);
    const Complex expected = -std::norm(v(1, 0)) * r(0, 0) + std::norm(v(0, 1)) * r(1, 1) + kappa * r(0, 1) +
                             std::conj(kappa) * r(1, 0);
    const ComplexMatrix out = apply_gksl(GkslGenerator(ComplexMatrix::Zero(2, 2), {v}), rho);
    CHECK(std::abs(out(0, 0) - expected) < 1e-13);
    CHECK(std::abs(out(1, 1) + expected) < 1e-13);
    if (rep % 2 == 0) {
      const double gamma = std::norm(v(0, 1));
      CHECK(std::abs(out(0, 0) - (-gamma * r(0, 0) + gamma * r(1, 1) + kappa * r(0, 1) + std::conj(kappa) * r(1, 0))) <
            1e-13);
    }
  }
}

TEST_CASE("apply_gksl: output Hermitian and traceless") {
  Rng rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + rep % 3;
    const GkslGenerator l = random_gksl(rng, n, 1 + rep % 3);
    const ComplexMatrix out = apply_gksl(l, random_density(rng, n));
    CHECK(linalg::max_abs(out - out.adjoint()) <= 1e-12);
    CHECK(std::abs(out.trace()) <= 1e-12);
  }
}

TEST_CASE("liouvillian_matrix reproduces apply_gksl") {
  CHECK(linalg::max_abs(liouvillian_matrix(GkslGenerator::zero(3)).matrix) == 0.0);
  Rng rng(6);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + rep % 3;
    const GkslGenerator l = random_gksl(rng, n, 2);
    const Liouvillian lm = liouvillian_matrix(l);
    CHECK(lm.matrix.rows() == n * n);
    const ComplexMatrix x = random_complex(rng, n, n);
    const ComplexMatrix via_matrix = linalg::unvec(ComplexVector(lm.matrix * linalg::vec(x)), n);
    CHECK(linalg::max_abs(via_matrix - apply_gksl(l, x)) <= 1e-12);
    // Trace preservation: Tr[L(B)] = 0 for every matrix unit B.
    for (int b = 0; b < n * n; ++b) {
      Complex tr = 0.0;
      for (int i = 0; i < n; ++i) tr += lm.matrix(i + n * i, b);
      CHECK(std::abs(tr) <= 1e-10);
    }
  }
}

TEST_CASE("liouvillian_matrix: Bloch equations for H = w sx") {
  const double w = 0.8;
  const GkslGenerator l = example1_generator(w);
  // Bloch components of L(sigma_b / 2): x' = 0, y' = -2 w z, z' = 2 w y.
  auto bloch_rate = [&](int b) {
    const ComplexMatrix out = apply_gksl(l, 0.5 * pauli(b));
    return std::array<double, 3>{(pauli(1) * out).trace().real(), (pauli(2) * out).trace().real(),
                                 (pauli(3) * out).trace().real()};
  };
  const auto dx = bloch_rate(1), dy = bloch_rate(2), dz = bloch_rate(3);
  CHECK(std::abs(dx[0]) + std::abs(dx[1]) + std::abs(dx[2]) < 1e-14);
  CHECK(dy[2] == doctest::Approx(2 * w));
  CHECK(dz[1] == doctest::Approx(-2 * w));
  CHECK(std::abs(dy[0]) + std::abs(dy[1]) + std::abs(dz[0]) + std::abs(dz[2]) < 1e-14);
}

TEST_CASE("liouvillian_matrix: Pauli channel decay rates") {
  for (auto [g1, g2, g3] : {std::array<double, 3>{1, 1, 1}, {0.3, 1.1, 2.0}}) {
    const Liouvillian lm = liouvillian_matrix(example3_generator(g1, g2, g3));
    Eigen::ComplexEigenSolver<ComplexMatrix> es(lm.matrix);
    std::vector<double> re;
    for (Eigen::Index i = 0; i < 4; ++i) {
      CHECK(std::abs(es.eigenvalues()(i).imag()) < 1e-12);
      re.push_back(es.eigenvalues()(i).real());
    }
    std::sort(re.begin(), re.end());
    std::vector<double> expected{0.0, -2 * (g2 + g3), -2 * (g1 + g3), -2 * (g1 + g2)};
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < 4; ++i) CHECK(re[static_cast<std::size_t>(i)] == doctest::Approx(expected[static_cast<std::size_t>(i)]).epsilon(1e-12));
  }
}

TEST_CASE("evolve_density") {
  Rng rng(8);
  const GkslGenerator l3 = example3_generator(0.4, 0.9, 0.2);
  const DensityMatrix rho0 = random_density(rng, 2);
  CHECK(linalg::max_abs(evolve_density(l3, rho0, 0.0).matrix() - rho0.matrix()) <= 1e-15);

  for (double t : {0.1, 0.5, 2.0}) {
    const ComplexMatrix expected = pauli_channel(rho0.matrix(), 0.4, 0.9, 0.2, t);
    CHECK(linalg::max_abs(evolve_density(l3, rho0, t).matrix() - expected) <= 1e-12);
  }

  const GkslGenerator hamiltonian(random_hermitian(rng, 3), {});
  const DensityMatrix mixed = random_density(rng, 3);
  for (double t : {0.3, 4.0, 25.0}) {
    CHECK(std::abs(evolve_density(hamiltonian, mixed, t).purity() - mixed.purity()) <= 1e-10);
  }

  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + rep % 2;
    const GkslGenerator l = random_gksl(rng, n, 2);
    const DensityMatrix r = random_density(rng, n);
    for (double t : {0.0, 0.1, 1.0, 10.0}) {
      const DensityMatrix out = evolve_density(l, r, t);
      CHECK(std::abs(out.matrix().trace() - 1.0) <= 1e-10);
      CHECK(out.min_eigenvalue() >= -1e-9);
    }
    const DensityMatrix stepped = evolve_density(l, evolve_density(l, r, 0.4), 0.9);
    CHECK(linalg::max_abs(stepped.matrix() - evolve_density(l, r, 1.3).matrix()) <= 1e-9);
  }
}

TEST_CASE("diagonal_projection_generator") {
  const ComplexMatrix comp = ComplexMatrix::Identity(2, 2);
  Rng rng(9);
  CHECK(linalg::max_abs(diagonal_projection_generator(GkslGenerator(random_hermitian(rng, 2), {}), comp)) < 1e-15);

  const double g1 = 0.7, g2 = 1.9;
  RealMatrix expected(2, 2);
  expected << -g1, g2, g1, -g2;
  CHECK(linalg::max_abs(diagonal_projection_generator(example2_generator(1.3, g1, g2, 0.5), comp) - expected) <
        1e-14);

  RealMatrix lowering(2, 2);
  lowering << 0, 1, 0, -1;
  CHECK(linalg::max_abs(diagonal_projection_generator(GkslGenerator(ComplexMatrix::Zero(2, 2), {sigma_minus()}), comp) -
                        lowering) < 1e-15);

  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + rep % 3;
    const GkslGenerator l = random_gksl(rng, n, 1 + rep % 3);
    const ComplexMatrix basis = Eigen::HouseholderQR<ComplexMatrix>(random_complex(rng, n, n)).householderQ();
    const RealMatrix m = diagonal_projection_generator(l, basis);
    CHECK(is_kolmogorov(m, 1e-12 * std::max(1.0, linalg::max_abs(m))).verdict);
  }

  ComplexMatrix skew = comp;
  skew(0, 1) = 0.1;
  CHECK(error_code([&] { diagonal_projection_generator(example3_generator(1, 1, 1), skew); }) ==
        Errc::BasisNotOrthonormal);
}

TEST_CASE("diagonal_projection_map") {
  const ComplexMatrix comp = ComplexMatrix::Identity(2, 2);
  const GkslGenerator l3 = example3_generator(0.3, 0.8, 1.5);
  CHECK(linalg::max_abs(diagonal_projection_map(l3, comp, 0.0) - RealMatrix::Identity(2, 2)) < 1e-15);
  for (double t : {0.2, 1.0, 3.0}) {
    CHECK(linalg::max_abs(diagonal_projection_map(l3, comp, t) - flip_map(0.3 + 0.8, t)) < 1e-12);
    CHECK(linalg::max_abs(diagonal_projection_map(l3, comp, t) -
                          linalg::matrix_exponential(diagonal_projection_generator(l3, comp), t)) < 1e-12);
  }

  Rng rng(10);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + rep % 3;
    const GkslGenerator l = random_gksl(rng, n, 2);
    const ComplexMatrix basis = Eigen::HouseholderQR<ComplexMatrix>(random_complex(rng, n, n)).householderQ();
    for (double t : {0.1, 1.0, 10.0}) {
      const auto d = is_stochastic(diagonal_projection_map(l, basis, t), 1e-9);
      CHECK(d.verdict);
    }
  }
}
