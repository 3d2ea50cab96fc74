// Seeded property checks over random atomic measures and random matrices.

#include <hesscub/hesscub.hpp>
#include <hesscub/quad.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace hesscub;
using cd = std::complex<double>;

namespace {

struct Case {
  AtomicMeasure<double> mu;
  int d;
};

// count in 1..12, d <= min(8, count - 1) so the Gram matrix stays definite
Case random_case(std::mt19937_64 &rng) {
  const int count = std::uniform_int_distribution<int>(1, 12)(rng);
  const int top = std::min(8, count - 1);
  const int d = std::uniform_int_distribution<int>(0, top)(rng);
  return {random_atoms(count, rng()), d};
}

CMatrix<double> random_matrix(std::mt19937_64 &rng, int n, double scale = 1.0) {
  std::normal_distribution<double> g;
  CMatrix<double> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = cd(g(rng), g(rng)) * scale;
  return m;
}

} // namespace

TEST(Properties, GramIsPositiveSemidefiniteAndAdditive) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_atoms(std::uniform_int_distribution<int>(1, 8)(rng), rng());
    auto b = random_atoms(std::uniform_int_distribution<int>(1, 8)(rng), rng());
    const int D = 8;
    auto ta = moments_from_atoms(a, D), tb = moments_from_atoms(b, D), tab = moments_from_atoms(a + b, D);
    for (int j = 0; j <= D; ++j)
      for (int k = 0; j + k <= D; ++k) {
        EXPECT_LT(std::abs(tab(j, k) - ta(j, k) - tb(j, k)), 1e-13);
        EXPECT_EQ(ta(j, k), std::conj(ta(k, j)));
      }
    auto g = gram_matrix(tab, 4);
    EXPECT_EQ(CMatrix<double>(g.adjoint()), g);
    EXPECT_GE(hermitian_eigenvalues<double>(g)(0), -1e-12 * g.cwiseAbs().maxCoeff());
  }
}

TEST(Properties, CommutatorStructure) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = random_case(rng);
    auto mu = c.mu.cast<quad>();
    auto t = moments_from_atoms(mu, 2 * c.d + 2);
    auto h = build_hessenberg(t, orthonormal_basis(t, c.d, quad(1e-20)), c.d);
    auto r = self_commutator(h);
    const double tol = static_cast<double>(r.tolerance);
    const double scale = static_cast<double>(r.norm_sq);
    EXPECT_EQ(CMatrix<quad>(r.commutator.adjoint()), r.commutator);
    EXPECT_LE(std::abs(static_cast<double>(r.trace)), 1e-20 * (1 + scale));
    EXPECT_LE(r.negative_count, 1);
    EXPECT_GE(static_cast<double>(r.lambda_minus), static_cast<double>(r.defect_sq_bound) - tol);
    EXPECT_GE(static_cast<double>(r.corrected_min), -tol);
    // a 1x1 matrix is always normal, so at d = 0 only one direction holds
    if (c.d == 0)
      EXPECT_TRUE(!r.equivalences.defect_vanishes || r.equivalences.normal) << trial;
    else
      EXPECT_TRUE(r.equivalences.agree()) << trial;
  }
}

TEST(Properties, CertificateRejectsOversizedSupport) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = std::uniform_int_distribution<int>(1, 6)(rng);
    auto mu = random_atoms(d + 3 + static_cast<int>(rng() % 4), rng()).cast<quad>();
    auto t = moments_from_atoms(mu, 2 * d + 2);
    auto h = build_hessenberg(t, orthonormal_basis(t, d, quad(1e-20)), d);
    auto r = self_commutator(h);
    EXPECT_TRUE(r.equivalences.none()) << trial;
    EXPECT_GT(static_cast<double>(h.defect), 1e-4 * static_cast<double>(operator_norm<quad>(h.matrix)));
  }
}

TEST(Properties, CongruenceForRandomHessenberg) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 9)(rng);
    HessenbergData<double> h;
    h.d = n - 1;
    h.matrix = random_matrix(rng, n, std::exp(std::normal_distribution<double>(0, 1)(rng)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j + 1 < i; ++j)
        h.matrix(i, j) = 0;
    const double nrm = operator_norm<double>(h.matrix);
    EXPECT_LE(sigma_form(h).congruence_residual, 1e-12 * (1 + nrm * nrm));
  }
}

TEST(Properties, DilationMatchesPowers) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    const int steps = std::uniform_int_distribution<int>(1, 8)(rng);
    CMatrix<double> t = random_matrix(rng, n);
    t /= cd(operator_norm<double>(t) / std::uniform_real_distribution<double>(0.1, 1.0)(rng), 0);
    auto dil = unitary_power_dilation<double>(t, steps);
    EXPECT_EQ(dil.unitary.rows(), n * (steps + 1));
    EXPECT_LE(dil.unitarity_residual(), 1e-10);
    EXPECT_LE(dil.power_matching_residual(t), 1e-8);
  }
}

TEST(Properties, HarmonicCubatureInvariants) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const int count = std::uniform_int_distribution<int>(1, 10)(rng);
    const int d = std::uniform_int_distribution<int>(0, std::min(5, count - 1))(rng);
    auto t = moments_from_atoms(random_atoms(count, rng()), 2 * d + 2);
    auto cub = harmonic_cubature(t, d);
    const double r = *cub.contract.radius;
    EXPECT_LE(cub.size(), static_cast<std::size_t>((d + 1) * (d + 1)));
    EXPECT_NEAR(cub.mass(), t.mass(), 1e-10 * t.mass());
    for (std::size_t k = 0; k < cub.size(); ++k) {
      EXPECT_GT(cub.weights[k], 0.0);
      EXPECT_NEAR(std::abs(cub.nodes[k]), r, 1e-10);
    }
    EXPECT_TRUE(verify_exactness(cub, t).passed) << trial;
  }
}

TEST(Properties, GaussianNodesLieInNumericalRange) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = std::uniform_int_distribution<int>(0, 5)(rng);
    auto t = moments_from_atoms(random_atoms(d + 1, rng()), 2 * d + 2);
    auto basis = orthonormal_basis(t, d);
    auto h = build_hessenberg(t, basis, d);
    auto cub = normal_quadrature(h, basis, t);
    const double nrm = operator_norm<double>(h.matrix);
    for (const auto &z : cub.nodes)
      EXPECT_LE(std::abs(z), nrm + 1e-8);
    EXPECT_NEAR(cub.mass(), t.mass(), 1e-10 * t.mass());
  }
}
