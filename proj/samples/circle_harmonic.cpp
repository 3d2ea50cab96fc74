// Harmonic cubature for arc length on the unit circle, where no Gaussian rule exists.

#include <hesscub/hesscub.hpp>

#include <cstdio>

int main() {
  using namespace hesscub;
  const int d = 3;
  const auto table = circle_arclength<double>(2 * d + 2);

  const auto h = build_hessenberg(table, orthonormal_basis(table, d), d);
  const auto report = self_commutator(h);
  std::printf("certificate: %s (lambda_minus = %.3f)\n", report.equivalences.all() ? "pass" : "fail",
              report.lambda_minus);

  const auto cub = harmonic_cubature(table, d);
  std::printf("%zu nodes on |z| = %.3f\n", cub.size(), *cub.contract.radius);
  for (std::size_t k = 0; k < cub.size(); ++k)
    std::printf("  arg %+.6f  weight %.6f\n", std::arg(cub.nodes[k]), cub.weights[k]);
  std::printf("max exactness residual %.3e\n", verify_exactness(cub, table).max_residual);
}
