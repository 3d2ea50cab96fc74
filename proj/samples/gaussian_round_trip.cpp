// Recover a random atomic measure from its moments.

#include <hesscub/hesscub.hpp>
#include <hesscub/quad.hpp>

#include <cstdio>

int main(int argc, char **argv) {
  using namespace hesscub;
  const int d = argc > 1 ? std::atoi(argv[1]) : 6;
  const auto mu = random_atoms(d + 1, 2024).cast<quad>();
  const auto table = moments_from_atoms(mu, 2 * d + 2);

  const auto basis = orthonormal_basis(table, d, quad(1e-20));
  const auto h = build_hessenberg(table, basis, d);
  const auto report = self_commutator(h);
  std::printf("d = %d, defect = %.3e, lambda_minus = %.3e\n", d, double(h.defect),
              double(report.lambda_minus));

  const auto cub = normal_quadrature(h, basis, table);
  for (std::size_t k = 0; k < cub.size(); ++k)
    std::printf("  node % .12f %+.12fi  weight %.12f\n", double(cub.nodes[k].real()),
                double(cub.nodes[k].imag()), double(cub.weights[k]));
  std::printf("matched error %.3e, exactness residual %.3e\n", double(match_atoms(cub, mu)),
              double(verify_exactness(cub, table).max_residual));
}
