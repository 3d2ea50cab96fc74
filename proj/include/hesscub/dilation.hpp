#ifndef HESSCUB_DILATION_HPP
#define HESSCUB_DILATION_HPP

#include "cubature.hpp"

#include <string>
#include <utility>

namespace hesscub {

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in [-tol, 0)
/// are treated as 0; anything lower is an error.
template <class Real>
CMatrix<Real> defect_sqrt(const CMatrix<Real> &a, Real tol = Real(1e-10)) {
  if (a.rows() == 0)
    return a;
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(hermitian_part<Real>(a));
  if (es.info() != Eigen::Success)
    throw NumericalError("hermitian eigensolver did not converge");
  RVector<Real> vals = es.eigenvalues();
  if (vals(0) < -tol)
    throw NumericalError("defect_sqrt: eigenvalue " + std::to_string(static_cast<double>(vals(0))) +
                         " below -tol; input is not positive semidefinite");
  CVector<Real> roots(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    using std::sqrt;
    roots(i) = Complex<Real>(vals(i) > Real(0) ? Real(sqrt(vals(i))) : Real(0), Real(0));
  }
  const auto &v = es.eigenvectors();
  return v * roots.asDiagonal() * v.adjoint();
}

namespace detail {

/// sqrt(I - T*T) and sqrt(I - TT*) from one SVD T = W S V*, so that
/// T D = D* T holds to rounding even when singular values touch 1.
template <class Real>
std::pair<CMatrix<Real>, CMatrix<Real>> defect_pair(const CMatrix<Real> &t) {
  Eigen::JacobiSVD<CMatrix<Real>> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto &s = svd.singularValues();
  CVector<Real> roots(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    using std::sqrt;
    const Real sigma = std::min(s(i), Real(1));
    roots(i) = Complex<Real>(sqrt((Real(1) - sigma) * (Real(1) + sigma)), Real(0));
  }
  const auto &w = svd.matrixU();
  const auto &v = svd.matrixV();
  return {v * roots.asDiagonal() * v.adjoint(), w * roots.asDiagonal() * w.adjoint()};
}

} // namespace detail

//-----------------------------------------------------------------------------
/// Unitary U on (N+1) copies of C^n whose compressions to the first copy
/// reproduce T^k for 0 <= k <= N.
template <class Real = double>
struct DilationResult {
  CMatrix<Real> unitary;
  int block_size = 0; // n
  int steps = 0;      // N
  Real radius = Real(1);

  /// Places a vector of the original space into the first block.
  CVector<Real> embed(const CVector<Real> &v) const {
    CVector<Real> out = CVector<Real>::Zero(unitary.rows());
    out.head(block_size) = v;
    return out;
  }

  Real unitarity_residual() const {
    const auto n = unitary.rows();
    return max_abs(CMatrix<Real>(unitary.adjoint() * unitary - CMatrix<Real>::Identity(n, n)));
  }

  /// max over k <= steps of ||P U^k P - T^k||_max, P the first-block projection.
  Real power_matching_residual(const CMatrix<Real> &t) const {
    const int n = block_size;
    CMatrix<Real> up = CMatrix<Real>::Identity(unitary.rows(), unitary.cols());
    CMatrix<Real> tp = CMatrix<Real>::Identity(n, n);
    Real worst(0);
    for (int k = 1; k <= steps; ++k) {
      up = unitary * up;
      tp = t * tp;
      worst = std::max(worst, max_abs(CMatrix<Real>(up.topLeftCorner(n, n) - tp)));
    }
    return worst;
  }
};

/// Egervary's N-step unitary dilation of a contraction:
///
///   [ T    0 ... 0  D*  ]
///   [ D    0 ... 0  -T* ]
///   [ 0    I        0   ]
///   [        ...        ]
///   [ 0    ...   I  0   ]
///
/// with D = sqrt(I - T*T), D* = sqrt(I - TT*).
template <class Real>
DilationResult<Real> unitary_power_dilation(const CMatrix<Real> &t, int steps,
                                            Real norm_tol = Real(1e-10)) {
  if (steps < 1)
    throw ValidationError("dilation needs at least one step");
  if (t.rows() != t.cols() || t.rows() == 0)
    throw ValidationError("dilation needs a nonempty square matrix");
  if (operator_norm<Real>(t) > Real(1) + norm_tol)
    throw ValidationError("matrix is not a contraction");

  const Eigen::Index n = t.rows();
  const CMatrix<Real> id = CMatrix<Real>::Identity(n, n);
  const auto [d_t, d_tstar] = detail::defect_pair<Real>(t);

  const Eigen::Index size = n * (steps + 1);
  DilationResult<Real> out;
  out.block_size = static_cast<int>(n);
  out.steps = steps;
  out.radius = Real(1);
  out.unitary = CMatrix<Real>::Zero(size, size);
  auto &u = out.unitary;
  const Eigen::Index last = n * steps;
  u.block(0, 0, n, n) = t;
  u.block(0, last, n, n) = d_tstar;
  u.block(n, 0, n, n) = d_t;
  u.block(n, last, n, n) = -t.adjoint();
  for (int b = 2; b <= steps; ++b)
    u.block(b * n, (b - 1) * n, n, n) = id;
  return out;
}

//-----------------------------------------------------------------------------

/// Cubature on the circle |z| = ||M_d|| exact for L(z^m), L(conj(z)^m),
/// m <= d, from the spectral resolution of the unitary dilation of M_d/||M_d||.
template <class Real>
Cubature<Real> harmonic_cubature(const MomentTable<Real> &table, int d,
                                 Real weight_tol = Real(1e-12), Real rank_tol = Real(1e-10)) {
  if (d < 0)
    throw DegreeError("degree must be nonnegative");
  if (table.max_total_degree() < 2 * d + 2)
    throw DegreeError("harmonic cubature of degree " + std::to_string(d) +
                      " needs max_total_degree >= " + std::to_string(2 * d + 2) + ", table has " +
                      std::to_string(table.max_total_degree()));
  const auto basis = orthonormal_basis(table, d, rank_tol);
  const auto h = build_hessenberg(table, basis, d);
  const Real mass = table.mass();
  const Real radius = operator_norm<Real>(h.matrix);

  using std::sqrt;
  const Real guard = Real(1e-14) * sqrt(table(1, 1).real() / mass);
  if (radius <= guard) {
    Cubature<Real> trivial;
    trivial.nodes.push_back(Complex<Real>(0));
    trivial.weights.push_back(mass);
    trivial.contract = Contract<Real>::harmonic(d, Real(0));
    return trivial;
  }

  const CMatrix<Real> t = h.matrix / Complex<Real>(radius, Real(0));
  const auto dil = unitary_power_dilation<Real>(t, std::max(d, 1));
  const CVector<Real> e = dil.embed(cyclic_vector_coords(basis, table));

  // merge on the unit circle, then push the nodes out to radius R
  auto rule = spectral_rule<Real>(dil.unitary, e, Real(1e-9), weight_tol * mass);
  if (rule.schur_residual > Real(1e-8))
    throw NumericalError("Schur factor of the dilation is not diagonal: off-diagonal " +
                         std::to_string(static_cast<double>(rule.schur_residual)));

  Cubature<Real> cub;
  cub.contract = Contract<Real>::harmonic(d, radius);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    using std::arg;
    cub.nodes.push_back(std::polar(radius, Real(arg(rule.nodes[k]))));
    cub.weights.push_back(rule.weights[k]);
  }
  return cub;
}

} // namespace hesscub

#endif // HESSCUB_DILATION_HPP
