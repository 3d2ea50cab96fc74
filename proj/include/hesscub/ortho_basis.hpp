#ifndef HESSCUB_ORTHO_BASIS_HPP
#define HESSCUB_ORTHO_BASIS_HPP

#include "moments.hpp"

#include <optional>
#include <string>
#include <variant>

namespace hesscub {

namespace detail {

/// Outcome of a pivot-monitored Cholesky factorization G = L L^*.
template <class Real>
struct CholeskyResult {
  CMatrix<Real> lower;        // valid in rows/cols [0, rank)
  int rank = 0;               // number of accepted pivots
  Real failed_pivot = Real(0); // Schur complement at step `rank` when rank < n
};

/// Column Cholesky that stops at the first pivot below `threshold`.
template <class Real>
CholeskyResult<Real> monitored_cholesky(const CMatrix<Real> &g, Real threshold) {
  const Eigen::Index n = g.rows();
  CholeskyResult<Real> out;
  out.lower = CMatrix<Real>::Zero(n, n);
  auto &l = out.lower;
  for (Eigen::Index r = 0; r < n; ++r) {
    Real pivot = g(r, r).real();
    for (Eigen::Index k = 0; k < r; ++k) {
      using std::norm;
      pivot -= norm(l(r, k));
    }
    if (!(pivot >= threshold)) {
      out.rank = static_cast<int>(r);
      out.failed_pivot = pivot;
      return out;
    }
    using std::sqrt;
    const Real diag = sqrt(pivot);
    l(r, r) = Complex<Real>(diag, Real(0));
    for (Eigen::Index i = r + 1; i < n; ++i) {
      Complex<Real> sum = g(i, r);
      for (Eigen::Index k = 0; k < r; ++k)
        sum -= l(i, k) * std::conj(l(r, k));
      l(i, r) = sum / diag;
    }
  }
  out.rank = static_cast<int>(n);
  return out;
}

/// Coefficient rows of the polynomials orthonormalized by G = L L^*:
/// rows = conj(L^{-1}) applied to the input rows.
template <class Real>
CMatrix<Real> orthonormal_rows(const CMatrix<Real> &lower) {
  const Eigen::Index n = lower.rows();
  CMatrix<Real> inv = lower.template triangularView<Eigen::Lower>().solve(CMatrix<Real>::Identity(n, n));
  return inv.conjugate();
}

} // namespace detail

//-----------------------------------------------------------------------------
/// Orthonormal polynomials P_0..P_m with positive leading coefficients.
/// Row j of coeffs holds the monomial coefficients of P_j (lower triangular).
template <class Real = double>
struct OrthoBasis {
  int degree = 0;
  CMatrix<Real> coeffs;
  RVector<Real> leading;
};

/// First degree at which the Gram pivot falls below rank_tol * s(0,0).
template <class Real = double>
struct DegeneracyReport {
  int degree = 0;
  Real pivot = Real(0);
};

template <class Real>
using OrthoResult = std::variant<OrthoBasis<Real>, DegeneracyReport<Real>>;

/// Gram-Schmidt on 1, z, ..., z^d in the L-inner product, carried out as a
/// Cholesky factorization of the monomial Gram matrix. Returns a
/// DegeneracyReport when L fails to be strictly positive on Hermitian squares
/// of degree <= d; throws ValidationError when the Gram matrix is indefinite.
template <class Real>
OrthoResult<Real> orthonormalize(const MomentTable<Real> &table, int d,
                                 Real rank_tol = Real(1e-10)) {
  const CMatrix<Real> g = gram_matrix(table, d);
  const Real threshold = rank_tol * table.mass();
  auto chol = detail::monitored_cholesky(g, threshold);
  if (chol.rank <= d) {
    if (chol.failed_pivot < -threshold)
      throw ValidationError("Gram matrix is not positive semidefinite (pivot " +
                            std::to_string(static_cast<double>(chol.failed_pivot)) +
                            " at degree " + std::to_string(chol.rank) +
                            "): not a positive functional");
    return DegeneracyReport<Real>{chol.rank, chol.failed_pivot};
  }
  OrthoBasis<Real> basis;
  basis.degree = d;
  basis.coeffs = detail::orthonormal_rows(chol.lower);
  basis.leading.resize(d + 1);
  for (int j = 0; j <= d; ++j) {
    // keep the triangle exact and the leading coefficient real
    for (int m = j + 1; m <= d; ++m)
      basis.coeffs(j, m) = Complex<Real>(0);
    basis.leading(j) = Real(1) / chol.lower(j, j).real();
    basis.coeffs(j, j) = Complex<Real>(basis.leading(j), Real(0));
  }
  return basis;
}

/// Like orthonormalize, but degeneracy is an error.
template <class Real>
OrthoBasis<Real> orthonormal_basis(const MomentTable<Real> &table, int d,
                                   Real rank_tol = Real(1e-10)) {
  auto result = orthonormalize(table, d, rank_tol);
  if (auto *report = std::get_if<DegeneracyReport<Real>>(&result))
    throw DegeneracyError(report->degree,
                          "functional is degenerate at degree " + std::to_string(report->degree) +
                              " (Gram pivot " + std::to_string(static_cast<double>(report->pivot)) +
                              "); use d < " + std::to_string(report->degree));
  return std::get<OrthoBasis<Real>>(std::move(result));
}

/// Coordinates of the constant 1 in the basis {P_j}: (sqrt(s00), 0, ..., 0).
template <class Real>
CVector<Real> cyclic_vector_coords(const OrthoBasis<Real> &basis, const MomentTable<Real> &table) {
  CVector<Real> e = CVector<Real>::Zero(basis.degree + 1);
  using std::sqrt;
  e(0) = Complex<Real>(sqrt(table.mass()), Real(0));
  return e;
}

/// P_j(z) by Horner's rule.
template <class Real>
Complex<Real> evaluate(const OrthoBasis<Real> &basis, int j, Complex<Real> z) {
  if (j < 0 || j > basis.degree)
    throw DegreeError("polynomial index " + std::to_string(j) + " outside basis of degree " +
                      std::to_string(basis.degree));
  Complex<Real> acc(0);
  for (int m = j; m >= 0; --m)
    acc = acc * z + basis.coeffs(j, m);
  return acc;
}

/// <p, q>_L for coefficient rows p, q (monomial coefficients, ascending).
template <class Real, class DerivedP, class DerivedQ>
Complex<Real> inner_product(const MomentTable<Real> &table, const Eigen::MatrixBase<DerivedP> &p,
                            const Eigen::MatrixBase<DerivedQ> &q) {
  Complex<Real> acc(0);
  for (Eigen::Index m = 0; m < p.size(); ++m) {
    if (p(m) == Complex<Real>(0))
      continue;
    for (Eigen::Index n = 0; n < q.size(); ++n)
      if (q(n) != Complex<Real>(0))
        acc += p(m) * std::conj(q(n)) * table(static_cast<int>(m), static_cast<int>(n));
  }
  return acc;
}

} // namespace hesscub

#endif // HESSCUB_ORTHO_BASIS_HPP
