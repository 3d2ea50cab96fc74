#ifndef HESSCUB_HESSENBERG_HPP
#define HESSCUB_HESSENBERG_HPP

#include "ortho_basis.hpp"

#include <string>
#include <vector>

namespace hesscub {

//-----------------------------------------------------------------------------
/// Compressed multiplier pi_d M_z pi_d in the orthonormal basis P_0..P_d.
///
/// matrix(j,k) = <z P_k, P_j>_L. `defect` is ||(I - pi_d)(z P_d)||_L, the
/// norm of the part of z P_d that leaves C_d[z]; it is computed from moments
/// without building P_{d+1}. `overflow` is the Gram matrix of the leaving
/// parts (I - pi_d)(z P_k), obtained independently as <zP_k, zP_j> - (M^*M)(j,k).
template <class Real = double>
struct HessenbergData {
  int d = 0;
  CMatrix<Real> matrix;
  Real defect = Real(0);
  Real defect_sq_raw = Real(0);      // before clamping at 0
  Real structure_residual = Real(0); // max |a_jk| over j > k + 1
  CMatrix<Real> overflow;
};

namespace detail {

/// (conj(A) X B^T)(j,k) = sum_{n,m} conj(A(j,n)) X(n,m) B(k,m): the L-form of
/// coefficient rows of A against rows of B with a shifted moment array X.
template <class Real>
CMatrix<Real> bilinear(const CMatrix<Real> &a, const CMatrix<Real> &x, const CMatrix<Real> &b) {
  return a.conjugate() * x * b.transpose();
}

/// X(n,m) = s(m + shift_z, n + shift_zbar) for n,m in [0, size).
template <class Real>
CMatrix<Real> shifted_moments(const MomentTable<Real> &table, int size, int shift_z,
                              int shift_zbar) {
  CMatrix<Real> x(size, size);
  for (int n = 0; n < size; ++n)
    for (int m = 0; m < size; ++m)
      x(n, m) = table(m + shift_z, n + shift_zbar);
  return x;
}

} // namespace detail

template <class Real>
HessenbergData<Real> build_hessenberg(const MomentTable<Real> &table, const OrthoBasis<Real> &basis,
                                      int d) {
  if (d < 0 || d > basis.degree)
    throw DegreeError("Hessenberg order " + std::to_string(d) + " exceeds basis degree " +
                      std::to_string(basis.degree));
  if (table.max_total_degree() < 2 * d + 2)
    throw DegreeError("Hessenberg matrix of order " + std::to_string(d) +
                      " needs max_total_degree >= " + std::to_string(2 * d + 2) + ", table has " +
                      std::to_string(table.max_total_degree()));
  {
    using std::abs;
    using std::sqrt;
    const Real expected = Real(1) / sqrt(table.mass());
    if (abs(basis.leading(0) - expected) > Real(1e-8) * expected)
      throw ValidationError("orthonormal basis was not built from this moment table");
  }

  const CMatrix<Real> c = basis.coeffs.topLeftCorner(d + 1, d + 1);
  HessenbergData<Real> h;
  h.d = d;
  h.matrix = detail::bilinear(c, detail::shifted_moments(table, d + 1, 1, 0), c);
  const CMatrix<Real> zz = detail::bilinear(c, detail::shifted_moments(table, d + 1, 1, 1), c);

  for (int k = 0; k <= d; ++k)
    for (int j = k + 2; j <= d; ++j) {
      using std::abs;
      h.structure_residual = std::max(h.structure_residual, Real(abs(h.matrix(j, k))));
    }

  h.overflow = hermitian_part<Real>(zz - h.matrix.adjoint() * h.matrix);

  const Real top = zz(d, d).real();
  Real captured(0);
  for (int j = 0; j <= d; ++j) {
    using std::norm;
    captured += norm(h.matrix(j, d));
  }
  h.defect_sq_raw = top - captured;
  if (h.defect_sq_raw < Real(0)) {
    // negative values are cancellation noise; beyond half the working
    // digits nothing meaningful is left of the defect
    using std::sqrt;
    if (h.defect_sq_raw < -sqrt(machine_epsilon<Real>()) * std::max(top, Real(1)))
      throw NumericalError("defect^2 = " + std::to_string(static_cast<double>(h.defect_sq_raw)) +
                           " is negative beyond roundoff; moment data too ill-conditioned at d = " +
                           std::to_string(d));
    h.defect = Real(0);
  } else {
    using std::sqrt;
    h.defect = sqrt(h.defect_sq_raw);
  }
  return h;
}

//-----------------------------------------------------------------------------

/// The four equivalent normality conditions, each evaluated on its own route.
struct NormalityConditions {
  bool normal = false;             // [M*,M] vanishes
  bool det_certificate = false;    // det([M*,M] + eps I) >= 0, i.e. no negative eigenvalue
  bool defect_vanishes = false;    // defect^2 below tolerance
  bool subspace_invariant = false; // M_z maps C_d[z] into itself (overflow Gram vanishes)

  bool all() const { return normal && det_certificate && defect_vanishes && subspace_invariant; }
  bool none() const {
    return !normal && !det_certificate && !defect_vanishes && !subspace_invariant;
  }
  bool agree() const { return all() || none(); }
};

template <class Real = double>
struct CommutatorReport {
  CMatrix<Real> commutator;  // M*M - MM*
  RVector<Real> eigenvalues; // ascending
  Real lambda_minus = Real(0);
  Real defect_sq_bound = Real(0); // -defect^2
  Real trace = Real(0);
  Real norm_sq = Real(0);          // ||M||^2, the scale of all tolerances here
  Real tolerance = Real(0);        // normal_tol * ||M||^2
  int negative_count = 0;          // eigenvalues below -tolerance
  Real corrected_min = Real(0);    // smallest eigenvalue of [M*,M] + K
  bool is_normal = false;
  bool certificate_det = false;
  NormalityConditions equivalences;
};

/// Self-commutator diagnostics. normal_tol is relative to ||M||^2.
template <class Real>
CommutatorReport<Real> self_commutator(const HessenbergData<Real> &h, Real normal_tol = Real(1e-8)) {
  const auto &m = h.matrix;
  CommutatorReport<Real> r;
  r.commutator = hermitian_part<Real>(m.adjoint() * m - m * m.adjoint());
  r.eigenvalues = hermitian_eigenvalues<Real>(r.commutator);
  r.lambda_minus = r.eigenvalues.size() ? r.eigenvalues(0) : Real(0);
  r.defect_sq_bound = -h.defect * h.defect;
  r.trace = r.commutator.trace().real();
  const Real nrm = operator_norm<Real>(m);
  r.norm_sq = nrm * nrm;
  r.tolerance = normal_tol * std::max(r.norm_sq, std::numeric_limits<Real>::min());
  for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i)
    if (r.eigenvalues(i) < -r.tolerance)
      ++r.negative_count;

  CMatrix<Real> corrected = r.commutator;
  corrected(h.d, h.d) += Complex<Real>(h.defect * h.defect, Real(0));
  const auto corrected_eigs = hermitian_eigenvalues<Real>(corrected);
  r.corrected_min = corrected_eigs.size() ? corrected_eigs(0) : Real(0);

  r.is_normal = max_abs(r.commutator) <= r.tolerance;
  r.certificate_det = r.lambda_minus >= -r.tolerance;
  r.equivalences.normal = r.is_normal;
  r.equivalences.det_certificate = r.certificate_det;
  r.equivalences.defect_vanishes = h.defect * h.defect <= r.tolerance;
  const auto overflow_eigs = hermitian_eigenvalues<Real>(h.overflow);
  const Real overflow_max = overflow_eigs.size() ? overflow_eigs(overflow_eigs.size() - 1) : Real(0);
  r.equivalences.subspace_invariant = overflow_max <= r.tolerance;
  return r;
}

//-----------------------------------------------------------------------------

template <class Real = double>
struct SigmaForm {
  CMatrix<Real> matrix;            // [[I, M*], [M, M*M]]
  CMatrix<Real> block_diagonal;    // congruence image, should be diag(I, [M*,M])
  Real congruence_residual = Real(0);
};

/// Block matrix of the form sigma_M(p,q) = ||p||^2 + ||Mq||^2 + 2 Re <Mp,q>,
/// together with its block-diagonalization
///   [[I,0],[-M,I]] * S * [[I,-M*],[0,I]] = diag(I, [M*,M]).
template <class Real>
SigmaForm<Real> sigma_form(const HessenbergData<Real> &h) {
  const auto &m = h.matrix;
  const Eigen::Index n = m.rows();
  const CMatrix<Real> id = CMatrix<Real>::Identity(n, n);
  const CMatrix<Real> zero = CMatrix<Real>::Zero(n, n);

  SigmaForm<Real> out;
  out.matrix.resize(2 * n, 2 * n);
  out.matrix << id, m.adjoint(), m, m.adjoint() * m;

  CMatrix<Real> left(2 * n, 2 * n), right(2 * n, 2 * n), expected(2 * n, 2 * n);
  left << id, zero, -m, id;
  right << id, -m.adjoint(), zero, id;
  expected << id, zero, zero, m.adjoint() * m - m * m.adjoint();
  out.block_diagonal = left * out.matrix * right;
  out.congruence_residual = max_abs(out.block_diagonal - expected);

  const Real nrm = operator_norm<Real>(m);
  if (out.congruence_residual > Real(1e-12) * (Real(1) + nrm * nrm))
    throw NumericalError("congruence identity residual " +
                         std::to_string(static_cast<double>(out.congruence_residual)) +
                         " exceeds tolerance");
  return out;
}

/// Rank-one correction K with <Kq,q> = defect^2 |<q,P_d>|^2; [M*,M] + K >= 0.
template <class Real>
CMatrix<Real> perturbation_K(const HessenbergData<Real> &h) {
  CMatrix<Real> k = CMatrix<Real>::Zero(h.d + 1, h.d + 1);
  k(h.d, h.d) = Complex<Real>(h.defect * h.defect, Real(0));
  return k;
}

//-----------------------------------------------------------------------------

template <class Real = double>
struct SubspaceCompression {
  CMatrix<Real> matrix;     // compression of M_z in the orthonormalized span
  CMatrix<Real> gram;       // Gram matrix <v_l, v_i>_L of the input span
  CMatrix<Real> orthonormal; // coefficient rows of the orthonormalized span
  Real min_pivot = Real(0);  // smallest Cholesky pivot of `gram`
  CVector<Real> cyclic;     // coordinates of v_0 in the orthonormal basis
};

/// Compresses multiplication by z to span{v_0..v_m}, each v_i given as a row
/// of monomial coefficients. Skewness or normality of the result is reported
/// by the caller, never assumed.
template <class Real>
SubspaceCompression<Real> compress_to_subspace(const MomentTable<Real> &table,
                                               const CMatrix<Real> &span,
                                               Real rank_tol = Real(1e-10)) {
  const int rows = static_cast<int>(span.rows());
  if (rows == 0)
    throw ValidationError("empty span");
  int max_deg = 0;
  for (int i = 0; i < rows; ++i)
    for (int m = static_cast<int>(span.cols()) - 1; m >= 0; --m)
      if (span(i, m) != Complex<Real>(0)) {
        max_deg = std::max(max_deg, m);
        break;
      }
  if (2 * max_deg + 1 > table.max_total_degree())
    throw DegreeError("span of degree " + std::to_string(max_deg) + " needs max_total_degree >= " +
                      std::to_string(2 * max_deg + 1) + ", table has " +
                      std::to_string(table.max_total_degree()));

  const int width = max_deg + 1;
  const CMatrix<Real> v = span.leftCols(width);

  SubspaceCompression<Real> out;
  out.gram = hermitian_part<Real>(detail::bilinear(v, detail::shifted_moments(table, width, 0, 0), v));
  Real scale(0);
  for (int i = 0; i < rows; ++i)
    scale = std::max(scale, Real(out.gram(i, i).real()));
  auto chol = detail::monitored_cholesky(out.gram, rank_tol * scale);
  if (chol.rank < rows)
    throw ValidationError("degenerate span: Gram rank " + std::to_string(chol.rank) + " < " +
                          std::to_string(rows));
  out.min_pivot = scale;
  for (int i = 0; i < rows; ++i) {
    using std::norm;
    out.min_pivot = std::min(out.min_pivot, Real(norm(chol.lower(i, i))));
  }
  out.orthonormal = detail::orthonormal_rows(chol.lower) * v;
  out.matrix = detail::bilinear(out.orthonormal, detail::shifted_moments(table, width, 1, 0),
                                out.orthonormal);
  out.cyclic = CVector<Real>::Zero(rows);
  out.cyclic(0) = chol.lower(0, 0);
  return out;
}

} // namespace hesscub

#endif // HESSCUB_HESSENBERG_HPP
