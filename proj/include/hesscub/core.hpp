#ifndef HESSCUB_CORE_HPP
#define HESSCUB_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace hesscub {

template <class Real>
using Complex = std::complex<Real>;

template <class Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <class Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

//-----------------------------------------------------------------------------
// Error hierarchy. The CLI maps each family onto an exit code.

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input (bad JSON, wrong schema).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Input violates a data invariant (Hermitian symmetry, positive mass, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Requested degree is not covered by the available moments.
class DegreeError : public Error {
public:
  using Error::Error;
};

/// Orthonormalization broke down before the requested degree.
class DegeneracyError : public ValidationError {
public:
  DegeneracyError(int degree, const std::string &what)
      : ValidationError(what), degree_(degree) {}
  int degree() const noexcept { return degree_; }

private:
  int degree_;
};

/// A normality certificate required by the operation does not hold.
class CertificateError : public Error {
public:
  using Error::Error;
};

/// Roundoff destroyed a property the algorithm relies on.
class NumericalError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

//-----------------------------------------------------------------------------

template <class Real>
Real machine_epsilon() {
  return std::numeric_limits<Real>::epsilon();
}

/// Largest entry modulus; 0 for an empty matrix.
template <class Derived>
auto max_abs(const Eigen::MatrixBase<Derived> &m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  Real best(0);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      using std::abs;
      const Real a = abs(m(i, j));
      if (a > best)
        best = a;
    }
  return best;
}

/// Eigenvalues (ascending) of a Hermitian matrix; only the lower triangle is read.
template <class Real>
RVector<Real> hermitian_eigenvalues(const CMatrix<Real> &h) {
  if (h.rows() == 0)
    return RVector<Real>();
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("hermitian eigensolver did not converge");
  return es.eigenvalues();
}

template <class Real>
CMatrix<Real> hermitian_part(const CMatrix<Real> &m) {
  return (m + m.adjoint()) * Complex<Real>(Real(0.5), Real(0));
}

/// Largest singular value.
template <class Real>
Real operator_norm(const CMatrix<Real> &m) {
  if (m.size() == 0)
    return Real(0);
  Eigen::JacobiSVD<CMatrix<Real>> svd(m);
  return svd.singularValues()(0);
}

} // namespace hesscub

#endif // HESSCUB_CORE_HPP
