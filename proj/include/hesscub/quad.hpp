#ifndef HESSCUB_QUAD_HPP
#define HESSCUB_QUAD_HPP

// IEEE binary128 scalar usable with Eigen. The defect and commutator
// certificates lose half the working digits (they are square roots of
// cancelling sums), so atomic round trips at moderate degree need more than
// double precision. Link against libquadmath.

#include <boost/multiprecision/float128.hpp>

#include <Eigen/Core>

#include <limits>

namespace hesscub {
using quad = boost::multiprecision::float128;
}

namespace Eigen {

template <>
struct NumTraits<hesscub::quad> : GenericNumTraits<hesscub::quad> {
  using Real = hesscub::quad;
  using NonInteger = hesscub::quad;
  using Nested = hesscub::quad;
  using Literal = hesscub::quad;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };

  static inline Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static inline Real dummy_precision() { return Real(1e-28); }
  static inline Real highest() { return (std::numeric_limits<Real>::max)(); }
  static inline Real lowest() { return -(std::numeric_limits<Real>::max)(); }
  static inline Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static inline Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static inline int digits10() { return std::numeric_limits<Real>::digits10; }
  static inline int digits() { return std::numeric_limits<Real>::digits; }
};

} // namespace Eigen

#endif // HESSCUB_QUAD_HPP
