#ifndef HESSCUB_MOMENTS_HPP
#define HESSCUB_MOMENTS_HPP

#include "core.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hesscub {

//-----------------------------------------------------------------------------
/// Discrete positive measure: a nonempty list of nodes with positive weights.
template <class Real = double>
class AtomicMeasure {
public:
  struct Atom {
    Complex<Real> node;
    Real weight;
  };

  explicit AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty())
      throw ValidationError("atomic measure needs at least one atom");
    for (const auto &a : atoms_)
      if (!(a.weight > Real(0)))
        throw ValidationError("atomic measure weights must be strictly positive");
  }

  const std::vector<Atom> &atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  Real mass() const {
    Real m(0);
    for (const auto &a : atoms_)
      m += a.weight;
    return m;
  }

  /// Union of the two atom lists (no merging of coincident nodes).
  AtomicMeasure operator+(const AtomicMeasure &other) const {
    auto all = atoms_;
    all.insert(all.end(), other.atoms_.begin(), other.atoms_.end());
    return AtomicMeasure(std::move(all));
  }

  template <class Other>
  AtomicMeasure<Other> cast() const {
    std::vector<typename AtomicMeasure<Other>::Atom> out;
    out.reserve(atoms_.size());
    for (const auto &a : atoms_)
      out.push_back({Complex<Other>(Other(a.node.real()), Other(a.node.imag())),
                     Other(a.weight)});
    return AtomicMeasure<Other>(std::move(out));
  }

private:
  std::vector<Atom> atoms_;
};

//-----------------------------------------------------------------------------
/// Truncated moments s(j,k) = L(z^j conj(z)^k) for j + k <= D of a real
/// functional. Always Hermitian-complete: s(k,j) == conj(s(j,k)) exactly.
template <class Real = double>
class MomentTable {
public:
  using Scalar = Complex<Real>;

  struct Entry {
    int j;
    int k;
    Scalar value;
  };

  /// Validates and completes a sparse list of moments. Both members of a
  /// conjugate pair may be given; they must agree within rel_tol times the
  /// largest entry modulus. The representative with j >= k is kept.
  static MomentTable from_entries(int max_total_degree, std::span<const Entry> entries,
                                  Real rel_tol = Real(1e-12)) {
    if (max_total_degree < 0)
      throw ValidationError("max_total_degree must be nonnegative");
    const int D = max_total_degree;

    std::map<std::pair<int, int>, Scalar> given;
    Real scale(0);
    for (const auto &e : entries) {
      if (e.j < 0 || e.k < 0)
        throw ValidationError("negative moment index (" + std::to_string(e.j) + "," +
                              std::to_string(e.k) + ")");
      if (e.j + e.k > D)
        throw ValidationError("moment (" + std::to_string(e.j) + "," + std::to_string(e.k) +
                              ") exceeds max_total_degree " + std::to_string(D));
      if (!given.emplace(std::make_pair(e.j, e.k), e.value).second)
        throw ValidationError("duplicate moment entry (" + std::to_string(e.j) + "," +
                              std::to_string(e.k) + ")");
      using std::abs;
      scale = std::max(scale, Real(abs(e.value)));
    }
    const Real tol = rel_tol * scale;

    CMatrix<Real> s = CMatrix<Real>::Zero(D + 1, D + 1);
    for (int j = 0; j <= D; ++j) {
      for (int k = 0; k <= j && j + k <= D; ++k) {
        auto lower = given.find({j, k});
        auto upper = given.find({k, j});
        Scalar value;
        if (lower != given.end() && upper != given.end()) {
          using std::abs;
          using std::conj;
          if (abs(lower->second - conj(upper->second)) > tol)
            throw ValidationError("Hermitian symmetry violated at (" + std::to_string(j) + "," +
                                  std::to_string(k) + ")");
          value = lower->second;
        } else if (lower != given.end()) {
          value = lower->second;
        } else if (upper != given.end()) {
          value = std::conj(upper->second);
        } else {
          throw ValidationError("missing moment (" + std::to_string(j) + "," +
                                std::to_string(k) + ") and its conjugate partner");
        }
        if (j == k) {
          using std::abs;
          if (abs(value.imag()) > tol)
            throw ValidationError("diagonal moment (" + std::to_string(j) + "," +
                                  std::to_string(j) + ") is not real");
          value = Scalar(value.real(), Real(0));
        }
        s(j, k) = value;
        s(k, j) = std::conj(value);
      }
    }
    return MomentTable(D, std::move(s));
  }

  /// Builds from a dense (D+1)x(D+1) array, reading only j >= k, j + k <= D,
  /// and mirroring the rest. Used by generators that are symmetric by
  /// construction.
  static MomentTable from_lower(int max_total_degree, const CMatrix<Real> &lower) {
    const int D = max_total_degree;
    if (D < 0 || lower.rows() < D + 1 || lower.cols() < D + 1)
      throw ValidationError("moment array smaller than max_total_degree");
    CMatrix<Real> s = CMatrix<Real>::Zero(D + 1, D + 1);
    for (int j = 0; j <= D; ++j)
      for (int k = 0; k <= j && j + k <= D; ++k) {
        Scalar v = lower(j, k);
        if (j == k)
          v = Scalar(v.real(), Real(0));
        s(j, k) = v;
        s(k, j) = std::conj(v);
      }
    return MomentTable(D, std::move(s));
  }

  int max_total_degree() const noexcept { return degree_; }

  Scalar operator()(int j, int k) const {
    if (j < 0 || k < 0 || j + k > degree_)
      throw DegreeError("moment (" + std::to_string(j) + "," + std::to_string(k) +
                        ") not available; table has max_total_degree " +
                        std::to_string(degree_));
    return s_(j, k);
  }

  /// s(0,0) = L(1).
  Real mass() const { return s_(0, 0).real(); }

  Real max_modulus() const {
    Real best(0);
    for (int j = 0; j <= degree_; ++j)
      for (int k = 0; j + k <= degree_; ++k) {
        using std::abs;
        best = std::max(best, Real(abs(s_(j, k))));
      }
    return best;
  }

  /// Entries with j >= k, the storage representatives of the file format.
  std::vector<Entry> representatives() const {
    std::vector<Entry> out;
    for (int j = 0; j <= degree_; ++j)
      for (int k = 0; k <= j && j + k <= degree_; ++k)
        out.push_back({j, k, s_(j, k)});
    return out;
  }

  /// Sub-table of lower total degree.
  MomentTable truncated(int max_total_degree) const {
    if (max_total_degree > degree_)
      throw DegreeError("cannot extend a moment table");
    return from_lower(max_total_degree, s_);
  }

  template <class Other>
  MomentTable<Other> cast() const {
    CMatrix<Other> o(s_.rows(), s_.cols());
    for (Eigen::Index j = 0; j < s_.rows(); ++j)
      for (Eigen::Index k = 0; k < s_.cols(); ++k)
        o(j, k) = Complex<Other>(Other(s_(j, k).real()), Other(s_(j, k).imag()));
    return MomentTable<Other>::from_lower(degree_, o);
  }

private:
  MomentTable(int D, CMatrix<Real> s) : degree_(D), s_(std::move(s)) {
    if (!(s_(0, 0).real() > Real(0)))
      throw ValidationError("s(0,0) must be strictly positive");
  }

  int degree_;
  CMatrix<Real> s_;
};

//-----------------------------------------------------------------------------

/// Moments of a discrete measure: s(j,k) = sum_m c_m a_m^j conj(a_m)^k.
template <class Real>
MomentTable<Real> moments_from_atoms(const AtomicMeasure<Real> &measure, int max_total_degree) {
  const int D = max_total_degree;
  if (D < 0)
    throw ValidationError("max_total_degree must be nonnegative");
  CMatrix<Real> s = CMatrix<Real>::Zero(D + 1, D + 1);
  std::vector<Complex<Real>> pw(D + 1);
  for (const auto &atom : measure.atoms()) {
    pw[0] = Complex<Real>(Real(1), Real(0));
    for (int p = 1; p <= D; ++p)
      pw[p] = pw[p - 1] * atom.node;
    for (int j = 0; j <= D; ++j)
      for (int k = 0; k <= j && j + k <= D; ++k) {
        if (j == k) {
          using std::norm;
          s(j, k) += Complex<Real>(atom.weight * norm(pw[j]), Real(0));
        } else {
          s(j, k) += atom.weight * pw[j] * std::conj(pw[k]);
        }
      }
  }
  return MomentTable<Real>::from_lower(D, s);
}

/// Gram matrix of the monomials 1, z, ..., z^d: entry (j,k) = <z^k, z^j>_L = s(k,j).
/// For a coefficient vector c of p = sum_m c_m z^m, ||p||^2 = c^* G c.
template <class Real>
CMatrix<Real> gram_matrix(const MomentTable<Real> &table, int d) {
  if (d < 0 || 2 * d > table.max_total_degree())
    throw DegreeError("Gram matrix of degree " + std::to_string(d) + " needs max_total_degree >= " +
                      std::to_string(2 * d) + ", table has " +
                      std::to_string(table.max_total_degree()));
  CMatrix<Real> g(d + 1, d + 1);
  for (int j = 0; j <= d; ++j)
    for (int k = 0; k <= d; ++k)
      g(j, k) = table(k, j);
  return g;
}

} // namespace hesscub

#endif // HESSCUB_MOMENTS_HPP
