#ifndef HESSCUB_FIXTURES_HPP
#define HESSCUB_FIXTURES_HPP

#include "moments.hpp"

#include <cstdint>
#include <numbers>
#include <random>
#include <string>

namespace hesscub {

/// Arc length on the unit circle: s(j,k) = delta_jk.
template <class Real = double>
MomentTable<Real> circle_arclength(int max_total_degree) {
  const int D = max_total_degree;
  if (D < 0)
    throw ValidationError("max_total_degree must be nonnegative");
  CMatrix<Real> s = CMatrix<Real>::Zero(D + 1, D + 1);
  for (int j = 0; 2 * j <= D; ++j)
    s(j, j) = Complex<Real>(Real(1), Real(0));
  return MomentTable<Real>::from_lower(D, s);
}

/// Uniform probability on the vertices of the regular n-gon inscribed in the
/// unit circle: s(j,k) = 1 if j == k (mod n), else 0.
template <class Real = double>
MomentTable<Real> ngon(int n, int max_total_degree) {
  if (n < 3)
    throw ValidationError("ngon needs n >= 3");
  const int D = max_total_degree;
  if (D < 0)
    throw ValidationError("max_total_degree must be nonnegative");
  CMatrix<Real> s = CMatrix<Real>::Zero(D + 1, D + 1);
  for (int j = 0; j <= D; ++j)
    for (int k = 0; k <= j && j + k <= D; ++k)
      if ((j - k) % n == 0)
        s(j, k) = Complex<Real>(Real(1), Real(0));
  return MomentTable<Real>::from_lower(D, s);
}

/// Integral of x^m over [-a, a]; zero for odd or negative m.
template <class Real>
Real interval_monomial_integral(Real a, int m) {
  if (m < 0 || m % 2 != 0)
    return Real(0);
  using std::pow;
  return Real(2) * Real(pow(a, m + 1)) / Real(m + 1);
}

/// Dirichlet-type form on [-a, a]: s(j,k) = <z^j, z^k> with
/// <p, q> = int p conj(q) + p' conj(q') dx.
template <class Real = double>
MomentTable<Real> dirichlet_interval(Real a, int max_total_degree) {
  if (!(a > Real(0)))
    throw ValidationError("dirichlet_interval needs a > 0");
  const int D = max_total_degree;
  if (D < 0)
    throw ValidationError("max_total_degree must be nonnegative");
  CMatrix<Real> s = CMatrix<Real>::Zero(D + 1, D + 1);
  for (int j = 0; j <= D; ++j)
    for (int k = 0; k <= j && j + k <= D; ++k)
      s(j, k) = Complex<Real>(interval_monomial_integral(a, j + k) +
                                  Real(j) * Real(k) * interval_monomial_integral(a, j + k - 2),
                              Real(0));
  return MomentTable<Real>::from_lower(D, s);
}

/// Rows (z^2 - a^2) z^{2m + parity}, m = 0..count-1: even (parity 0) or odd
/// (parity 1) polynomials vanishing at +-a.
template <class Real = double>
CMatrix<Real> vanishing_span(Real a, int count, int parity) {
  if (count < 1)
    throw ValidationError("span needs at least one element");
  if (parity != 0 && parity != 1)
    throw ValidationError("parity must be 0 or 1");
  const int width = 2 * (count - 1) + parity + 3;
  CMatrix<Real> rows = CMatrix<Real>::Zero(count, width);
  for (int m = 0; m < count; ++m) {
    const int base = 2 * m + parity;
    rows(m, base) = Complex<Real>(-a * a, Real(0));
    rows(m, base + 2) = Complex<Real>(Real(1), Real(0));
  }
  return rows;
}

/// Seeded random atoms in the disk |z| <= disk_radius, pairwise separated
/// by at least disk_radius / (10 count), weights uniform in [0.1, 1].
inline AtomicMeasure<double> random_atoms(int count, std::uint64_t seed, double disk_radius = 1.0) {
  if (count < 1)
    throw ValidationError("random_atoms needs count >= 1");
  if (!(disk_radius > 0.0))
    throw ValidationError("random_atoms needs a positive disk radius");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  const double separation = disk_radius / (10.0 * count);
  constexpr int max_tries = 10000;

  std::vector<AtomicMeasure<double>::Atom> atoms;
  for (int i = 0; i < count; ++i) {
    std::complex<double> z;
    int tries = 0;
    for (;; ++tries) {
      if (tries == max_tries)
        throw ValidationError("random_atoms: could not place " + std::to_string(count) +
                              " separated atoms");
      const double r = disk_radius * std::sqrt(unit(rng));
      const double theta = 2.0 * std::numbers::pi * unit(rng);
      z = std::polar(r, theta);
      bool ok = true;
      for (const auto &a : atoms)
        if (std::abs(a.node - z) < separation) {
          ok = false;
          break;
        }
      if (ok)
        break;
    }
    atoms.push_back({z, 0.0});
  }
  for (auto &a : atoms)
    a.weight = weight(rng);
  return AtomicMeasure<double>(std::move(atoms));
}

} // namespace hesscub

#endif // HESSCUB_FIXTURES_HPP
