#ifndef HESSCUB_CUBATURE_HPP
#define HESSCUB_CUBATURE_HPP

#include "hessenberg.hpp"

#include <Eigen/Eigenvalues>

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace hesscub {

enum class ContractKind { gaussian, harmonic };

inline const char *to_string(ContractKind kind) {
  return kind == ContractKind::gaussian ? "gaussian" : "harmonic";
}

/// Exactness class claimed by a cubature.
///  gaussian(d):    L(z^j conj(z)^k) reproduced for j,k <= d+1, j+k <= 2d+1.
///  harmonic(d, R): L(z^m) and L(conj(z)^m) reproduced for m <= d; nodes on |z| = R.
template <class Real = double>
struct Contract {
  ContractKind kind = ContractKind::gaussian;
  int degree = 0;
  std::optional<Real> radius;

  static Contract gaussian(int d) { return {ContractKind::gaussian, d, std::nullopt}; }
  static Contract harmonic(int d, Real r) { return {ContractKind::harmonic, d, r}; }
};

template <class Real = double>
struct Cubature {
  std::vector<Complex<Real>> nodes;
  std::vector<Real> weights;
  Contract<Real> contract;

  std::size_t size() const noexcept { return nodes.size(); }

  Real mass() const {
    Real m(0);
    for (const auto &w : weights)
      m += w;
    return m;
  }

  /// Throws ValidationError unless the structural invariants hold.
  void validate() const {
    if (nodes.size() != weights.size())
      throw ValidationError("cubature has " + std::to_string(nodes.size()) + " nodes but " +
                            std::to_string(weights.size()) + " weights");
    if (nodes.empty())
      throw ValidationError("cubature has no nodes");
    for (const auto &w : weights)
      if (!(w > Real(0)))
        throw ValidationError("cubature weights must be strictly positive");
    if (contract.degree < 0)
      throw ValidationError("contract degree must be nonnegative");
    if (contract.kind == ContractKind::gaussian &&
        nodes.size() > static_cast<std::size_t>(contract.degree + 1))
      throw ValidationError("gaussian(" + std::to_string(contract.degree) + ") contract allows at most " +
                            std::to_string(contract.degree + 1) + " nodes, cubature has " +
                            std::to_string(nodes.size()));
    if (contract.kind == ContractKind::harmonic && !contract.radius)
      throw ValidationError("harmonic contract needs a radius");
  }

  template <class Other>
  Cubature<Other> cast() const {
    Cubature<Other> out;
    for (const auto &z : nodes)
      out.nodes.emplace_back(Other(z.real()), Other(z.imag()));
    for (const auto &w : weights)
      out.weights.push_back(Other(w));
    out.contract.kind = contract.kind;
    out.contract.degree = contract.degree;
    if (contract.radius)
      out.contract.radius = Other(*contract.radius);
    return out;
  }
};

//-----------------------------------------------------------------------------

template <class Real = double>
struct PairResidual {
  int j = 0;
  int k = 0;
  Real residual = Real(0);
};

template <class Real = double>
struct ExactnessReport {
  std::vector<PairResidual<Real>> pairs;
  Real max_residual = Real(0);
  Real tolerance = Real(0);
  bool passed = false;

  std::vector<PairResidual<Real>> failing() const {
    std::vector<PairResidual<Real>> out;
    for (const auto &p : pairs)
      if (p.residual > tolerance)
        out.push_back(p);
    return out;
  }
};

/// Monomial pairs covered by a contract. The gaussian grid excludes the
/// corner where both degrees are d+1.
inline std::vector<std::pair<int, int>> exactness_grid(ContractKind kind, int d) {
  std::vector<std::pair<int, int>> grid;
  if (kind == ContractKind::gaussian) {
    for (int j = 0; j <= d + 1; ++j)
      for (int k = 0; k <= d + 1; ++k)
        if (j + k <= 2 * d + 1)
          grid.emplace_back(j, k);
  } else {
    grid.emplace_back(0, 0);
    for (int m = 1; m <= d; ++m) {
      grid.emplace_back(m, 0);
      grid.emplace_back(0, m);
    }
  }
  return grid;
}

inline int required_degree(ContractKind kind, int d) {
  return kind == ContractKind::gaussian ? 2 * d + 1 : d;
}

/// Residuals |sum_m c_m a_m^j conj(a_m)^k - s(j,k)| over the contract's grid.
/// Passes iff the largest is <= rel_tol * (1 + max |s|) over the grid.
template <class Real>
ExactnessReport<Real> verify_exactness(const Cubature<Real> &cub, const MomentTable<Real> &table,
                                       Real rel_tol = Real(1e-7)) {
  cub.validate();
  const int d = cub.contract.degree;
  const int need = required_degree(cub.contract.kind, d);
  if (need > table.max_total_degree())
    throw DegreeError(std::string(to_string(cub.contract.kind)) + "(" + std::to_string(d) +
                      ") contract needs max_total_degree >= " + std::to_string(need) +
                      ", table has " + std::to_string(table.max_total_degree()));

  const auto grid = exactness_grid(cub.contract.kind, d);
  const int top = d + 1;
  // powers[i][p] = a_i^p
  std::vector<std::vector<Complex<Real>>> powers(cub.size(), std::vector<Complex<Real>>(top + 1));
  for (std::size_t i = 0; i < cub.size(); ++i) {
    powers[i][0] = Complex<Real>(Real(1), Real(0));
    for (int p = 1; p <= top; ++p)
      powers[i][p] = powers[i][p - 1] * cub.nodes[i];
  }

  ExactnessReport<Real> report;
  Real scale(0);
  for (const auto &[j, k] : grid) {
    Complex<Real> sum(0);
    for (std::size_t i = 0; i < cub.size(); ++i)
      sum += cub.weights[i] * powers[i][j] * std::conj(powers[i][k]);
    using std::abs;
    const Complex<Real> target = table(j, k);
    scale = std::max(scale, Real(abs(target)));
    const Real res = abs(sum - target);
    report.pairs.push_back({j, k, res});
    report.max_residual = std::max(report.max_residual, res);
  }
  report.tolerance = rel_tol * (Real(1) + scale);
  report.passed = report.max_residual <= report.tolerance;
  return report;
}

//-----------------------------------------------------------------------------

/// Distance between a cubature and a reference measure: minimum over
/// bijections of (max node distance + max weight discrepancy). Infinite when
/// the counts differ. Exact branch-and-bound search up to 12 atoms, greedy
/// beyond.
template <class Real>
Real match_atoms(const Cubature<Real> &cub, const AtomicMeasure<Real> &reference) {
  const auto &ref = reference.atoms();
  const std::size_t n = ref.size();
  if (cub.size() != n)
    return std::numeric_limits<Real>::infinity();

  using std::abs;
  std::vector<std::vector<Real>> node_dist(n, std::vector<Real>(n));
  std::vector<std::vector<Real>> weight_dist(n, std::vector<Real>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < n; ++r) {
      node_dist[i][r] = abs(cub.nodes[i] - ref[r].node);
      weight_dist[i][r] = abs(cub.weights[i] - ref[r].weight);
    }

  // greedy: each cubature node takes its nearest free reference atom
  std::vector<bool> used(n, false);
  Real greedy_nodes(0), greedy_weights(0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = n;
    for (std::size_t r = 0; r < n; ++r)
      if (!used[r] && (best == n || node_dist[i][r] < node_dist[i][best]))
        best = r;
    used[best] = true;
    greedy_nodes = std::max(greedy_nodes, node_dist[i][best]);
    greedy_weights = std::max(greedy_weights, weight_dist[i][best]);
  }
  Real best_cost = greedy_nodes + greedy_weights;
  if (n > 12)
    return best_cost;

  std::fill(used.begin(), used.end(), false);
  auto search = [&](auto &&self, std::size_t i, Real max_node, Real max_weight) -> void {
    if (max_node + max_weight >= best_cost)
      return;
    if (i == n) {
      best_cost = max_node + max_weight;
      return;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (used[r])
        continue;
      used[r] = true;
      self(self, i + 1, std::max(max_node, node_dist[i][r]), std::max(max_weight, weight_dist[i][r]));
      used[r] = false;
    }
  };
  search(search, 0, Real(0), Real(0));
  return best_cost;
}

//-----------------------------------------------------------------------------

template <class Real = double>
struct SpectralRule {
  std::vector<Complex<Real>> nodes;
  std::vector<Real> weights;
  Real schur_residual = Real(0); // max strictly-upper entry of the Schur factor
};

namespace detail {

/// Merges nodes closer than merge_dist (weights summed, node averaged by
/// weight) and drops weights below min_weight.
template <class Real>
void merge_and_prune(std::vector<Complex<Real>> &nodes, std::vector<Real> &weights, Real merge_dist,
                     Real min_weight) {
  std::vector<Complex<Real>> out_nodes;
  std::vector<Real> out_weights;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    bool merged = false;
    for (std::size_t o = 0; o < out_nodes.size(); ++o) {
      using std::abs;
      if (abs(nodes[i] - out_nodes[o]) <= merge_dist) {
        const Real total = out_weights[o] + weights[i];
        if (total > Real(0))
          out_nodes[o] = (out_nodes[o] * out_weights[o] + nodes[i] * weights[i]) / total;
        out_weights[o] = total;
        merged = true;
        break;
      }
    }
    if (!merged) {
      out_nodes.push_back(nodes[i]);
      out_weights.push_back(weights[i]);
    }
  }
  nodes.clear();
  weights.clear();
  for (std::size_t o = 0; o < out_nodes.size(); ++o)
    if (out_weights[o] >= min_weight && out_weights[o] > Real(0)) {
      nodes.push_back(out_nodes[o]);
      weights.push_back(out_weights[o]);
    }
}

} // namespace detail

/// Atomic rule from the Schur form of a (near) normal matrix: nodes are the
/// eigenvalues, weights |<e, f_k>|^2 for the Schur vectors f_k.
template <class Real>
SpectralRule<Real> spectral_rule(const CMatrix<Real> &m, const CVector<Real> &cyclic,
                                 Real merge_dist, Real min_weight) {
  Eigen::ComplexSchur<CMatrix<Real>> schur(m);
  if (schur.info() != Eigen::Success)
    throw NumericalError("Schur decomposition did not converge");
  const auto &t = schur.matrixT();
  const auto &u = schur.matrixU();

  SpectralRule<Real> rule;
  for (Eigen::Index j = 0; j < t.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i) {
      using std::abs;
      rule.schur_residual = std::max(rule.schur_residual, Real(abs(t(i, j))));
    }
  const CVector<Real> proj = u.adjoint() * cyclic;
  for (Eigen::Index k = 0; k < t.rows(); ++k) {
    using std::norm;
    rule.nodes.push_back(t(k, k));
    rule.weights.push_back(norm(proj(k)));
  }
  detail::merge_and_prune(rule.nodes, rule.weights, merge_dist, min_weight);
  return rule;
}

/// Gaussian-type quadrature from a normal Hessenberg matrix. Unless `force`
/// is set, the normality certificate must pass and the Schur factor must be
/// diagonal within sqrt(normal_tol) * ||M||.
template <class Real>
Cubature<Real> normal_quadrature(const HessenbergData<Real> &h, const OrthoBasis<Real> &basis,
                                 const MomentTable<Real> &table, Real normal_tol = Real(1e-8),
                                 Real weight_tol = Real(1e-12), bool force = false) {
  const auto report = self_commutator(h, normal_tol);
  if (!force && !report.equivalences.all())
    throw CertificateError("normality certificate fails at d = " + std::to_string(h.d) +
                           " (defect " + std::to_string(static_cast<double>(h.defect)) +
                           ", lambda_minus " + std::to_string(static_cast<double>(report.lambda_minus)) +
                           ")");
  using std::sqrt;
  const Real nrm = sqrt(report.norm_sq);
  const auto e = cyclic_vector_coords(basis, table);
  auto rule = spectral_rule<Real>(h.matrix, e.head(h.d + 1), Real(1e-9) * nrm,
                                  weight_tol * table.mass());
  if (!force && rule.schur_residual > sqrt(normal_tol) * std::max(nrm, std::numeric_limits<Real>::min()))
    throw NumericalError("Schur factor not diagonal: off-diagonal " +
                         std::to_string(static_cast<double>(rule.schur_residual)));
  Cubature<Real> cub;
  cub.nodes = std::move(rule.nodes);
  cub.weights = std::move(rule.weights);
  cub.contract = Contract<Real>::gaussian(h.d);
  return cub;
}

} // namespace hesscub

#endif // HESSCUB_CUBATURE_HPP
