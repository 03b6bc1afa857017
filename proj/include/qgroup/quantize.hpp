#pragma once

// Operators built from weighted state families: operators of e-variables and
// their functions, POVMs and density operators, covariance under the maximal
// permissible subgroup, eigenvalue orbits and model reduction, maximality and
// coarse graining, and question/answer matching against labelled bases.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgroup/algebra.hpp"
#include "qgroup/error.hpp"
#include "qgroup/groups.hpp"
#include "qgroup/reps_coherent.hpp"
#include "qgroup/variables.hpp"

namespace qgroup {

/// States |theta> indexed by value id, with the weights rho(theta).
struct StateFamily {
  std::vector<CVector> states;
  std::vector<double> weights;

  int size() const { return static_cast<int>(states.size()); }
  int dim() const { return states.empty() ? 0 : static_cast<int>(states.front().size()); }

  /// Orthonormal basis from matrix columns, unit weights.
  static StateFamily from_basis(const CMatrix& basis) {
    return {columns(basis), std::vector<double>(static_cast<std::size_t>(basis.cols()), 1.0)};
  }
};

enum class ResolutionPolicy { Require, Warn };

struct OperatorBundle {
  CMatrix A;
  SpectralData spectrum;
  std::optional<ConceptualVariable> source_variable;
  double resolution_deviation = 0;  // from resolution_over_theta on the family
};

namespace detail {

inline void require_family(const StateFamily& fam, std::size_t labels) {
  if (fam.states.empty()) throw Error(Errc::DimensionMismatch, "empty state family");
  if (fam.weights.size() != fam.states.size()) throw Error(Errc::DimensionMismatch, "one weight per state");
  if (labels != fam.states.size()) throw Error(Errc::DimensionMismatch, "one label per state");
  for (const CVector& s : fam.states)
    if (s.size() != fam.states.front().size()) throw Error(Errc::DimensionMismatch, "states differ in dimension");
}

inline double check_resolution(const StateFamily& fam, ResolutionPolicy policy) {
  const ResolutionCheck rc = resolution_over_theta(fam.states, fam.weights);
  if (!rc.passed && policy == ResolutionPolicy::Require)
    throw Error(Errc::NoResolution, "family is not a resolution of the identity (deviation " +
                                        std::to_string(rc.deviation) + ")");
  return rc.deviation;
}

}  // namespace detail

/// A = sum_theta label(theta) w(theta) |theta><theta|.
inline OperatorBundle build_operator(const StateFamily& fam, std::span<const double> labels,
                                     ResolutionPolicy policy = ResolutionPolicy::Require,
                                     double degeneracy_tol = kDefaultDegeneracyTol) {
  detail::require_family(fam, labels.size());
  OperatorBundle b;
  b.resolution_deviation = detail::check_resolution(fam, policy);
  b.A = CMatrix::Zero(fam.dim(), fam.dim());
  for (int i = 0; i < fam.size(); ++i) b.A += (labels[i] * fam.weights[i]) * outer(fam.states[i]);
  b.A = 0.5 * (b.A + b.A.adjoint());
  b.spectrum = eig_hermitian(b.A, degeneracy_tol);
  return b;
}

inline OperatorBundle build_operator(const StateFamily& fam, const ConceptualVariable& var,
                                     ResolutionPolicy policy = ResolutionPolicy::Require,
                                     double degeneracy_tol = kDefaultDegeneracyTol) {
  OperatorBundle b = build_operator(fam, var.labels(), policy, degeneracy_tol);
  b.source_variable = var;
  return b;
}

/// Bundle for an operator given directly as a Hermitian matrix.
inline OperatorBundle bundle_from_matrix(const CMatrix& a, double degeneracy_tol = kDefaultDegeneracyTol) {
  OperatorBundle b;
  b.spectrum = eig_hermitian(a, degeneracy_tol);
  b.A = 0.5 * (a + a.adjoint());
  return b;
}

/// The operator of f(theta): the same construction with labels f(label).
template <class F>
OperatorBundle function_operator(const StateFamily& fam, std::span<const double> labels, F&& f,
                                 ResolutionPolicy policy = ResolutionPolicy::Require,
                                 double degeneracy_tol = kDefaultDegeneracyTol) {
  std::vector<double> mapped;
  mapped.reserve(labels.size());
  for (double u : labels) mapped.push_back(static_cast<double>(f(u)));
  return build_operator(fam, mapped, policy, degeneracy_tol);
}

/// <v|A|v> through the discrete spectral measure: sum_j u_j <v|P_j|v>.
inline double spectral_expectation(const SpectralData& s, const CVector& v) {
  double acc = 0;
  for (int j = 0; j < s.size(); ++j) acc += s.eigenvalues[j] * v.dot(s.projections[j] * v).real();
  return acc;
}

/// P(z | theta) for finitely many outcomes z.
class StatisticalModel {
 public:
  /// Rows indexed by value id; each row a probability vector over outcomes.
  static StatisticalModel make(std::vector<std::vector<double>> rows) {
    if (rows.empty()) throw Error(Errc::InvalidModel, "no rows");
    const std::size_t outcomes = rows.front().size();
    if (outcomes == 0) throw Error(Errc::InvalidModel, "no outcomes");
    for (const auto& r : rows) {
      if (r.size() != outcomes) throw Error(Errc::InvalidModel, "rows differ in length");
      double s = 0;
      for (double p : r) {
        if (!(p >= 0) || !std::isfinite(p)) throw Error(Errc::InvalidModel, "probabilities must be nonnegative");
        s += p;
      }
      if (std::abs(s - 1.0) > 1e-12) throw Error(Errc::InvalidModel, "row sums to " + std::to_string(s));
    }
    StatisticalModel m;
    m.rows_ = std::move(rows);
    return m;
  }

  int outcome_count() const { return static_cast<int>(rows_.front().size()); }
  int value_count() const { return static_cast<int>(rows_.size()); }
  double p(int z, int theta) const { return rows_[theta][z]; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

 private:
  std::vector<std::vector<double>> rows_;
};

struct Povm {
  std::vector<CMatrix> effects;  // M({z}) per outcome

  /// M(C) = sum_{z in C} M({z}).
  CMatrix effect(std::span<const int> outcomes) const {
    CMatrix m = CMatrix::Zero(effects.front().rows(), effects.front().cols());
    for (int z : outcomes) m += effects.at(static_cast<std::size_t>(z));
    return m;
  }

  double completeness_error() const {
    CMatrix s = CMatrix::Zero(effects.front().rows(), effects.front().cols());
    for (const CMatrix& e : effects) s += e;
    return max_abs(s - identity(s.rows()));
  }
};

/// M({z}) = sum_theta P(z | theta) w(theta) |theta><theta|.
inline Povm build_povm(const StatisticalModel& model, const StateFamily& fam,
                       ResolutionPolicy policy = ResolutionPolicy::Require) {
  if (model.value_count() != fam.size())
    throw Error(Errc::RowMismatch, "model has " + std::to_string(model.value_count()) + " rows for " +
                                       std::to_string(fam.size()) + " states");
  detail::require_family(fam, fam.states.size());
  detail::check_resolution(fam, policy);
  Povm povm;
  for (int z = 0; z < model.outcome_count(); ++z) {
    CMatrix m = CMatrix::Zero(fam.dim(), fam.dim());
    for (int t = 0; t < fam.size(); ++t) m += (model.p(z, t) * fam.weights[t]) * outer(fam.states[t]);
    povm.effects.push_back(0.5 * (m + m.adjoint()));
  }
  return povm;
}

struct DensityOp {
  CMatrix sigma;
  std::vector<double> weight_function;  // pi(theta) as used
};

/// sigma = sum_theta pi(theta) w(theta) |theta><theta|. With normalize set,
/// pi is rescaled so that sum pi(theta) w(theta) |theta|^2 = 1.
inline DensityOp build_density(std::span<const double> pi, const StateFamily& fam, bool normalize = false) {
  detail::require_family(fam, pi.size());
  for (double p : pi)
    if (!(p >= 0)) throw Error(Errc::NegativeWeight, "pi must be nonnegative");
  for (double w : fam.weights)
    if (!(w >= 0)) throw Error(Errc::NegativeWeight, "family weights must be nonnegative");
  std::vector<double> used(pi.begin(), pi.end());
  if (normalize) {
    double mass = 0;
    for (int t = 0; t < fam.size(); ++t) mass += used[t] * fam.weights[t] * fam.states[t].squaredNorm();
    if (!(mass > 0)) throw Error(Errc::NegativeWeight, "pi has zero total mass");
    for (double& p : used) p /= mass;
  }
  DensityOp d;
  d.sigma = CMatrix::Zero(fam.dim(), fam.dim());
  for (int t = 0; t < fam.size(); ++t) d.sigma += (used[t] * fam.weights[t]) * outer(fam.states[t]);
  d.sigma = 0.5 * (d.sigma + d.sigma.adjoint());
  d.weight_function = std::move(used);
  return d;
}

struct CovarianceReport {
  CMatrix lhs;  // V(h)^H A V(h)
  CMatrix rhs;  // operator of the composed variable
  double error = 0;
  double tolerance = 0;
  bool passed = false;
};

/// Compares V(h)^H A V(h) with the operator whose labels are permuted by the
/// value permutation g induced by h: label'(v) = label(g v).
inline CovarianceReport covariance_check(const StateFamily& fam, std::span<const double> labels, const CMatrix& v_h,
                                         std::span<const int> g) {
  detail::require_family(fam, labels.size());
  if (g.size() != labels.size()) throw Error(Errc::DimensionMismatch, "value permutation size");
  if (v_h.rows() != fam.dim() || v_h.cols() != fam.dim()) throw Error(Errc::DimensionMismatch, "V(h) shape");
  if (!is_unitary(v_h, 1e-9 * fam.dim())) throw Error(Errc::NotUnitary, "V(h)");
  const OperatorBundle a = build_operator(fam, labels, ResolutionPolicy::Warn);
  std::vector<double> moved(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) moved[v] = labels[g[v]];
  const OperatorBundle b = build_operator(fam, moved, ResolutionPolicy::Warn);
  CovarianceReport r;
  r.lhs = v_h.adjoint() * a.A * v_h;
  r.rhs = b.A;
  r.error = (r.lhs - r.rhs).norm();
  r.tolerance = 1e-9 * std::max(1.0, a.A.norm());
  r.passed = r.error <= r.tolerance;
  return r;
}

/// Covariance for an element h of the maximal permissible subgroup of var
/// under act. States are indexed by var's value ids.
inline CovarianceReport covariance_check(const StateFamily& fam, const ConceptualVariable& var,
                                         const GroupAction& act, int h, const CMatrix& v_h) {
  const auto big_h = maximal_permissible_subgroup(var, act);
  if (!std::binary_search(big_h.begin(), big_h.end(), h))
    throw Error(Errc::NotInSubgroupH, "element " + std::to_string(h) + " is not in the maximal permissible subgroup");
  const auto g = value_permutation(var, act, h);
  return covariance_check(fam, var.labels(), v_h, *g);
}

using ValueMap = std::function<double(double)>;

struct EigenOrbits {
  std::vector<std::vector<int>> orbits;           // eigenvalue ids
  std::vector<std::vector<double>> orbit_values;  // eigenvalues, ascending within each orbit
  bool single_orbit = false;
  std::vector<std::vector<int>> id_perms;  // induced permutation of eigenvalue ids per map
  /// Order of the permutation group generated on the eigenvalues, and whether
  /// it is the full symmetric group.
  long image_order = 1;
  bool full_symmetric = false;
  double tolerance = 0;
};

namespace detail {

inline std::vector<std::vector<int>> permutation_closure(const std::vector<std::vector<int>>& gens, int n) {
  std::vector<int> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> elems{id};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      std::vector<int> c(static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x) c[x] = elems[i][g[x]];
      if (seen.insert(c).second) elems.push_back(std::move(c));
    }
  return elems;
}

inline long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace detail

/// Orbits of the eigenvalue set under value maps. Each map must send every
/// eigenvalue to an eigenvalue (within tol) and act bijectively.
inline EigenOrbits eigen_orbit_partition(const OperatorBundle& bundle, std::span<const ValueMap> maps,
                                         double tol = 1e-9) {
  const auto& ev = bundle.spectrum.eigenvalues;
  const int n = static_cast<int>(ev.size());
  const double scale = tol * std::max(1.0, bundle.A.norm());
  auto find = [&](double u) -> int {
    for (int j = 0; j < n; ++j)
      if (std::abs(ev[j] - u) <= scale) return j;
    return -1;
  };
  EigenOrbits out;
  out.tolerance = tol;
  for (const ValueMap& m : maps) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
      const double image = m(ev[j]);
      p[j] = find(image);
      if (p[j] < 0)
        throw Error(Errc::ActionDoesNotPreserveSpectrum,
                    "eigenvalue " + std::to_string(ev[j]) + " maps to " + std::to_string(image));
      if (hit[p[j]]) throw Error(Errc::ActionDoesNotPreserveSpectrum, "value map is not injective on the spectrum");
      hit[p[j]] = 1;
    }
    out.id_perms.push_back(std::move(p));
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    if (seen[j]) continue;
    std::vector<int> orbit{j};
    seen[j] = 1;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (const auto& p : out.id_perms)
        if (!seen[p[orbit[i]]]) {
          seen[p[orbit[i]]] = 1;
          orbit.push_back(p[orbit[i]]);
        }
    std::sort(orbit.begin(), orbit.end());
    std::vector<double> vals;
    for (int id : orbit) vals.push_back(ev[id]);
    out.orbits.push_back(std::move(orbit));
    out.orbit_values.push_back(std::move(vals));
  }
  out.single_orbit = out.orbits.size() == 1;
  if (n <= 8) {
    out.image_order = static_cast<long>(detail::permutation_closure(out.id_perms, n).size());
    out.full_symmetric = out.image_order == detail::factorial(n);
  } else {
    out.image_order = -1;  // not enumerated
  }
  return out;
}

/// Value maps of an induced action whose labels are real numbers.
inline std::vector<ValueMap> value_maps(const ConceptualVariable& var, const InducedAction& induced) {
  std::vector<ValueMap> maps;
  for (const auto& perm : induced.image_perms) {
    std::vector<std::pair<double, double>> table;
    for (int v = 0; v < var.value_count(); ++v) table.emplace_back(var.label(v), var.label(perm[v]));
    maps.emplace_back([table](double u) {
      for (const auto& [from, to] : table)
        if (std::abs(from - u) <= 1e-12 * std::max(1.0, std::abs(u))) return to;
      return std::numeric_limits<double>::quiet_NaN();
    });
  }
  return maps;
}

struct ReducedModel {
  ConceptualVariable variable;
  std::vector<int> kept_points;  // indices into the original space
  bool transitive = false;
};

/// Restricts var to the points whose label lies in target (within tol). The
/// target must be closed under the maps and every target value attained.
inline ReducedModel model_reduce(const ConceptualVariable& var, std::span<const double> target,
                                 std::span<const ValueMap> maps, double tol = 1e-9) {
  if (target.empty()) throw Error(Errc::NotAnOrbit, "empty target set");
  auto index_of = [&](double u) -> int {
    for (std::size_t i = 0; i < target.size(); ++i)
      if (std::abs(target[i] - u) <= tol * std::max(1.0, std::abs(u))) return static_cast<int>(i);
    return -1;
  };
  std::vector<std::vector<int>> perms;
  for (const ValueMap& m : maps) {
    std::vector<int> p;
    for (double u : target) {
      const int j = index_of(m(u));
      if (j < 0) throw Error(Errc::NotAnOrbit, "value " + std::to_string(u) + " leaves the target set");
      p.push_back(j);
    }
    perms.push_back(std::move(p));
  }
  // Orbit of the first target value under the generated group.
  const auto group = detail::permutation_closure(perms, static_cast<int>(target.size()));
  std::set<int> reach;
  for (const auto& g : group) reach.insert(g[0]);

  std::vector<int> kept, ids;
  std::vector<char> attained(target.size(), 0);
  for (int x = 0; x < var.space_size(); ++x) {
    const int j = index_of(var.label_at(x));
    if (j < 0) continue;
    kept.push_back(x);
    ids.push_back(j);
    attained[j] = 1;
  }
  if (std::find(attained.begin(), attained.end(), 0) != attained.end())
    throw Error(Errc::NotAnOrbit, "target value not attained by the variable");
  ReducedModel r{ConceptualVariable::make(std::move(ids), std::vector<double>(target.begin(), target.end()), {},
                                          var.accessible()),
                 std::move(kept), reach.size() == target.size()};
  return r;
}

/// True iff every eigenspace is one-dimensional.
inline bool maximality_check(const OperatorBundle& bundle) {
  const auto& m = bundle.spectrum.multiplicities;
  return std::all_of(m.begin(), m.end(), [](int k) { return k == 1; });
}

/// Finer operator obtained by giving one vector of the first degenerate
/// eigenspace its own eigenvalue, together with f mapping the finer eigenvalue ids onto
/// the coarser ones (theta = f(psi)). Empty iff the operator is maximal.
struct Refinement {
  OperatorBundle finer;
  std::vector<int> f;
};

inline std::optional<Refinement> refine_degenerate(const OperatorBundle& bundle) {
  const SpectralData& s = bundle.spectrum;
  int block = -1;
  for (int j = 0; j < s.size(); ++j)
    if (s.multiplicities[j] > 1) {
      block = j;
      break;
    }
  if (block < 0) return std::nullopt;

  // The split-off value stays strictly inside the gap to the neighbours.
  double gap = 1.0;
  if (block > 0) gap = std::min(gap, s.eigenvalues[block] - s.eigenvalues[block - 1]);
  if (block + 1 < s.size()) gap = std::min(gap, s.eigenvalues[block + 1] - s.eigenvalues[block]);
  const double shift = gap / 2.0;

  StateFamily fam;
  std::vector<double> labels;
  std::vector<int> coarse_of;
  for (int j = 0; j < s.size(); ++j)
    for (Eigen::Index c = 0; c < s.eigenspaces[j].cols(); ++c) {
      fam.states.emplace_back(s.eigenspaces[j].col(c));
      fam.weights.push_back(1.0);
      labels.push_back(j == block && c == 0 ? s.eigenvalues[j] + shift : s.eigenvalues[j]);
      coarse_of.push_back(j);
    }
  Refinement r{build_operator(fam, labels, ResolutionPolicy::Require, s.degeneracy_tol), {}};
  for (double u : r.finer.spectrum.eigenvalues) {
    // Map each finer eigenvalue to the coarse cluster of the label it came from.
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (std::abs(labels[i] - u) <= 1e-9 * std::max(1.0, std::abs(u))) {
        r.f.push_back(coarse_of[i]);
        break;
      }
  }
  return r;
}

struct CoarseGraining {
  std::vector<int> t_map;               // fine value id -> coarse value id
  std::vector<double> coarse_labels;    // s_j, ascending
  std::vector<std::vector<int>> blocks;  // C_j, fine ids
  std::vector<CMatrix> block_projections;
};

struct CoarseResult {
  CoarseGraining coarse;
  OperatorBundle bundle;
};

/// A^a = sum_j s_j Pi_j with Pi_j = sum_{i in C_j} |a;i><a;i| and
/// s_j = t(u_i) for i in C_j.
template <class T>
CoarseResult coarse_grain(std::span<const CVector> basis, std::span<const double> fine_labels, T&& t,
                          double degeneracy_tol = kDefaultDegeneracyTol) {
  if (basis.size() != fine_labels.size() || basis.empty())
    throw Error(Errc::DimensionMismatch, "one fine label per basis vector");
  std::vector<double> image;
  for (double u : fine_labels) image.push_back(static_cast<double>(t(u)));
  CoarseGraining cg;
  cg.coarse_labels = image;
  std::sort(cg.coarse_labels.begin(), cg.coarse_labels.end());
  cg.coarse_labels.erase(std::unique(cg.coarse_labels.begin(), cg.coarse_labels.end()), cg.coarse_labels.end());
  cg.blocks.resize(cg.coarse_labels.size());
  const Eigen::Index dim = basis.front().size();
  cg.block_projections.assign(cg.coarse_labels.size(), CMatrix::Zero(dim, dim));
  for (std::size_t i = 0; i < image.size(); ++i) {
    const int j = static_cast<int>(std::lower_bound(cg.coarse_labels.begin(), cg.coarse_labels.end(), image[i]) -
                                   cg.coarse_labels.begin());
    cg.t_map.push_back(j);
    cg.blocks[j].push_back(static_cast<int>(i));
    cg.block_projections[j] += outer(basis[i]);
  }
  StateFamily fam{std::vector<CVector>(basis.begin(), basis.end()), std::vector<double>(basis.size(), 1.0)};
  return {std::move(cg), build_operator(fam, image, ResolutionPolicy::Require, degeneracy_tol)};
}

struct LabeledBasis {
  std::string name;
  std::vector<CVector> vectors;  // orthonormal
};

struct Match {
  std::string basis;
  int index;

  friend bool operator==(const Match&, const Match&) = default;
};

/// Every (a, j) with |<a;j|v>|^2 >= 1 - tol.
inline std::vector<Match> question_answer_match(const CVector& v, std::span<const LabeledBasis> bases,
                                                double tol = 1e-6) {
  if (std::abs(v.norm() - 1.0) > 1e-9) throw Error(Errc::NotUnit, "vector norm " + std::to_string(v.norm()));
  std::vector<Match> out;
  for (const LabeledBasis& b : bases)
    for (std::size_t j = 0; j < b.vectors.size(); ++j) {
      if (b.vectors[j].size() != v.size()) throw Error(Errc::DimensionMismatch, "basis " + b.name);
      if (std::norm(b.vectors[j].dot(v)) >= 1.0 - tol) out.push_back({b.name, static_cast<int>(j)});
    }
  return out;
}

}  // namespace qgroup
