#pragma once

// Unitary representations of finite groups, irreducibility through the
// commutant, coherent-state systems and their frame operators.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgroup/algebra.hpp"
#include "qgroup/error.hpp"
#include "qgroup/groups.hpp"

namespace qgroup {

inline constexpr double kRepHomomorphismTol = 1e-8;

class UnitaryRep {
 public:
  /// Checks unitarity (1e-9 * dim), V(e) = I and the homomorphism property
  /// (tol, Frobenius); see homomorphism_error.
  static UnitaryRep make(FiniteGroup group, std::vector<CMatrix> matrices, double tol = kRepHomomorphismTol) {
    if (static_cast<int>(matrices.size()) != group.order())
      throw Error(Errc::DimensionMismatch, "need one matrix per group element");
    const Eigen::Index dim = matrices.front().rows();
    if (dim <= 0) throw Error(Errc::DimensionMismatch, "empty representation");
    for (const CMatrix& m : matrices) {
      if (m.rows() != dim || m.cols() != dim) throw Error(Errc::DimensionMismatch, "matrices differ in shape");
      if (!all_finite(m)) throw Error(Errc::NonFinite, "representation matrix");
      if (!is_unitary(m, 1e-9 * static_cast<double>(dim))) throw Error(Errc::NotUnitary, "representation matrix");
    }
    UnitaryRep rep(std::move(group), std::move(matrices));
    if (frobenius_dist(rep.mats_[rep.group_.identity()], identity(dim)) > tol)
      throw Error(Errc::NotHomomorphism, "V(e) != I");
    const double err = rep.homomorphism_error();
    if (err > tol) throw Error(Errc::NotHomomorphism, "max |V(ab) - V(a)V(b)|_F = " + std::to_string(err));
    return rep;
  }

  /// Extends generator images along the Cayley graph, then validates.
  static UnitaryRep from_generators(FiniteGroup group, const std::vector<CMatrix>& generator_matrices,
                                    double tol = kRepHomomorphismTol) {
    if (generator_matrices.size() != group.generators().size())
      throw Error(Errc::DimensionMismatch, "need one matrix per generator");
    const Eigen::Index dim = generator_matrices.empty() ? 1 : generator_matrices.front().rows();
    auto mats = GroupAction::extend_from_generators(group, generator_matrices, identity(dim),
                                                    [](const CMatrix& a, const CMatrix& b) -> CMatrix { return a * b; });
    return make(std::move(group), std::move(mats), tol);
  }

  const FiniteGroup& group() const { return group_; }
  int dim() const { return static_cast<int>(mats_.front().rows()); }
  const CMatrix& operator()(int k) const { return mats_[k]; }
  const std::vector<CMatrix>& matrices() const { return mats_; }

  /// max |V(ab) - V(a)V(b)|_F. Over every pair when that is cheap; otherwise
  /// over b ranging through the generators, which implies the law for every
  /// pair by induction on word length.
  double homomorphism_error() const {
    const double n = group_.order();
    const double d = dim();
    if (n * n * d * d * d <= 5e7) return exhaustive_homomorphism_error();
    double err = 0;
    for (int a = 0; a < group_.order(); ++a)
      for (int b : group_.generators())
        err = std::max(err, frobenius_dist(mats_[group_.mul(a, b)], mats_[a] * mats_[b]));
    return err;
  }

  double exhaustive_homomorphism_error() const {
    double err = 0;
    for (int a = 0; a < group_.order(); ++a)
      for (int b = 0; b < group_.order(); ++b)
        err = std::max(err, frobenius_dist(mats_[group_.mul(a, b)], mats_[a] * mats_[b]));
    return err;
  }

  /// The equivalent representation W V(k) W^H.
  UnitaryRep conjugated(const CMatrix& w) const {
    if (!is_unitary(w, 1e-9 * dim())) throw Error(Errc::NotUnitary, "conjugating matrix");
    std::vector<CMatrix> mats;
    mats.reserve(mats_.size());
    for (const CMatrix& m : mats_) mats.push_back(w * m * w.adjoint());
    return UnitaryRep(group_, std::move(mats));
  }

 private:
  UnitaryRep(FiniteGroup g, std::vector<CMatrix> m) : group_(std::move(g)), mats_(std::move(m)) {}

  FiniteGroup group_;
  std::vector<CMatrix> mats_;
};

/// Permutation matrices of an action: column y has its 1 in row k y, so that
/// (V(k) f)(x) = f(k^-1 x).
inline UnitaryRep permutation_rep(const GroupAction& act) {
  const int n = act.space_size();
  std::vector<CMatrix> mats;
  mats.reserve(static_cast<std::size_t>(act.group().order()));
  for (int k = 0; k < act.group().order(); ++k) {
    CMatrix m = CMatrix::Zero(n, n);
    for (int y = 0; y < n; ++y) m(act.apply(k, y), y) = 1.0;
    mats.push_back(std::move(m));
  }
  return UnitaryRep::make(act.group(), std::move(mats));
}

inline UnitaryRep left_regular_rep(const FiniteGroup& g) { return permutation_rep(GroupAction::regular(g)); }

struct Irreducibility {
  bool irreducible = false;
  int commutant_dimension = 0;
};

/// Dimension of {X : X V(k) = V(k) X for every generator k}, from the null
/// space of the stacked Sylvester system (via its Gram matrix).
inline Irreducibility is_irreducible(const UnitaryRep& rep, double tol = 1e-9) {
  const Eigen::Index n = rep.dim();
  const Eigen::Index nn = n * n;
  std::vector<int> gens = rep.group().generators();
  if (gens.empty()) gens.push_back(rep.group().identity());
  const CMatrix id = identity(n);
  CMatrix gram = CMatrix::Zero(nn, nn);
  for (int k : gens) {
    const CMatrix& v = rep(k);
    // vec(X V) - vec(V X) = (V^T (x) I - I (x) V) vec(X), column-major vec.
    CMatrix c(nn, nn);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) c.block(i * n, j * n, n, n) = v(j, i) * id - (i == j ? v : CMatrix::Zero(n, n));
    gram += c.adjoint() * c;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(Errc::ConvergenceFailure, "commutant eigensolver");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double cutoff = tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
  int dim = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) <= cutoff) ++dim;
  return {dim == 1, dim};
}

/// Orbit of a fiducial vector, |phi(k)> = V(k)|phi_0>, weighted by the
/// invariant measure at k phi_0. States are parametrized by group elements;
/// when phi_0 has a nontrivial stabilizer each point is counted once per
/// stabilizer element.
struct CoherentSystem {
  UnitaryRep rep;
  GroupAction action;
  int base_point = 0;
  CVector fiducial;
  std::vector<CVector> states;        // per group element
  InvariantMeasure measure;           // on the space
  std::vector<double> state_weights;  // nu(k phi_0) per group element
  Irreducibility irreducibility;
};

inline CoherentSystem make_coherent(const UnitaryRep& rep, const GroupAction& act, int base_point,
                                    const CVector& fiducial, const InvariantMeasure& measure) {
  if (!(rep.group() == act.group())) throw Error(Errc::SizeMismatch, "representation and action use different groups");
  if (fiducial.size() != rep.dim()) throw Error(Errc::DimensionMismatch, "fiducial dimension");
  if (fiducial.norm() == 0.0) throw Error(Errc::ZeroFiducial, "fiducial vector is zero");
  if (!is_transitive(act)) throw Error(Errc::NonTransitive, "coherent systems need a transitive action");
  if (base_point < 0 || base_point >= act.space_size()) throw Error(Errc::BadElement, "base point out of range");
  if (static_cast<int>(measure.weights.size()) != act.space_size())
    throw Error(Errc::SizeMismatch, "measure does not match the space");

  CoherentSystem cs{rep, act, base_point, fiducial, {}, measure, {}, is_irreducible(rep)};
  const int order = rep.group().order();
  cs.states.reserve(static_cast<std::size_t>(order));
  cs.state_weights.reserve(static_cast<std::size_t>(order));
  for (int k = 0; k < order; ++k) {
    cs.states.push_back(rep(k) * fiducial);
    cs.state_weights.push_back(measure.weights[act.apply(k, base_point)]);
  }
  return cs;
}

/// sum_i w_i |s_i><s_i|
inline CMatrix frame_sum(std::span<const CVector> states, std::span<const double> weights) {
  if (states.size() != weights.size()) throw Error(Errc::DimensionMismatch, "one weight per state");
  if (states.empty()) throw Error(Errc::DimensionMismatch, "empty state family");
  const Eigen::Index dim = states.front().size();
  CMatrix t = CMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != dim) throw Error(Errc::DimensionMismatch, "states differ in dimension");
    t += weights[i] * outer(states[i]);
  }
  return t;
}

struct FrameOperator {
  CMatrix T;
  double lambda = 0;
  std::vector<double> normalized_weights;  // state weights divided by lambda
  double commutation_error = 0;            // max_h |V(h) T - T V(h)|_F
  double scalar_error = 0;                 // |T - lambda I|_F
  double min_eigenvalue = 0;
  int rank = 0;
};

/// Frame operator with diagnostics only; no Schur shortcut is applied.
inline FrameOperator frame_diagnostics(const CoherentSystem& cs) {
  FrameOperator f;
  f.T = frame_sum(cs.states, cs.state_weights);
  for (const CMatrix& v : cs.rep.matrices())
    f.commutation_error = std::max(f.commutation_error, commutator(v, f.T).norm());
  const Eigen::Index n = f.T.rows();
  f.lambda = f.T.trace().real() / static_cast<double>(n);
  f.scalar_error = (f.T - f.lambda * identity(n)).norm();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (f.T + f.T.adjoint()), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  f.min_eigenvalue = ev.minCoeff();
  const double cutoff = 1e-10 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  f.rank = static_cast<int>((ev.array() > cutoff).count());
  return f;
}

/// T = sum_k nu(k phi_0) |phi(k)><phi(k)|. Commutation with every V(h) is
/// verified first; T must then equal lambda I with lambda > 0.
inline FrameOperator frame_operator(const CoherentSystem& cs) {
  FrameOperator f = frame_diagnostics(cs);
  const double scale = std::max(1.0, f.T.norm());
  if (f.commutation_error > 1e-9 * scale)
    throw Error(Errc::NotScalar, "T does not commute with the representation (error " +
                                     std::to_string(f.commutation_error) + ")");
  if (!(f.lambda > 0) || f.scalar_error > 1e-8 * f.T.trace().real())
    throw Error(Errc::NotScalar, "T is not a positive multiple of the identity (|T - lambda I|_F = " +
                                     std::to_string(f.scalar_error) + ")");
  f.normalized_weights.reserve(cs.state_weights.size());
  for (double w : cs.state_weights) f.normalized_weights.push_back(w / f.lambda);
  return f;
}

struct ResolutionCheck {
  double deviation = 0;  // max-entry |sum w |s><s| - I|
  bool passed = false;
};

inline ResolutionCheck resolution_over_theta(std::span<const CVector> states, std::span<const double> weights) {
  const CMatrix t = frame_sum(states, weights);
  const double dev = max_abs(t - identity(t.rows()));
  return {dev, dev <= 1e-9 * static_cast<double>(t.rows())};
}

/// States W|phi(k)>, with the representation transported to W V(k) W^H.
inline CoherentSystem unitary_transport(const CoherentSystem& cs, const CMatrix& w) {
  if (w.rows() != cs.rep.dim() || w.cols() != cs.rep.dim())
    throw Error(Errc::DimensionMismatch, "transport matrix shape");
  if (!is_unitary(w, 1e-9 * cs.rep.dim())) throw Error(Errc::NotUnitary, "transport matrix");
  CoherentSystem out = cs;
  out.rep = cs.rep.conjugated(w);
  out.fiducial = w * cs.fiducial;
  for (CVector& s : out.states) s = w * s;
  return out;
}

}  // namespace qgroup
