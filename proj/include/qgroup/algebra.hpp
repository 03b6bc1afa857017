#pragma once

// Dense complex linear algebra kernel. Matrices and vectors are Eigen types;
// this header adds the Hermitian spectral machinery the rest of the library
// is built on.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgroup/error.hpp"

namespace qgroup {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDefaultDegeneracyTol = 1e-8;
inline constexpr double kHermitianTol = 1e-10;

inline CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

inline double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double frobenius_norm(const CMatrix& a) { return a.norm(); }

inline double frobenius_dist(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, "frobenius_dist: shapes differ");
  return (a - b).norm();
}

inline bool all_finite(const CMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const cplx z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

/// Max-entry deviation of A from A†.
inline double hermitian_error(const CMatrix& a) { return max_abs(a - a.adjoint()); }

inline bool is_hermitian(const CMatrix& a, double tol = kHermitianTol) {
  return a.rows() == a.cols() && hermitian_error(a) <= tol * std::max(1.0, max_abs(a));
}

inline bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - identity(u.rows())).norm() <= tol;
}

inline CMatrix outer(const CVector& v) { return v * v.adjoint(); }

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

namespace detail {

inline void require_hermitian(const CMatrix& a, const char* who) {
  if (a.rows() != a.cols())
    throw Error(Errc::NotSquare, std::string(who) + ": matrix is " + std::to_string(a.rows()) +
                                     "x" + std::to_string(a.cols()));
  if (!all_finite(a)) throw Error(Errc::NonFinite, std::string(who) + ": non-finite entry");
  if (!is_hermitian(a))
    throw Error(Errc::NotHermitian, std::string(who) + ": |A - A^H|_max = " +
                                        std::to_string(hermitian_error(a)));
}

}  // namespace detail

/// Spectral decomposition A = sum_j u_j P_j with eigenvalues merged into
/// degenerate clusters.
struct SpectralData {
  std::vector<double> eigenvalues;  // ascending, one per cluster
  std::vector<CMatrix> projections;
  std::vector<int> multiplicities;
  /// Orthonormal basis of each eigenspace, one column per vector.
  std::vector<CMatrix> eigenspaces;
  double degeneracy_tol = kDefaultDegeneracyTol;

  int dim() const { return projections.empty() ? 0 : static_cast<int>(projections.front().rows()); }
  int size() const { return static_cast<int>(eigenvalues.size()); }

  CMatrix reconstruct() const {
    CMatrix a = CMatrix::Zero(dim(), dim());
    for (std::size_t j = 0; j < eigenvalues.size(); ++j) a += eigenvalues[j] * projections[j];
    return a;
  }
};

/// Hermitian eigendecomposition with greedy ascending clustering: an
/// eigenvalue joins the current cluster when its gap to the previous one is at
/// most degeneracy_tol * max(1, |A|_F).
inline SpectralData eig_hermitian(const CMatrix& a, double degeneracy_tol = kDefaultDegeneracyTol) {
  detail::require_hermitian(a, "eig_hermitian");
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error(Errc::ConvergenceFailure, "eig_hermitian: eigensolver did not converge");

  const Eigen::VectorXd& evals = solver.eigenvalues();
  const CMatrix& evecs = solver.eigenvectors();
  const double gap = degeneracy_tol * std::max(1.0, a.norm());

  SpectralData out;
  out.degeneracy_tol = degeneracy_tol;
  const Eigen::Index n = a.rows();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && evals(end) - evals(end - 1) <= gap) ++end;
    const Eigen::Index count = end - start;
    const CMatrix basis = evecs.middleCols(start, count);
    out.eigenvalues.push_back(evals.segment(start, count).mean());
    out.multiplicities.push_back(static_cast<int>(count));
    out.projections.push_back(basis * basis.adjoint());
    out.eigenspaces.push_back(basis);
    start = end;
  }
  return out;
}

/// exp(-i t H) for Hermitian H, through the eigendecomposition of H.
inline CMatrix expm_antihermitian(const CMatrix& h, double t) {
  detail::require_hermitian(h, "expm_antihermitian");
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error(Errc::ConvergenceFailure, "expm_antihermitian: eigensolver did not converge");
  const Eigen::VectorXd& evals = solver.eigenvalues();
  CVector phases(evals.size());
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    phases(i) = std::exp(cplx(0.0, -t * evals(i)));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

/// Modified Gram-Schmidt with one reorthogonalization pass. Vectors whose
/// residual norm falls below 1e-12 are dropped.
inline std::vector<CVector> gram_schmidt(std::span<const CVector> vectors) {
  std::vector<CVector> basis;
  if (vectors.empty()) return basis;
  const Eigen::Index dim = vectors.front().size();
  for (const CVector& v : vectors) {
    if (v.size() != dim) throw Error(Errc::DimensionMismatch, "gram_schmidt: ragged input");
    CVector r = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const CVector& q : basis) r -= q.dot(r) * q;
    const double norm = r.norm();
    if (norm < 1e-12) continue;
    basis.push_back(r / norm);
  }
  return basis;
}

/// Columns of m as separate vectors.
inline std::vector<CVector> columns(const CMatrix& m) {
  std::vector<CVector> out;
  out.reserve(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.emplace_back(m.col(c));
  return out;
}

}  // namespace qgroup
