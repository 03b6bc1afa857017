#pragma once

// Finite phase space on Z_n: position shifts, momentum phases and the
// discrete Fourier pairing between the position and momentum bases. This is a
// finite analog of translations in position and momentum; the continuous case
// is not represented.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qgroup/algebra.hpp"
#include "qgroup/error.hpp"
#include "qgroup/groups.hpp"
#include "qgroup/quantize.hpp"
#include "qgroup/reps_coherent.hpp"

namespace qgroup {

inline void require_lattice(int n) {
  if (n < 2) throw Error(Errc::BadSize, "phase space needs n >= 2, got " + std::to_string(n));
  if (n > 200) throw Error(Errc::BadSize, "phase space size above 200 is out of range");
}

/// S|x> = |x + 1 mod n>
inline CMatrix position_shift(int n) {
  require_lattice(n);
  CMatrix s = CMatrix::Zero(n, n);
  for (int x = 0; x < n; ++x) s((x + 1) % n, x) = 1.0;
  return s;
}

/// M|x> = w^x |x>, w = exp(2 pi i / n)
inline CMatrix momentum_phase(int n) {
  require_lattice(n);
  CMatrix m = CMatrix::Zero(n, n);
  for (int x = 0; x < n; ++x) m(x, x) = std::polar(1.0, 2.0 * std::numbers::pi * x / n);
  return m;
}

/// Columns are momentum states |p> = n^{-1/2} sum_x w^{xp} |x>.
inline CMatrix fourier_basis(int n) {
  require_lattice(n);
  CMatrix f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int x = 0; x < n; ++x)
    for (int p = 0; p < n; ++p) f(x, p) = std::polar(norm, 2.0 * std::numbers::pi * ((x * p) % n) / n);
  return f;
}

/// m^k for k >= 0 by repeated squaring.
inline CMatrix matrix_power(CMatrix m, int k) {
  if (k < 0) throw Error(Errc::BadSize, "negative matrix power");
  CMatrix out = identity(m.rows());
  for (; k > 0; k >>= 1) {
    if (k & 1) out = out * m;
    if (k > 1) m = m * m;
  }
  return out;
}

/// k -> S^k as a representation of cyclic:n.
inline UnitaryRep position_shift_rep(int n) {
  return UnitaryRep::from_generators(cyclic_group(n), {position_shift(n)});
}

/// k -> M^k as a representation of cyclic:n.
inline UnitaryRep momentum_phase_rep(int n) {
  return UnitaryRep::from_generators(cyclic_group(n), {momentum_phase(n)});
}

/// Largest deviation of |<x|p>|^2 from 1/n.
inline double unbiasedness_error(const CMatrix& basis_a, const CMatrix& basis_b) {
  const CMatrix overlaps = basis_a.adjoint() * basis_b;
  const double target = 1.0 / static_cast<double>(basis_a.cols());
  return (overlaps.cwiseAbs2().array() - target).abs().maxCoeff();
}

/// Position operator X = sum_x x |x><x| and momentum operator
/// P = sum_p p |p><p|, each built in its own basis with labels 0..n-1.
struct PhaseSpaceOperators {
  OperatorBundle position;
  OperatorBundle momentum;
};

inline PhaseSpaceOperators phase_space_operators(int n) {
  require_lattice(n);
  std::vector<double> labels(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) labels[x] = x;
  return {build_operator(StateFamily::from_basis(identity(n)), labels),
          build_operator(StateFamily::from_basis(fourier_basis(n)), labels)};
}

}  // namespace qgroup
