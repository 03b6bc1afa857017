#pragma once

// Spin-j angular momentum in the J_z eigenbasis (m = j, j-1, ..., -j), with
// hbar = 1, and rotations V = exp(-i angle axis.J).

#include <array>
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

/// Spin quantum number stored as the integer 2j.
struct Spin {
  int twice_j = 1;

  double j() const { return 0.5 * twice_j; }
  int dim() const { return twice_j + 1; }

  static Spin from_twice(int twice) {
    if (twice < 0) throw Error(Errc::BadSpin, "2j must be nonnegative");
    if (twice > 400) throw Error(Errc::BadSpin, "2j above 400 is out of range");
    return Spin{twice};
  }

  static Spin from_double(double j) {
    const double twice = 2.0 * j;
    if (!std::isfinite(twice) || std::abs(twice - std::round(twice)) > 1e-12)
      throw Error(Errc::BadSpin, "j must be a nonnegative half-integer");
    return from_twice(static_cast<int>(std::lround(twice)));
  }

  /// Accepts "1/2", "3/2", "1", "1.5".
  static Spin parse(const std::string& s) {
    try {
      std::size_t used = 0;
      const auto slash = s.find('/');
      if (slash != std::string::npos) {
        if (s.substr(slash + 1) != "2") throw Error(Errc::BadSpin, "'" + s + "'");
        const int num = std::stoi(s.substr(0, slash), &used);
        if (used != slash) throw Error(Errc::BadSpin, "'" + s + "'");
        if (num % 2 == 0) throw Error(Errc::BadSpin, "'" + s + "' is not written in lowest terms");
        return from_twice(num);
      }
      const double j = std::stod(s, &used);
      if (used != s.size()) throw Error(Errc::BadSpin, "'" + s + "'");
      return from_double(j);
    } catch (const std::logic_error&) {
      throw Error(Errc::BadSpin, "'" + s + "'");
    }
  }
};

using Vec3 = std::array<double, 3>;

struct SpinGenerators {
  CMatrix jx, jy, jz;

  CMatrix along(const Vec3& a) const { return a[0] * jx + a[1] * jy + a[2] * jz; }
};

/// Ladder construction: J+|m> = sqrt(j(j+1) - m(m+1)) |m+1>.
inline SpinGenerators spin_generators(Spin s) {
  const int n = s.dim();
  const double j = s.j();
  CMatrix jp = CMatrix::Zero(n, n);
  CMatrix jz = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double m = j - i;
    jz(i, i) = m;
    if (i > 0) jp(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const CMatrix jm = jp.adjoint();
  return {0.5 * (jp + jm), cplx(0, -0.5) * (jp - jm), jz};
}

inline double commutation_error(const SpinGenerators& g) {
  const cplx i(0, 1);
  double err = (commutator(g.jx, g.jy) - i * g.jz).norm();
  err = std::max(err, (commutator(g.jy, g.jz) - i * g.jx).norm());
  err = std::max(err, (commutator(g.jz, g.jx) - i * g.jy).norm());
  return err;
}

inline Vec3 normalized(const Vec3& a) {
  const double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  if (!(n > 0) || !std::isfinite(n)) throw Error(Errc::BadSpin, "direction must be a nonzero finite vector");
  return {a[0] / n, a[1] / n, a[2] / n};
}

/// Unit vector perpendicular to a.
inline Vec3 perpendicular(const Vec3& a) {
  // Cross with the coordinate axis least aligned with a.
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(a[i]) < std::abs(a[k])) k = i;
  Vec3 e{0, 0, 0};
  e[k] = 1;
  return normalized({a[1] * e[2] - a[2] * e[1], a[2] * e[0] - a[0] * e[2], a[0] * e[1] - a[1] * e[0]});
}

/// A^a = a.J for a unit direction a.
inline OperatorBundle spin_component_operator(Spin s, const Vec3& a) {
  const Vec3 u = normalized(a);
  if (std::abs(std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]) - 1.0) > 1e-12)
    throw Error(Errc::BadSpin, "direction must be a unit vector");
  return bundle_from_matrix(spin_generators(s).along(u));
}

inline CMatrix spin_rotation(Spin s, const Vec3& axis, double angle) {
  return expm_antihermitian(spin_generators(s).along(normalized(axis)), angle);
}

/// Spin-j image of a unit quaternion q = cos(t/2) + sin(t/2) n, namely
/// exp(-i t n.J). For j = 1/2 this is w I - i (x sx + y sy + z sz).
inline CMatrix spin_quaternion_matrix(Spin s, const Quaternion& q) {
  const double vnorm = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  const double angle = 2.0 * std::atan2(vnorm, q.w);
  if (vnorm < 1e-15) return expm_antihermitian(spin_generators(s).jz, angle);
  return expm_antihermitian(spin_generators(s).along({q.x / vnorm, q.y / vnorm, q.z / vnorm}), angle);
}

/// The binary tetrahedral group acting through spin j.
inline UnitaryRep binary_tetrahedral_spin_rep(Spin s) {
  auto [group, quats] = binary_tetrahedral_group();
  std::vector<CMatrix> mats;
  mats.reserve(quats.size());
  for (const Quaternion& q : quats) mats.push_back(spin_quaternion_matrix(s, q));
  return UnitaryRep::make(std::move(group), std::move(mats));
}

}  // namespace qgroup
