#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qgroup/error.hpp"
#include "qgroup/groups.hpp"
#include "qgroup/reps_coherent.hpp"
#include "qgroup/scenarios.hpp"
#include "qgroup/spin.hpp"
#include "test_util.hpp"

using namespace qgroup;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InternalError;
}

/// Commutant dimension over every group element, by LU rank of the stacked
/// row-major system X V - V X = 0.
int commutant_oracle(const UnitaryRep& rep) {
  const int n = rep.dim();
  const int order = rep.group().order();
  CMatrix sys = CMatrix::Zero(static_cast<Eigen::Index>(order) * n * n, n * n);
  for (int k = 0; k < order; ++k)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        // Row for entry (r, c) of X V - V X; unknown X(a, b) sits at column a * n + b.
        const Eigen::Index row = static_cast<Eigen::Index>(k) * n * n + r * n + c;
        for (int m = 0; m < n; ++m) {
          sys(row, r * n + m) += rep(k)(m, c);
          sys(row, m * n + c) -= rep(k)(r, m);
        }
      }
  Eigen::FullPivLU<CMatrix> lu(sys);
  lu.setThreshold(1e-10);
  return n * n - static_cast<int>(lu.rank());
}

UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b) {
  std::vector<CMatrix> mats;
  for (int k = 0; k < a.group().order(); ++k) {
    CMatrix m = CMatrix::Zero(a.dim() + b.dim(), a.dim() + b.dim());
    m.topLeftCorner(a.dim(), a.dim()) = a(k);
    m.bottomRightCorner(b.dim(), b.dim()) = b(k);
    mats.push_back(m);
  }
  return UnitaryRep::make(a.group(), mats);
}

UnitaryRep trivial_rep(const FiniteGroup& g, int dim) {
  return UnitaryRep::make(g, std::vector<CMatrix>(static_cast<std::size_t>(g.order()), identity(dim)));
}

CoherentSystem unit_weight_system(const UnitaryRep& rep, const GroupAction& act, const CVector& fid) {
  return make_coherent(rep, act, 0, fid, invariant_measure(act, std::vector<double>{double(act.space_size())}));
}

}  // namespace

TEST(UnitaryRep, Validation) {
  const FiniteGroup c2 = cyclic_group(2);
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_NO_THROW(UnitaryRep::make(c2, {identity(2), x}));
  EXPECT_EQ(code_of([&] { UnitaryRep::make(c2, {identity(2), 2.0 * x}); }), Errc::NotUnitary);
  EXPECT_EQ(code_of([&] { UnitaryRep::make(c2, {x, x}); }), Errc::NotHomomorphism);
  CMatrix i4 = cplx(0, 1) * identity(1);
  EXPECT_EQ(code_of([&] { UnitaryRep::make(c2, {identity(1), i4}); }), Errc::NotHomomorphism);
  EXPECT_EQ(code_of([&] { UnitaryRep::make(c2, {identity(1)}); }), Errc::DimensionMismatch);
}

TEST(UnitaryRep, GeneratorCheckAgreesWithExhaustiveCheck) {
  std::mt19937_64 rng(3);
  const UnitaryRep big = binary_tetrahedral_spin_rep(Spin{5});
  EXPECT_LE(big.homomorphism_error(), 1e-8);
  EXPECT_LE(big.exhaustive_homomorphism_error(), 1e-8);
  // Corrupt one non-generator matrix: both checks must see it.
  std::vector<CMatrix> mats = big.matrices();
  mats[17] = testutil::random_unitary(rng, big.dim());
  EXPECT_EQ(code_of([&] { UnitaryRep::make(big.group(), mats); }), Errc::NotHomomorphism);
}

TEST(LeftRegular, Examples) {
  const UnitaryRep c2 = left_regular_rep(cyclic_group(2));
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_EQ(c2(0), identity(2));
  EXPECT_EQ(c2(1), x);

  const UnitaryRep c3 = left_regular_rep(cyclic_group(3));
  for (int k = 0; k < 3; ++k)
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) EXPECT_EQ(c3(k)(r, c), cplx(r == (c + k) % 3 ? 1.0 : 0.0));

  const FiniteGroup d4 = dihedral_group(4);
  const UnitaryRep reg = left_regular_rep(d4);
  EXPECT_EQ(reg(d4.identity()), identity(8));
  // (V(k) f)(x) = f(k^-1 x) on indicator functions.
  for (int k = 0; k < 8; ++k)
    for (int y = 0; y < 8; ++y) {
      const CVector f = CVector::Unit(8, y);
      const CVector g = reg(k) * f;
      for (int x = 0; x < 8; ++x) EXPECT_EQ(g(x), f(d4.mul(d4.inv(k), x)));
    }
}

TEST(Irreducibility, Examples) {
  const FiniteGroup c3 = cyclic_group(3);
  const UnitaryRep chi = UnitaryRep::from_generators(c3, {CMatrix::Constant(1, 1, std::polar(1.0, 2 * std::numbers::pi / 3))});
  EXPECT_EQ(is_irreducible(chi).commutant_dimension, 1);
  EXPECT_TRUE(is_irreducible(chi).irreducible);

  const UnitaryRep d4 = dihedral_rotation_rep(4);
  EXPECT_TRUE(is_irreducible(d4).irreducible);
  EXPECT_EQ(commutant_oracle(d4), 1);

  const Irreducibility triv = is_irreducible(trivial_rep(c3, 2));
  EXPECT_FALSE(triv.irreducible);
  EXPECT_EQ(triv.commutant_dimension, 4);
}

TEST(IrreducibilityProperty, CommutantMatchesLuOracle) {
  std::vector<UnitaryRep> reps;
  for (const char* name : {"cyclic:5", "dihedral:3", "dihedral:4", "symmetric:3", "cyclic:2xcyclic:2"})
    reps.push_back(left_regular_rep(make_named_group(name)));
  reps.push_back(dihedral_rotation_rep(5));
  reps.push_back(direct_sum(dihedral_rotation_rep(4), dihedral_rotation_rep(4)));
  reps.push_back(direct_sum(dihedral_rotation_rep(4), trivial_rep(dihedral_group(4), 1)));
  for (int twice = 0; twice <= 4; ++twice) reps.push_back(binary_tetrahedral_spin_rep(Spin{twice}));
  reps.push_back(permutation_rep(polygon_action(6)));
  for (const UnitaryRep& rep : reps) {
    const int oracle = commutant_oracle(rep);
    EXPECT_EQ(is_irreducible(rep).commutant_dimension, oracle) << rep.group().name() << " dim " << rep.dim();
  }
  // Regular representation: commutant dimension = group order.
  EXPECT_EQ(is_irreducible(left_regular_rep(dihedral_group(4))).commutant_dimension, 8);
  // Spin j restricted to the binary tetrahedral group: j = 1/2, 1 irreducible, 3/2 not.
  EXPECT_TRUE(is_irreducible(binary_tetrahedral_spin_rep(Spin{1})).irreducible);
  EXPECT_TRUE(is_irreducible(binary_tetrahedral_spin_rep(Spin{2})).irreducible);
  EXPECT_FALSE(is_irreducible(binary_tetrahedral_spin_rep(Spin{3})).irreducible);
}

TEST(Coherent, StatesAndErrors) {
  const UnitaryRep d4 = dihedral_rotation_rep(4);
  const GroupAction square = polygon_action(4);
  const CoherentSystem cs = unit_weight_system(d4, square, CVector::Unit(2, 0));
  ASSERT_EQ(cs.states.size(), 8u);
  for (const CVector& s : cs.states) EXPECT_NEAR(s.norm(), 1.0, 1e-12);
  EXPECT_LE((cs.states[0] - cs.fiducial).norm(), 0.0);

  const FiniteGroup one = cyclic_group(1);
  CVector f(1);
  f << cplx(0.6, 0.8);
  const CoherentSystem single = unit_weight_system(trivial_rep(one, 1), GroupAction::regular(one), f);
  ASSERT_EQ(single.states.size(), 1u);
  EXPECT_EQ(single.states[0], f);

  const UnitaryRep bt = binary_tetrahedral_spin_rep(Spin{1});
  const CoherentSystem bts = unit_weight_system(bt, GroupAction::regular(bt.group()), CVector::Unit(2, 0));
  ASSERT_EQ(bts.states.size(), 24u);
  for (const CVector& s : bts.states) EXPECT_NEAR(s.norm(), 1.0, 1e-12);

  EXPECT_EQ(code_of([&] { unit_weight_system(d4, square, CVector::Zero(2)); }), Errc::ZeroFiducial);
  const GroupAction split = GroupAction::from_generators(dihedral_group(4), {{0, 1, 2, 3, 5, 4}, {0, 1, 2, 3, 4, 5}});
  EXPECT_EQ(code_of([&] {
              make_coherent(d4, split, 0, CVector::Unit(2, 0),
                            invariant_measure(split, std::vector<double>{1, 1, 1, 1, 1}));
            }),
            Errc::NonTransitive);
}

TEST(Frame, DihedralFourIsFourTimesIdentity) {
  const CoherentSystem cs = unit_weight_system(dihedral_rotation_rep(4), polygon_action(4), CVector::Unit(2, 0));
  // Oracle: the eight outer products written out term by term.
  CMatrix direct = CMatrix::Zero(2, 2);
  for (int k = 0; k < 8; ++k) {
    const CVector& s = cs.states[k];
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) direct(r, c) += s(r) * std::conj(s(c));
  }
  EXPECT_LE((direct - 4.0 * identity(2)).norm(), 1e-10);
  const FrameOperator fo = frame_operator(cs);
  EXPECT_NEAR(fo.lambda, 4.0, 1e-12);
  EXPECT_LE((fo.T - direct).norm(), 1e-12);
  EXPECT_LE(resolution_over_theta(cs.states, fo.normalized_weights).deviation, 1e-12);
}

TEST(Frame, BinaryTetrahedralIsTwelveTimesIdentity) {
  const UnitaryRep bt = binary_tetrahedral_spin_rep(Spin{1});
  const CoherentSystem cs = unit_weight_system(bt, GroupAction::regular(bt.group()), CVector::Unit(2, 0));
  CMatrix direct = CMatrix::Zero(2, 2);
  for (const CVector& s : cs.states) direct += s * s.adjoint();
  EXPECT_LE((direct - 12.0 * identity(2)).norm(), 1e-9);
  EXPECT_NEAR(frame_operator(cs).lambda, 12.0, 1e-9);
}

TEST(Frame, TrivialAndNotScalar) {
  const FiniteGroup one = cyclic_group(1);
  const CoherentSystem cs = unit_weight_system(trivial_rep(one, 1), GroupAction::regular(one), CVector::Ones(1));
  EXPECT_NEAR(frame_operator(cs).lambda, 1.0, 1e-15);

  // Regular rep of cyclic:2 with an invariant fiducial spans only one line.
  const UnitaryRep reg = left_regular_rep(cyclic_group(2));
  const CoherentSystem flat = unit_weight_system(reg, GroupAction::regular(reg.group()), CVector::Ones(2));
  EXPECT_EQ(code_of([&] { frame_operator(flat); }), Errc::NotScalar);
  const FrameOperator diag = frame_diagnostics(flat);
  EXPECT_EQ(diag.rank, 1);
  EXPECT_GE(diag.min_eigenvalue, -1e-12);
  EXPECT_LE(diag.commutation_error, 1e-12);
}

TEST(Resolution, Examples) {
  std::vector<CVector> basis{CVector::Unit(2, 0), CVector::Unit(2, 1)};
  EXPECT_EQ(resolution_over_theta(basis, std::vector<double>{1, 1}).deviation, 0.0);
  const ResolutionCheck single =
      resolution_over_theta(std::vector<CVector>{CVector::Unit(2, 0)}, std::vector<double>{1.0});
  EXPECT_EQ(single.deviation, 1.0);
  EXPECT_FALSE(single.passed);
  const CoherentSystem cs = unit_weight_system(dihedral_rotation_rep(4), polygon_action(4), CVector::Unit(2, 0));
  EXPECT_LE(resolution_over_theta(cs.states, std::vector<double>(8, 0.25)).deviation, 1e-12);
}

TEST(Transport, Examples) {
  const CoherentSystem cs = unit_weight_system(dihedral_rotation_rep(4), polygon_action(4), CVector::Unit(2, 0));
  const std::vector<double> w(8, 0.25);
  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  CMatrix phase(2, 2);
  phase << 1, 0, 0, cplx(0, 1);
  for (const CMatrix& u : {identity(2), h, phase}) {
    const CoherentSystem moved = unitary_transport(cs, u);
    EXPECT_LE(resolution_over_theta(moved.states, w).deviation, 1e-12);
    EXPECT_LE(moved.rep.homomorphism_error(), 1e-12);
  }
  EXPECT_EQ(code_of([&] { unitary_transport(cs, 2.0 * h); }), Errc::NotUnitary);
}

TEST(CoherentProperty, FrameTraceSchurAndEquivalence) {
  std::mt19937_64 rng(59);
  struct Setup {
    UnitaryRep rep;
    GroupAction act;
  };
  std::vector<Setup> setups;
  setups.push_back({dihedral_rotation_rep(4), polygon_action(4)});
  setups.push_back({dihedral_rotation_rep(5), polygon_action(5)});
  for (int twice = 1; twice <= 4; ++twice) {
    const UnitaryRep bt = binary_tetrahedral_spin_rep(Spin{twice});
    setups.push_back({bt, GroupAction::regular(bt.group())});
  }
  setups.push_back({left_regular_rep(dihedral_group(3)), GroupAction::regular(dihedral_group(3))});
  for (const Setup& s : setups) {
    for (int trial = 0; trial < 5; ++trial) {
      const CVector fid = testutil::random_complex(rng, s.rep.dim(), 1);
      const CoherentSystem cs = unit_weight_system(s.rep, s.act, fid);
      const FrameOperator fd = frame_diagnostics(cs);
      EXPECT_LE(fd.commutation_error, 1e-9 * std::max(1.0, fd.T.norm()));
      EXPECT_GE(fd.min_eigenvalue, -1e-10);
      // trace(T) = sum_k w_k |phi_0|^2 regardless of irreducibility; one state per group element.
      double mass = 0;
      for (double w : cs.state_weights) mass += w;
      EXPECT_EQ(cs.states.size(), static_cast<std::size_t>(s.rep.group().order()));
      EXPECT_NEAR(fd.T.trace().real(), mass * fid.squaredNorm(), 1e-9 * fd.T.norm());
      if (cs.irreducibility.irreducible) {
        EXPECT_LE((fd.T - fd.T.trace().real() / s.rep.dim() * identity(s.rep.dim())).norm(),
                  1e-8 * fd.T.trace().real());
        EXPECT_GT(fd.min_eigenvalue, 0.0);
        const FrameOperator fo = frame_operator(cs);
        EXPECT_LE(resolution_over_theta(cs.states, fo.normalized_weights).deviation, 1e-9);
        const CMatrix w = testutil::random_unitary(rng, s.rep.dim());
        const CoherentSystem eq = make_coherent(s.rep.conjugated(w), s.act, 0, w * fid, cs.measure);
        const FrameOperator fe = frame_operator(eq);
        EXPECT_NEAR(fe.lambda, fo.lambda, 1e-9 * fo.lambda);
        EXPECT_LE((fe.T - w * fo.T * w.adjoint()).norm(), 1e-9 * std::max(1.0, fo.T.norm()));
      }
    }
  }
}
