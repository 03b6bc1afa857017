#pragma once

// Built-in end-to-end scenarios, configuration ingestion and the verification
// driver.
//
// Config document: {"scenario": string, "params": object, "tolerances": object,
// "seed": integer}; only "scenario" is required. Tolerance keys name checks;
// the key "*" applies to every non-exact check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgroup/algebra.hpp"
#include "qgroup/error.hpp"
#include "qgroup/groups.hpp"
#include "qgroup/phase_space.hpp"
#include "qgroup/quantize.hpp"
#include "qgroup/report.hpp"
#include "qgroup/reps_coherent.hpp"
#include "qgroup/serialize.hpp"
#include "qgroup/spin.hpp"
#include "qgroup/variables.hpp"

namespace qgroup {

inline constexpr std::uint64_t kDefaultSeed = 12345;

inline const std::vector<std::string>& builtin_scenarios() {
  static const std::vector<std::string> names{"spin", "phase", "pedagogy_z4", "coherent_d4", "coherent_bt24"};
  return names;
}

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline std::string fmt_list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + "]";
}

inline std::string fmt_ids(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

inline Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    Vec3 v{normal(rng), normal(rng), normal(rng)};
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (n > 1e-6) return {v[0] / n, v[1] / n, v[2] / n};
  }
}

/// Records a failed exact check when a library error escapes a check body.
template <class F>
void guarded(VerificationReport& r, const std::string& name, const std::string& anchor, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    r.require(name, anchor, false, e.what());
  }
}

/// Typed access to a params object that records defaults into an echo and
/// rejects unknown keys.
class Params {
 public:
  explicit Params(const ordered_json& j) : j_(j) {
    if (!j_.is_object()) throw Error(Errc::ConfigParseError, "'params' must be an object");
  }

  double number(const std::string& key, double def) {
    const double v = has(key) ? as_number(key) : def;
    echo_[key] = v;
    return v;
  }

  int integer(const std::string& key, int def) {
    int v = def;
    if (has(key)) {
      const auto& x = j_.at(key);
      if (!x.is_number_integer()) throw Error(Errc::ConfigParseError, "'" + key + "' must be an integer");
      v = x.get<int>();
    }
    echo_[key] = v;
    return v;
  }

  std::string text(const std::string& key, const std::string& def) {
    std::string v = def;
    if (has(key)) {
      if (!j_.at(key).is_string()) throw Error(Errc::ConfigParseError, "'" + key + "' must be a string");
      v = j_.at(key).get<std::string>();
    }
    echo_[key] = v;
    return v;
  }

  bool flag(const std::string& key, bool def) {
    bool v = def;
    if (has(key)) {
      if (!j_.at(key).is_boolean()) throw Error(Errc::ConfigParseError, "'" + key + "' must be a boolean");
      v = j_.at(key).get<bool>();
    }
    echo_[key] = v;
    return v;
  }

  Vec3 vec3(const std::string& key, const Vec3& def) {
    Vec3 v = def;
    if (has(key)) {
      const auto& x = j_.at(key);
      if (!x.is_array() || x.size() != 3 || !std::all_of(x.begin(), x.end(), [](const auto& e) { return e.is_number(); }))
        throw Error(Errc::ConfigParseError, "'" + key + "' must be an array of 3 numbers");
      v = {x[0].get<double>(), x[1].get<double>(), x[2].get<double>()};
    }
    echo_[key] = {v[0], v[1], v[2]};
    return v;
  }

  CVector complex_vector(const std::string& key, const CVector& def) {
    const CVector v = has(key) ? complex_vector_from_json(j_.at(key)) : def;
    echo_[key] = complex_vector_json(v);
    return v;
  }

  /// Spin given as "1/2"-style string or as a number.
  Spin spin(const std::string& key, Spin def) {
    Spin s = def;
    if (has(key)) {
      const auto& x = j_.at(key);
      if (x.is_string())
        s = Spin::parse(x.get<std::string>());
      else if (x.is_number())
        s = Spin::from_double(x.get<double>());
      else
        throw Error(Errc::ConfigParseError, "'" + key + "' must be a string or number");
    }
    echo_[key] = s.twice_j % 2 ? std::to_string(s.twice_j) + "/2" : std::to_string(s.twice_j / 2);
    return s;
  }

  /// Rejects keys that were never read.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) throw Error(Errc::ConfigParseError, "unknown parameter '" + it.key() + "'");
  }

  const ordered_json& echo() const { return echo_; }

 private:
  bool has(const std::string& key) {
    used_.insert(key);
    return j_.contains(key);
  }

  double as_number(const std::string& key) const {
    const auto& x = j_.at(key);
    if (!x.is_number()) throw Error(Errc::ConfigParseError, "'" + key + "' must be a number");
    return x.get<double>();
  }

  const ordered_json& j_;
  std::set<std::string> used_;
  ordered_json echo_ = ordered_json::object();
};

}  // namespace detail

// ---------------------------------------------------------------------------
// spin

struct SpinScenario {
  Spin spin{1};
  Vec3 direction{0, 0, 1};
  std::string subgroup = "sign_flip";  // or "trivial"
  std::string group_source = "binary_tetrahedral";  // or "none"
  double radius = 1.0;  // the component range sampled before reduction is [-r j, r j]
  std::uint64_t seed = kDefaultSeed;
};

/// Expected eigenvalue list -j, -j+1, ..., j.
inline std::vector<double> spin_ladder_values(Spin s) {
  std::vector<double> v;
  for (int i = 0; i < s.dim(); ++i) v.push_back(-s.j() + i);
  return v;
}

inline double spectrum_error(const OperatorBundle& b, Spin s) {
  const auto expected = spin_ladder_values(s);
  if (b.spectrum.size() != static_cast<int>(expected.size())) return std::numeric_limits<double>::infinity();
  double err = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) err = std::max(err, std::abs(b.spectrum.eigenvalues[i] - expected[i]));
  return err;
}

/// Value maps for the chosen subgroup: sign flip u -> -u (realised by a
/// pi rotation about an axis perpendicular to a) or nothing.
inline std::vector<ValueMap> spin_value_maps(const std::string& subgroup) {
  if (subgroup == "sign_flip") return {[](double u) { return -u; }};
  return {};
}

inline VerificationReport spin_orbit_demo(const SpinScenario& scn) {
  if (scn.subgroup != "sign_flip" && scn.subgroup != "trivial")
    throw Error(Errc::ConfigParseError, "subgroup must be 'sign_flip' or 'trivial'");
  if (scn.group_source != "binary_tetrahedral" && scn.group_source != "none")
    throw Error(Errc::ConfigParseError, "group_source must be 'binary_tetrahedral' or 'none'");
  if (!(scn.radius > 0)) throw Error(Errc::ConfigParseError, "radius must be positive");

  VerificationReport r;
  r.scenario = "spin";
  const Spin s = scn.spin;
  const int n = s.dim();
  const Vec3 a = normalized(scn.direction);
  const SpinGenerators gens = spin_generators(s);
  std::mt19937_64 rng(scn.seed);

  r.measure("spin_commutation", "commutation relations [Jx,Jy] = i Jz (hbar = 1)", commutation_error(gens), 1e-10);

  const OperatorBundle comp = spin_component_operator(s, a);
  r.measure("component_spectrum", "a.J takes the values -j, ..., j", spectrum_error(comp, s), 1e-9,
            "eigenvalues " + detail::fmt_list(comp.spectrum.eigenvalues));

  double worst = 0;
  for (int i = 0; i < 20; ++i) worst = std::max(worst, spectrum_error(spin_component_operator(s, detail::random_direction(rng)), s));
  r.measure("spectrum_direction_invariance", "spectrum of a.J independent of the unit direction", worst, 1e-9,
            "20 seeded random directions");

  r.require("component_maximal", "maximal accessibility iff every eigenspace is one-dimensional", maximality_check(comp),
            "multiplicities " + detail::fmt_ids(comp.spectrum.multiplicities));

  // Eigenbasis of a.J as a resolution of the identity, labelled by eigenvalue.
  StateFamily eig_family;
  std::vector<double> eig_labels;
  for (int jx = 0; jx < comp.spectrum.size(); ++jx)
    for (Eigen::Index c = 0; c < comp.spectrum.eigenspaces[jx].cols(); ++c) {
      eig_family.states.emplace_back(comp.spectrum.eigenspaces[jx].col(c));
      eig_family.weights.push_back(1.0);
      eig_labels.push_back(comp.spectrum.eigenvalues[jx]);
    }
  detail::guarded(r, "operator_from_eigenbasis", "operator of an e-variable over a resolution of the identity", [&] {
    const OperatorBundle rebuilt = build_operator(eig_family, eig_labels);
    r.measure("operator_from_eigenbasis", "operator of an e-variable over a resolution of the identity",
              (rebuilt.A - comp.A).norm(), 1e-9);
  });

  const double full_turn_sign = s.twice_j % 2 ? -1.0 : 1.0;
  r.measure("rotation_full_turn", "rotation by 2 pi is (-1)^(2j) I",
            (spin_rotation(s, a, 2 * std::numbers::pi) - full_turn_sign * identity(n)).norm(), 1e-9);
  r.measure("rotation_double_turn", "rotation by 4 pi is I",
            (spin_rotation(s, a, 4 * std::numbers::pi) - identity(n)).norm(), 1e-9);
  {
    std::uniform_real_distribution<double> angle(-2 * std::numbers::pi, 2 * std::numbers::pi);
    const Vec3 axis = detail::random_direction(rng);
    double err = 0;
    for (int i = 0; i < 10; ++i) {
      const double t1 = angle(rng), t2 = angle(rng);
      err = std::max(err, (spin_rotation(s, axis, t1 + t2) - spin_rotation(s, axis, t1) * spin_rotation(s, axis, t2)).norm());
    }
    r.measure("rotation_additivity", "one-parameter group law about a fixed axis", err, 1e-8, "10 seeded angle pairs");
  }

  // pi rotation about an axis perpendicular to a flips a -> -a, which induces
  // the value map u -> -u, i.e. reversal of the ascending eigenvalue ids.
  detail::guarded(r, "covariance_sign_flip", "covariance of the operator under the maximal permissible subgroup", [&] {
    const CMatrix v = spin_rotation(s, perpendicular(a), std::numbers::pi);
    std::vector<int> reversal(eig_labels.size());
    for (std::size_t i = 0; i < reversal.size(); ++i) reversal[i] = static_cast<int>(reversal.size() - 1 - i);
    const CovarianceReport cov = covariance_check(eig_family, eig_labels, v, reversal);
    r.measure("covariance_sign_flip", "covariance of the operator under the maximal permissible subgroup", cov.error,
              cov.tolerance, "V = exp(-i pi n.J), n perpendicular to a");
  });

  const auto maps = spin_value_maps(scn.subgroup);
  detail::guarded(r, "eigenvalue_orbits", "eigenvalues form a union of orbits of the induced group", [&] {
    const EigenOrbits eo = eigen_orbit_partition(comp, maps);
    std::vector<std::vector<int>> expected;
    for (int i = 0; i < n; ++i) {
      const int partner = scn.subgroup == "sign_flip" ? n - 1 - i : i;
      if (partner < i) continue;
      expected.push_back(partner == i ? std::vector<int>{i} : std::vector<int>{i, partner});
    }
    std::string details = "orbits";
    for (const auto& o : eo.orbit_values) details += " " + detail::fmt_list(o);
    details += eo.single_orbit ? "; single orbit" : "; several orbits";
    details += "; induced image has order " + std::to_string(eo.image_order) + " in Sym(" + std::to_string(n) + ")";
    details += eo.full_symmetric ? ", the full symmetric group" : ", a proper subgroup of the symmetric group";
    r.require("eigenvalue_orbits", "eigenvalues form a union of orbits of the induced group", eo.orbits == expected,
              details);
  });

  detail::guarded(r, "model_reduction_to_orbit", "model reduction to an orbit of the induced group", [&] {
    // Component values sampled on a quarter-step grid of [-r j, r j].
    std::vector<double> grid;
    const double range = scn.radius * s.j();
    for (int k = -static_cast<int>(std::floor(4 * range + 1e-9)); k <= static_cast<int>(std::floor(4 * range + 1e-9)); ++k)
      grid.push_back(0.25 * k);
    const ConceptualVariable sampled = ConceptualVariable::from_point_labels(grid);
    const EigenOrbits eo = eigen_orbit_partition(comp, maps);
    const std::vector<double> target = eo.orbit_values.back();  // orbit of the largest eigenvalue
    const ReducedModel red = model_reduce(sampled, target, maps);
    const bool expect_transitive = true;
    r.require("model_reduction_to_orbit", "model reduction to an orbit of the induced group",
              red.variable.labels() == target && red.transitive == expect_transitive,
              "reduced " + std::to_string(sampled.value_count()) + " sampled values to " +
                  detail::fmt_list(red.variable.labels()));
  });

  if (scn.group_source == "binary_tetrahedral") {
    detail::guarded(r, "frame_commutes_with_rep", "frame operator commutes with every V(h)", [&] {
      const UnitaryRep rep = binary_tetrahedral_spin_rep(s);
      const GroupAction act = GroupAction::regular(rep.group());
      const std::vector<double> mass{static_cast<double>(rep.group().order())};
      const CoherentSystem cs = make_coherent(rep, act, 0, CVector::Unit(n, 0), invariant_measure(act, mass));
      const FrameOperator fd = frame_diagnostics(cs);
      r.measure("frame_commutes_with_rep", "frame operator commutes with every V(h)", fd.commutation_error,
                1e-9 * std::max(1.0, fd.T.norm()),
                "binary tetrahedral group through spin j; commutant dimension " +
                    std::to_string(cs.irreducibility.commutant_dimension));
      if (cs.irreducibility.irreducible) {
        const FrameOperator fo = frame_operator(cs);
        const ResolutionCheck rc = resolution_over_theta(cs.states, fo.normalized_weights);
        r.measure("coherent_resolution", "coherent states resolve the identity", rc.deviation, 1e-9 * n,
                  "lambda = " + detail::fmt(fo.lambda));
      }
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// phase

inline VerificationReport phase_space_demo(int n, int c = 1, int d = 1) {
  require_lattice(n);
  VerificationReport r;
  r.scenario = "phase";
  const int cm = ((c % n) + n) % n;
  const int dm = ((d % n) + n) % n;

  detail::guarded(r, "position_shift_rep", "translations x -> x + c represent Z_n unitarily", [&] {
    r.measure("position_shift_rep", "translations x -> x + c represent Z_n unitarily",
              position_shift_rep(n).homomorphism_error(), 1e-8);
  });
  detail::guarded(r, "momentum_phase_rep", "translations p -> p + d represent Z_n unitarily", [&] {
    r.measure("momentum_phase_rep", "translations p -> p + d represent Z_n unitarily",
              momentum_phase_rep(n).homomorphism_error(), 1e-8);
  });

  const CMatrix shift = position_shift(n);
  const CMatrix phase = momentum_phase(n);
  r.measure("shift_full_cycle", "shift by n is the identity", (matrix_power(shift, n) - identity(n)).norm(), 1e-12);
  const CMatrix shift_c = c >= 0 ? matrix_power(shift, c) : matrix_power(shift.adjoint(), -c);
  r.measure("shift_by_c", "shift by c equals shift by c mod n", (shift_c - matrix_power(shift, cm)).norm(), 1e-12,
            "c = " + std::to_string(c));

  const CMatrix fourier = fourier_basis(n);
  r.measure("mutually_unbiased", "position and momentum bases are mutually unbiased",
            unbiasedness_error(identity(n), fourier), 1e-10, "|<x|p>|^2 = 1/" + std::to_string(n));

  const PhaseSpaceOperators ops = phase_space_operators(n);
  const double comm = commutator(ops.position.A, ops.momentum.A).norm();
  r.require("position_momentum_noncommuting", "position and momentum operators do not commute", comm > 1e-9,
            "|[X,P]|_F = " + detail::fmt(comm));
  r.require("position_maximal", "position operator has one-dimensional eigenspaces", maximality_check(ops.position));
  r.require("momentum_maximal", "momentum operator has one-dimensional eigenspaces", maximality_check(ops.momentum),
            "finite cyclic analog of continuous translations; both variables accessible and maximal, so no model "
            "reduction is needed");

  std::vector<double> labels(static_cast<std::size_t>(n));
  std::vector<int> gx(static_cast<std::size_t>(n)), gp(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    labels[v] = v;
    gx[v] = (v + cm) % n;
    gp[v] = (v + dm) % n;
  }
  detail::guarded(r, "position_translation_covariance", "covariance of X under x -> x + c", [&] {
    const auto cov = covariance_check(StateFamily::from_basis(identity(n)), labels, shift_c, gx);
    r.measure("position_translation_covariance", "covariance of X under x -> x + c", cov.error, cov.tolerance);
  });
  detail::guarded(r, "momentum_translation_covariance", "covariance of P under p -> p + d", [&] {
    const CMatrix phase_d = matrix_power(phase, dm);
    const auto cov = covariance_check(StateFamily::from_basis(fourier), labels, phase_d, gp);
    r.measure("momentum_translation_covariance", "covariance of P under p -> p + d", cov.error, cov.tolerance);
  });
  return r;
}

// ---------------------------------------------------------------------------
// pedagogy_z4

/// Every subgroup of a small group, by closure test over all subsets.
inline std::vector<std::vector<int>> all_subgroups(const FiniteGroup& g) {
  if (g.order() > 16) throw Error(Errc::OrderTooLarge, "subgroup enumeration is limited to order 16");
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << g.order()); ++mask) {
    std::vector<int> elems;
    for (int x = 0; x < g.order(); ++x)
      if (mask & (1u << x)) elems.push_back(x);
    if (is_subgroup(g, elems)) out.push_back(std::move(elems));
  }
  return out;
}

/// Permutation matrix U|w> = |g w>.
inline CMatrix value_permutation_matrix(std::span<const int> g) {
  const int n = static_cast<int>(g.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (int w = 0; w < n; ++w) m(g[w], w) = 1.0;
  return m;
}

inline VerificationReport pedagogy_z4_demo() {
  VerificationReport r;
  r.scenario = "pedagogy_z4";
  const FiniteGroup k = cyclic_group(4);
  const GroupAction shift = GroupAction::regular(k);
  const std::vector<double> mod2_labels{0, 1, 0, 1};
  const std::vector<double> indicator_labels{1, 1, 0, 0};
  const std::vector<double> id_labels{0, 1, 2, 3};
  const auto mod2 = ConceptualVariable::from_point_labels(mod2_labels);
  const auto indicator = ConceptualVariable::from_point_labels(indicator_labels);
  const auto ident = ConceptualVariable::from_point_labels(id_labels);
  const auto constant = ConceptualVariable::make({0, 0, 0, 0}, {7.0});

  r.require("permissible_mod2", "permissibility of theta = x mod 2", is_permissible(mod2, shift).permissible);
  {
    const Permissibility p = is_permissible(indicator, shift);
    const PermissibilityWitness expected{1, 0, 1};
    r.require("not_permissible_indicator", "permissibility fails for theta = I(x in {0,1})",
              !p.permissible && p.witness && *p.witness == expected,
              p.witness ? "witness (k=" + std::to_string(p.witness->element) + ", x1=" + std::to_string(p.witness->point1) +
                              ", x2=" + std::to_string(p.witness->point2) + ")"
                        : "no witness");
  }

  const InducedAction induced = induce_group(mod2, shift);
  r.require("induced_group_mod2", "induced group on the values", induced.image_group.order() == 2 &&
                                                                          induced.kernel == std::vector<int>{0, 2},
            "image order " + std::to_string(induced.image_group.order()) + ", kernel " + detail::fmt_ids(induced.kernel));
  {
    bool consistent = true;
    for (int kk = 0; kk < k.order(); ++kk)
      for (int x = 0; x < 4; ++x)
        consistent = consistent && induced.induced_perm[kk][mod2.value(x)] == mod2.value(shift.apply(kk, x));
    r.require("induced_action_consistency", "(g theta)(x) = theta(k x) for every k and x", consistent);
  }
  {
    const HomomorphismCheck h = check_homomorphism(k, induced.image_group, induced.image_of);
    r.require("induced_homomorphism", "K -> G is a group homomorphism", h.ok, "exhaustive 16-pair check");
    bool injective = true;
    for (int a = 0; a < k.order(); ++a)
      for (int b = 0; b < k.order(); ++b) {
        const bool same_image = induced.image_of[a] == induced.image_of[b];
        const bool same_coset = std::binary_search(induced.kernel.begin(), induced.kernel.end(), k.mul(k.inv(a), b));
        injective = injective && same_image == same_coset;
      }
    r.require("quotient_injective", "K / kernel -> G is injective", injective);
  }

  const auto big_h = maximal_permissible_subgroup(indicator, shift);
  r.require("maximal_permissible_subgroup", "maximal group under which theta is permissible",
            big_h == std::vector<int>{0, 2}, "H = " + detail::fmt_ids(big_h));
  {
    bool ok = true;
    std::string details;
    for (const auto& sub : all_subgroups(k)) {
      const bool permissible = is_permissible(indicator, shift, sub).permissible;
      const bool inside = std::includes(big_h.begin(), big_h.end(), sub.begin(), sub.end());
      ok = ok && permissible == inside;
      details += detail::fmt_ids(sub) + (permissible ? ":permissible " : ":not ");
    }
    r.require("maximality_bruteforce", "no subgroup beyond H keeps theta permissible", ok, details);
  }
  {
    const auto f = accessibility_leq(mod2, ident);
    const bool ok = f && *f == std::vector<int>{0, 1, 0, 1} && !accessibility_leq(ident, constant) &&
                    accessibility_leq(mod2, mod2).has_value();
    r.require("accessibility_order", "alpha <= beta iff alpha = f(beta)", ok);
  }

  // Operators on a qubit, states indexed by value id (orthonormal basis).
  const StateFamily qubit = StateFamily::from_basis(identity(2));
  detail::guarded(r, "covariance_indicator", "covariance of the operator under the maximal permissible subgroup", [&] {
    double err = 0, tol = 0;
    for (int h : big_h) {
      const auto g = value_permutation(indicator, shift, h);
      const CovarianceReport c = covariance_check(qubit, indicator, shift, h, value_permutation_matrix(*g));
      err = std::max(err, c.error);
      tol = c.tolerance;
    }
    r.measure("covariance_indicator", "covariance of the operator under the maximal permissible subgroup", err, tol,
              "every h in H");
  });
  detail::guarded(r, "covariance_mod2", "covariance of the operator under the maximal permissible subgroup", [&] {
    double err = 0, tol = 0;
    for (int h = 0; h < k.order(); ++h) {
      const CovarianceReport c =
          covariance_check(qubit, mod2, shift, h, value_permutation_matrix(induced.induced_perm[h]));
      err = std::max(err, c.error);
      tol = c.tolerance;
    }
    r.measure("covariance_mod2", "covariance of the operator under the maximal permissible subgroup", err, tol,
              "every h in K");
  });

  detail::guarded(r, "eigenvalue_single_orbit", "eigenvalues form one orbit of the induced group", [&] {
    const Subgroup sub = make_subgroup(k, big_h);
    const GroupAction restricted = restrict_action(shift, sub);
    const InducedAction ind = induce_group(indicator, restricted);
    const OperatorBundle op = build_operator(qubit, indicator);
    const auto maps = value_maps(indicator, ind);
    const EigenOrbits eo = eigen_orbit_partition(op, maps);
    r.require("eigenvalue_single_orbit", "eigenvalues form one orbit of the induced group", eo.single_orbit,
              "eigenvalues " + detail::fmt_list(op.spectrum.eigenvalues));
    r.require("indicator_maximal", "maximal accessibility iff every eigenspace is one-dimensional",
              maximality_check(op));
  });
  return r;
}

// ---------------------------------------------------------------------------
// coherent_d4 / coherent_bt24

/// The 2-dim irrep of dihedral:n: rotation by 2 pi / n and diag(1, -1).
inline UnitaryRep dihedral_rotation_rep(int n) {
  const double t = 2 * std::numbers::pi / n;
  CMatrix rot(2, 2), refl(2, 2);
  rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  refl << 1, 0, 0, -1;
  const FiniteGroup g = dihedral_group(n);
  std::vector<CMatrix> gens{rot, refl};
  if (g.generators().size() == 1) gens.erase(gens.begin());  // n = 1: rotation is trivial
  return UnitaryRep::from_generators(g, gens);
}

/// dihedral:n acting on the vertices of the regular n-gon.
inline GroupAction polygon_action(int n) {
  std::vector<int> r(static_cast<std::size_t>(n)), s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    r[i] = (i + 1) % n;
    s[i] = (n - i) % n;
  }
  const FiniteGroup g = dihedral_group(n);
  std::vector<std::vector<int>> gens{r, s};
  if (g.generators().size() == 1) gens.erase(gens.begin());
  return GroupAction::from_generators(g, gens);
}

/// Random row-stochastic model with the given shape.
inline StatisticalModel random_model(int values, int outcomes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<std::vector<double>> rows;
  for (int t = 0; t < values; ++t) {
    std::vector<double> row(static_cast<std::size_t>(outcomes));
    double s = 0;
    for (double& p : row) s += (p = u(rng));
    for (double& p : row) p /= s;
    // Absorb rounding into the last entry so rows sum to one to machine precision.
    double partial = 0;
    for (int z = 0; z + 1 < outcomes; ++z) partial += row[z];
    row.back() = 1.0 - partial;
    rows.push_back(std::move(row));
  }
  return StatisticalModel::make(std::move(rows));
}

/// Unitary used for transport checks: Hadamard on a qubit, DFT otherwise.
inline CMatrix transport_unitary(int dim) {
  if (dim == 1) return identity(1);
  if (dim == 2) {
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
  }
  CMatrix f(dim, dim);
  for (int x = 0; x < dim; ++x)
    for (int p = 0; p < dim; ++p) f(x, p) = std::polar(1.0 / std::sqrt(dim), 2 * std::numbers::pi * x * p / dim);
  return f;
}

inline void coherent_checks(VerificationReport& r, const UnitaryRep& rep, const GroupAction& act, const CVector& fiducial,
                            double frame_tol, std::uint64_t seed) {
  const int dim = rep.dim();
  const int order = rep.group().order();
  r.measure("rep_homomorphism", "V(k1 k2) = V(k1) V(k2) over every pair", rep.homomorphism_error(), 1e-8);

  const Irreducibility irr = is_irreducible(rep);
  r.require("rep_irreducible", "irreducibility through a one-dimensional commutant", irr.irreducible,
            "commutant dimension " + std::to_string(irr.commutant_dimension));
  {
    const Irreducibility lr = is_irreducible(left_regular_rep(rep.group()));
    r.require("left_regular_reducible", "left-regular representation decomposes",
              !lr.irreducible && lr.commutant_dimension == order,
              "commutant dimension " + std::to_string(lr.commutant_dimension));
  }

  const InvariantMeasure measure = invariant_measure(act, std::vector<double>{static_cast<double>(act.space_size())});
  const CoherentSystem cs = make_coherent(rep, act, 0, fiducial, measure);
  {
    double err = 0;
    for (const CVector& st : cs.states) err = std::max(err, std::abs(st.norm() - fiducial.norm()));
    r.measure("states_norm", "coherent states share the fiducial norm", err, 1e-12);
  }

  // Direct summation, compared with trace(T)/dim = sum_k w_k |phi_0|^2 / dim.
  double mass = 0;
  for (double w : cs.state_weights) mass += w;
  const double expected_lambda = mass * fiducial.squaredNorm() / dim;
  CMatrix t = CMatrix::Zero(dim, dim);
  for (int kk = 0; kk < order; ++kk) t += cs.state_weights[kk] * cs.states[kk] * cs.states[kk].adjoint();
  r.measure("frame_direct_sum", "frame operator equals lambda I", (t - expected_lambda * identity(dim)).norm(), frame_tol,
            "lambda = " + detail::fmt(expected_lambda));

  const FrameOperator fd = frame_diagnostics(cs);
  r.measure("frame_commutes_with_rep", "frame operator commutes with every V(h)", fd.commutation_error,
            1e-9 * std::max(1.0, fd.T.norm()));
  r.require("lambda_positive", "lambda > 0", fd.min_eigenvalue > 0, "min eigenvalue " + detail::fmt(fd.min_eigenvalue));

  detail::guarded(r, "normalized_resolution", "coherent states resolve the identity", [&] {
    const FrameOperator fo = frame_operator(cs);
    const ResolutionCheck rc = resolution_over_theta(cs.states, fo.normalized_weights);
    r.measure("normalized_resolution", "coherent states resolve the identity", rc.deviation, 1e-9);

    const CMatrix w = transport_unitary(dim);
    const CoherentSystem moved = unitary_transport(cs, w);
    r.measure("unitary_transport", "unitarily transported states still resolve the identity",
              resolution_over_theta(moved.states, fo.normalized_weights).deviation, 1e-9 * dim);

    const CoherentSystem equiv = make_coherent(rep.conjugated(w), act, 0, w * fiducial, measure);
    const FrameOperator fe = frame_operator(equiv);
    const double err = std::max(std::abs(fe.lambda - fo.lambda), (fe.T - w * fo.T * w.adjoint()).norm());
    r.measure("equivalent_rep_lambda", "equivalent representations share lambda", err, 1e-9);

    StateFamily fam{cs.states, fo.normalized_weights};
    std::mt19937_64 rng(seed);
    double completeness = 0, min_effect = std::numeric_limits<double>::infinity();
    for (int m = 0; m < 5; ++m) {
      const Povm povm = build_povm(random_model(fam.size(), 2 + m, rng), fam);
      completeness = std::max(completeness, povm.completeness_error());
      for (const CMatrix& e : povm.effects) min_effect = std::min(min_effect, eig_hermitian(e).eigenvalues.front());
    }
    r.measure("povm_completeness", "effects built from a statistical model sum to I", completeness, 1e-10,
              "5 seeded models");
    r.require("povm_effects_positive", "effects are positive", min_effect >= -1e-12,
              "min eigenvalue " + detail::fmt(min_effect));

    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> pi(static_cast<std::size_t>(fam.size()));
    for (double& p : pi) p = u(rng);
    const DensityOp rho = build_density(pi, fam, true);
    r.measure("density_trace", "density operator has unit trace", std::abs(rho.sigma.trace().real() - 1.0), 1e-10);
    const double min_ev = eig_hermitian(rho.sigma).eigenvalues.front();
    r.require("density_positive", "density operator is positive semidefinite", min_ev >= -1e-12,
              "min eigenvalue " + detail::fmt(min_ev));
  });
}

inline VerificationReport coherent_d4_demo(const CVector& fiducial, std::uint64_t seed = kDefaultSeed) {
  if (fiducial.size() != 2) throw Error(Errc::DimensionMismatch, "coherent_d4 fiducial must have 2 entries");
  VerificationReport r;
  r.scenario = "coherent_d4";
  coherent_checks(r, dihedral_rotation_rep(4), polygon_action(4), fiducial, 1e-10, seed);
  return r;
}

inline VerificationReport coherent_bt24_demo(const CVector& fiducial, std::uint64_t seed = kDefaultSeed) {
  if (fiducial.size() != 2) throw Error(Errc::DimensionMismatch, "coherent_bt24 fiducial must have 2 entries");
  VerificationReport r;
  r.scenario = "coherent_bt24";
  const UnitaryRep rep = binary_tetrahedral_spin_rep(Spin{1});
  coherent_checks(r, rep, GroupAction::regular(rep.group()), fiducial, 1e-9, seed);
  return r;
}

// ---------------------------------------------------------------------------
// driver

struct ScenarioConfig {
  std::string scenario;
  ordered_json params = ordered_json::object();
  ordered_json tolerances = ordered_json::object();
  std::uint64_t seed = kDefaultSeed;
};

inline ScenarioConfig parse_config(const ordered_json& j) {
  if (!j.is_object() || j.empty()) throw Error(Errc::ConfigParseError, "config must be a nonempty JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "scenario" && it.key() != "params" && it.key() != "tolerances" && it.key() != "seed")
      throw Error(Errc::ConfigParseError, "unknown key '" + it.key() + "'");
  if (!j.contains("scenario") || !j.at("scenario").is_string())
    throw Error(Errc::ConfigParseError, "'scenario' must be a string");
  ScenarioConfig c;
  c.scenario = j.at("scenario").get<std::string>();
  if (j.contains("params")) {
    if (!j.at("params").is_object()) throw Error(Errc::ConfigParseError, "'params' must be an object");
    c.params = j.at("params");
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) throw Error(Errc::ConfigParseError, "'tolerances' must be an object");
    for (auto it = t.begin(); it != t.end(); ++it)
      if (!it.value().is_number() || !(it.value().get<double>() > 0))
        throw Error(Errc::ConfigParseError, "tolerance '" + it.key() + "' must be a positive number");
    c.tolerances = t;
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw Error(Errc::ConfigParseError, "'seed' must be a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  return c;
}

inline ScenarioConfig parse_config_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigParseError, e.what());
  }
  return parse_config(j);
}

/// Overrides tolerances of non-exact checks and recomputes their verdicts.
inline void apply_tolerances(VerificationReport& r, const ordered_json& tolerances) {
  for (auto it = tolerances.begin(); it != tolerances.end(); ++it) {
    const double tol = it.value().get<double>();
    bool matched = it.key() == "*";
    for (Check& c : r.checks) {
      if (c.exact || (it.key() != "*" && it.key() != c.name)) continue;
      matched = true;
      c.tolerance = tol;
      c.passed = c.max_error <= tol;
    }
    if (!matched) throw Error(Errc::ConfigParseError, "no numeric check named '" + it.key() + "'");
  }
}

inline VerificationReport run_scenario(const ScenarioConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  detail::Params p(cfg.params);
  VerificationReport r;
  if (cfg.scenario == "spin") {
    SpinScenario s;
    s.spin = p.spin("j", Spin{1});
    s.direction = p.vec3("a", {0, 0, 1});
    s.subgroup = p.text("subgroup", "sign_flip");
    s.group_source = p.text("group_source", "binary_tetrahedral");
    s.radius = p.number("radius", 1.0);
    s.seed = cfg.seed;
    p.finish();
    r = spin_orbit_demo(s);
  } else if (cfg.scenario == "phase") {
    const int n = p.integer("n", 4);
    const int c = p.integer("c", 1);
    const int d = p.integer("d", 1);
    p.finish();
    r = phase_space_demo(n, c, d);
  } else if (cfg.scenario == "pedagogy_z4") {
    p.finish();
    r = pedagogy_z4_demo();
  } else if (cfg.scenario == "coherent_d4" || cfg.scenario == "coherent_bt24") {
    const CVector fid = p.complex_vector("fiducial", CVector::Unit(2, 0));
    p.finish();
    r = cfg.scenario == "coherent_d4" ? coherent_d4_demo(fid, cfg.seed) : coherent_bt24_demo(fid, cfg.seed);
  } else {
    throw Error(Errc::UnknownScenario, "'" + cfg.scenario + "'");
  }
  apply_tolerances(r, cfg.tolerances);
  r.config_echo = ordered_json::object();
  r.config_echo["scenario"] = cfg.scenario;
  r.config_echo["params"] = p.echo();
  r.config_echo["tolerances"] = cfg.tolerances;
  r.config_echo["seed"] = cfg.seed;
  r.timing_ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  return r;
}

inline VerificationReport run_scenario(const ordered_json& config) { return run_scenario(parse_config(config)); }

/// Every built-in scenario with default parameters, in list order.
inline std::vector<VerificationReport> run_all(std::optional<double> tolerance = std::nullopt) {
  std::vector<VerificationReport> out;
  for (const std::string& name : builtin_scenarios()) {
    ordered_json cfg;
    cfg["scenario"] = name;
    if (tolerance) cfg["tolerances"] = {{"*", *tolerance}};
    out.push_back(run_scenario(cfg));
  }
  return out;
}

}  // namespace qgroup
