#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "qgroup/error.hpp"
#include "qgroup/groups.hpp"
#include "qgroup/variables.hpp"

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

ConceptualVariable from_labels(std::vector<double> l) { return ConceptualVariable::from_point_labels(l); }

const GroupAction& z4_shift() {
  static const GroupAction a = GroupAction::regular(cyclic_group(4));
  return a;
}

/// Definition-level oracle: brute force over every (k, x1, x2).
bool permissible_oracle(const ConceptualVariable& v, const GroupAction& act, const std::vector<int>& elems) {
  for (int k : elems)
    for (int x1 = 0; x1 < v.space_size(); ++x1)
      for (int x2 = 0; x2 < v.space_size(); ++x2)
        if (v.label_at(x1) == v.label_at(x2) && v.label_at(act.apply(k, x1)) != v.label_at(act.apply(k, x2)))
          return false;
  return true;
}

/// h admits a single-valued value map g with theta(h x) = g(theta(x)).
bool descends_oracle(const ConceptualVariable& v, const GroupAction& act, int h) {
  for (int x1 = 0; x1 < v.space_size(); ++x1)
    for (int x2 = 0; x2 < v.space_size(); ++x2) {
      const bool same = v.label_at(x1) == v.label_at(x2);
      const bool same_after = v.label_at(act.apply(h, x1)) == v.label_at(act.apply(h, x2));
      if (same != same_after) return false;
    }
  return true;
}

std::vector<std::vector<int>> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> subs;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) subs.insert(subgroup_generated(g, std::vector<int>{a, b}));
  return {subs.begin(), subs.end()};
}

struct Case {
  GroupAction act;
  ConceptualVariable var;
};

std::vector<GroupAction> small_actions() {
  std::vector<GroupAction> acts;
  acts.push_back(GroupAction::regular(cyclic_group(4)));
  acts.push_back(GroupAction::regular(cyclic_group(6)));
  acts.push_back(GroupAction::regular(make_named_group("cyclic:2xcyclic:2")));
  acts.push_back(GroupAction::regular(dihedral_group(3)));
  for (int n : {4, 5, 6}) {
    std::vector<int> r(static_cast<std::size_t>(n)), s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      r[i] = (i + 1) % n;
      s[i] = (n - i) % n;
    }
    acts.push_back(GroupAction::from_generators(dihedral_group(n), {r, s}));
  }
  acts.push_back(GroupAction::regular(dihedral_group(6)));  // 12 points
  return acts;
}

}  // namespace

TEST(Variables, Construction) {
  const auto v = ConceptualVariable::make({1, 0, 1}, {2.5, -1.0}, {"up", "down"});
  EXPECT_EQ(v.space_size(), 3);
  EXPECT_EQ(v.value_count(), 2);
  EXPECT_EQ(v.label_at(0), -1.0);
  EXPECT_EQ(code_of([] { ConceptualVariable::make({0, 0}, {1.0, 2.0}); }), Errc::InvalidVariable);
  EXPECT_EQ(code_of([] { ConceptualVariable::make({0, 2}, {1.0, 2.0}); }), Errc::InvalidVariable);
  EXPECT_EQ(code_of([] { ConceptualVariable::make({}, {1.0}); }), Errc::InvalidVariable);
  const auto w = from_labels({0.5, -0.5, 0.5});
  EXPECT_EQ(w.labels(), (std::vector<double>{-0.5, 0.5}));
  EXPECT_EQ(w.values(), (std::vector<int>{1, 0, 1}));
}

TEST(Permissibility, Examples) {
  const auto mod2 = from_labels({0, 1, 0, 1});
  EXPECT_TRUE(is_permissible(mod2, z4_shift()).permissible);

  const auto indicator = from_labels({1, 1, 0, 0});
  const Permissibility p = is_permissible(indicator, z4_shift());
  EXPECT_FALSE(p.permissible);
  ASSERT_TRUE(p.witness.has_value());
  EXPECT_EQ(*p.witness, (PermissibilityWitness{1, 0, 1}));

  EXPECT_TRUE(is_permissible(from_labels({7, 7, 7, 7}), z4_shift()).permissible);
  EXPECT_TRUE(is_permissible(from_labels({3, 1, 4, 2}), z4_shift()).permissible);
  EXPECT_EQ(code_of([&] { is_permissible(from_labels({0, 1, 0}), z4_shift()); }), Errc::SizeMismatch);
}

TEST(InducedGroup, Examples) {
  const InducedAction mod2 = induce_group(from_labels({0, 1, 0, 1}), z4_shift());
  EXPECT_EQ(mod2.image_group.order(), 2);
  EXPECT_EQ(mod2.kernel, (std::vector<int>{0, 2}));
  EXPECT_EQ(mod2.induced_perm[1], (std::vector<int>{1, 0}));

  const InducedAction injective = induce_group(from_labels({3, 1, 4, 2}), z4_shift());
  EXPECT_EQ(injective.image_group.order(), 4);
  EXPECT_EQ(injective.kernel, (std::vector<int>{0}));

  const InducedAction constant = induce_group(from_labels({7, 7, 7, 7}), z4_shift());
  EXPECT_EQ(constant.image_group.order(), 1);
  EXPECT_EQ(constant.kernel, (std::vector<int>{0, 1, 2, 3}));

  try {
    induce_group(from_labels({1, 1, 0, 0}), z4_shift());
    FAIL() << "expected NotPermissible";
  } catch (const NotPermissibleError& e) {
    EXPECT_EQ(e.code(), Errc::NotPermissible);
    EXPECT_EQ(e.witness(), (PermissibilityWitness{1, 0, 1}));
  }
}

TEST(MaximalSubgroup, Examples) {
  EXPECT_EQ(maximal_permissible_subgroup(from_labels({1, 1, 0, 0}), z4_shift()), (std::vector<int>{0, 2}));
  EXPECT_EQ(maximal_permissible_subgroup(from_labels({0, 1, 0, 1}), z4_shift()), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(maximal_permissible_subgroup(from_labels({3, 1, 4, 2}), z4_shift()), (std::vector<int>{0, 1, 2, 3}));
}

TEST(Accessibility, Examples) {
  const auto ident = from_labels({0, 1, 2, 3});
  const auto mod2 = from_labels({0, 1, 0, 1});
  const auto f = accessibility_leq(mod2, ident);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(*f, (std::vector<int>{0, 1, 0, 1}));
  EXPECT_FALSE(accessibility_leq(ident, from_labels({5, 5, 5, 5})).has_value());
  const auto self = accessibility_leq(mod2, mod2);
  ASSERT_TRUE(self.has_value());
  EXPECT_EQ(*self, (std::vector<int>{0, 1}));
  EXPECT_EQ(code_of([&] { accessibility_leq(mod2, from_labels({0, 1})); }), Errc::SizeMismatch);
}

TEST(VariablesProperty, InducedActionConsistencyAndHomomorphism) {
  std::mt19937_64 rng(31);
  for (const GroupAction& act : small_actions()) {
    for (int trial = 0; trial < 30; ++trial) {
      std::uniform_int_distribution<int> val(0, 1 + trial % 4);
      std::vector<double> labels(static_cast<std::size_t>(act.space_size()));
      for (double& l : labels) l = val(rng);
      const auto var = from_labels(labels);
      const auto all = [&] {
        std::vector<int> e(static_cast<std::size_t>(act.group().order()));
        std::iota(e.begin(), e.end(), 0);
        return e;
      }();
      const bool oracle = permissible_oracle(var, act, all);
      ASSERT_EQ(is_permissible(var, act).permissible, oracle);
      if (!oracle) continue;
      const InducedAction ind = induce_group(var, act);
      for (int k = 0; k < act.group().order(); ++k)
        for (int x = 0; x < act.space_size(); ++x)
          ASSERT_EQ(ind.induced_perm[k][var.value(x)], var.value(act.apply(k, x)));
      EXPECT_TRUE(check_homomorphism(act.group(), ind.image_group, ind.image_of).ok);
      EXPECT_EQ(ind.image_group.order() * static_cast<int>(ind.kernel.size()), act.group().order());
      // Quotient by the kernel is injective: equal images iff same kernel coset.
      const FiniteGroup& g = act.group();
      for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) {
          const bool same_coset = std::binary_search(ind.kernel.begin(), ind.kernel.end(), g.mul(g.inv(a), b));
          ASSERT_EQ(ind.image_of[a] == ind.image_of[b], same_coset);
        }
      // Monotonicity: permissible under every subgroup.
      for (const auto& sub : all_subgroups(g)) EXPECT_TRUE(is_permissible(var, act, sub).permissible);
    }
  }
}

TEST(VariablesProperty, MaximalSubgroupAgainstBruteForce) {
  std::mt19937_64 rng(37);
  for (const GroupAction& act : small_actions()) {
    ASSERT_LE(act.space_size(), 12);
    const FiniteGroup& g = act.group();
    const auto subs = all_subgroups(g);
    for (int trial = 0; trial < 25; ++trial) {
      std::uniform_int_distribution<int> val(0, 1 + trial % 3);
      std::vector<double> labels(static_cast<std::size_t>(act.space_size()));
      for (double& l : labels) l = val(rng);
      const auto var = from_labels(labels);
      const auto big_h = maximal_permissible_subgroup(var, act);
      // Oracle: every element of H descends; every element outside does not.
      for (int h = 0; h < g.order(); ++h)
        ASSERT_EQ(std::binary_search(big_h.begin(), big_h.end(), h), descends_oracle(var, act, h));
      EXPECT_TRUE(is_subgroup(g, big_h));
      EXPECT_TRUE(is_permissible(var, act, big_h).permissible);
      // Every subgroup whose elements all descend lies inside H.
      for (const auto& sub : subs) {
        const bool all_descend =
            std::all_of(sub.begin(), sub.end(), [&](int h) { return descends_oracle(var, act, h); });
        const bool inside = std::includes(big_h.begin(), big_h.end(), sub.begin(), sub.end());
        EXPECT_EQ(all_descend, inside);
      }
      // Adjoining any h outside H produces a subgroup containing an element
      // with no single-valued value map.
      for (int h = 0; h < g.order(); ++h) {
        if (std::binary_search(big_h.begin(), big_h.end(), h)) continue;
        std::vector<int> gens = big_h;
        gens.push_back(h);
        const auto closure = subgroup_generated(g, gens);
        EXPECT_TRUE(std::any_of(closure.begin(), closure.end(), [&](int k) { return !value_permutation(var, act, k); }));
      }
    }
  }
}

TEST(VariablesProperty, AccessibilityIsAPartialOrderUpToRelabeling) {
  std::mt19937_64 rng(41);
  std::vector<ConceptualVariable> vars;
  for (int i = 0; i < 14; ++i) {
    std::uniform_int_distribution<int> val(0, i % 5);
    std::vector<double> labels(6);
    for (double& l : labels) l = val(rng);
    vars.push_back(from_labels(labels));
  }
  vars.push_back(from_labels({0, 1, 2, 3, 4, 5}));
  vars.push_back(from_labels({5, 4, 3, 2, 1, 0}));
  for (const auto& a : vars) {
    EXPECT_TRUE(accessibility_leq(a, a).has_value());
    for (const auto& b : vars) {
      const auto ab = accessibility_leq(a, b);
      const auto ba = accessibility_leq(b, a);
      if (ab && ba) {
        // Mutual order: f is a bijective relabeling.
        std::vector<int> sorted = *ab;
        std::sort(sorted.begin(), sorted.end());
        EXPECT_EQ(std::unique(sorted.begin(), sorted.end()), sorted.end());
        EXPECT_EQ(a.value_count(), b.value_count());
      }
      for (const auto& c : vars)
        if (ab && accessibility_leq(b, c)) EXPECT_TRUE(accessibility_leq(a, c).has_value());
    }
  }
}

TEST(Compose, ShiftsTheVariable) {
  const auto v = compose(from_labels({1, 1, 0, 0}), z4_shift(), 2);
  EXPECT_EQ(v.values(), (std::vector<int>{0, 0, 1, 1}));
  EXPECT_EQ(v.labels(), (std::vector<double>{0, 1}));
}
