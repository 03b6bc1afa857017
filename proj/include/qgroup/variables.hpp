#pragma once

// Conceptual variables: functions from a finite space to a finite list of
// labelled values, together with permissibility, the induced group on the
// value space, the maximal permissible subgroup and the accessibility order.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgroup/error.hpp"
#include "qgroup/groups.hpp"

namespace qgroup {

class ConceptualVariable {
 public:
  /// values[x] is the value id of point x; labels[v] is the real label of
  /// value id v. Every id must be attained.
  static ConceptualVariable make(std::vector<int> values, std::vector<double> labels,
                                 std::vector<std::string> names = {}, bool accessible = true) {
    if (values.empty()) throw Error(Errc::InvalidVariable, "empty domain");
    if (labels.empty()) throw Error(Errc::InvalidVariable, "empty label list");
    if (!names.empty() && names.size() != labels.size())
      throw Error(Errc::InvalidVariable, "names and labels differ in length");
    std::vector<char> hit(labels.size(), 0);
    for (int v : values) {
      if (v < 0 || v >= static_cast<int>(labels.size()))
        throw Error(Errc::InvalidVariable, "value id " + std::to_string(v) + " out of range");
      hit[v] = 1;
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end())
      throw Error(Errc::InvalidVariable, "not every label is attained");
    for (double l : labels)
      if (!std::isfinite(l)) throw Error(Errc::InvalidVariable, "non-finite label");
    ConceptualVariable v;
    v.values_ = std::move(values);
    v.labels_ = std::move(labels);
    v.names_ = std::move(names);
    v.accessible_ = accessible;
    return v;
  }

  /// Value ids assigned by ascending distinct label.
  static ConceptualVariable from_point_labels(std::span<const double> point_labels, bool accessible = true) {
    std::vector<double> labels(point_labels.begin(), point_labels.end());
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::vector<int> values;
    values.reserve(point_labels.size());
    for (double x : point_labels)
      values.push_back(static_cast<int>(std::lower_bound(labels.begin(), labels.end(), x) - labels.begin()));
    return make(std::move(values), std::move(labels), {}, accessible);
  }

  int space_size() const { return static_cast<int>(values_.size()); }
  int value_count() const { return static_cast<int>(labels_.size()); }
  int value(int point) const { return values_[point]; }
  double label(int value_id) const { return labels_[value_id]; }
  double label_at(int point) const { return labels_[values_[point]]; }
  const std::vector<int>& values() const { return values_; }
  const std::vector<double>& labels() const { return labels_; }
  const std::vector<std::string>& names() const { return names_; }
  bool accessible() const { return accessible_; }

 private:
  ConceptualVariable() = default;

  std::vector<int> values_;
  std::vector<double> labels_;
  std::vector<std::string> names_;
  bool accessible_ = true;
};

struct PermissibilityWitness {
  int element;
  int point1;
  int point2;

  friend bool operator==(const PermissibilityWitness&, const PermissibilityWitness&) = default;
};

struct Permissibility {
  bool permissible = true;
  std::optional<PermissibilityWitness> witness;
};

class NotPermissibleError : public Error {
 public:
  explicit NotPermissibleError(PermissibilityWitness w)
      : Error(Errc::NotPermissible, "equal values separated by element " + std::to_string(w.element) +
                                        " at points " + std::to_string(w.point1) + ", " + std::to_string(w.point2)),
        witness_(w) {}

  const PermissibilityWitness& witness() const { return witness_; }

 private:
  PermissibilityWitness witness_;
};

namespace detail {

inline void require_same_space(const ConceptualVariable& var, const GroupAction& act) {
  if (var.space_size() != act.space_size())
    throw Error(Errc::SizeMismatch, "variable has " + std::to_string(var.space_size()) + " points, action has " +
                                        std::to_string(act.space_size()));
}

inline std::vector<int> all_elements(const FiniteGroup& g) {
  std::vector<int> e(static_cast<std::size_t>(g.order()));
  std::iota(e.begin(), e.end(), 0);
  return e;
}

}  // namespace detail

/// Exhaustive test that equal values stay equal under the listed elements.
/// The witness is the first failing (k, x1 < x2) in lexicographic order.
inline Permissibility is_permissible(const ConceptualVariable& var, const GroupAction& act,
                                     std::span<const int> elements) {
  detail::require_same_space(var, act);
  const int n = var.space_size();
  for (int k : elements) {
    if (!act.group().valid_element(k)) throw Error(Errc::BadElement, "element " + std::to_string(k));
    for (int x1 = 0; x1 < n; ++x1)
      for (int x2 = x1 + 1; x2 < n; ++x2)
        if (var.value(x1) == var.value(x2) && var.value(act.apply(k, x1)) != var.value(act.apply(k, x2)))
          return {false, PermissibilityWitness{k, x1, x2}};
  }
  return {};
}

inline Permissibility is_permissible(const ConceptualVariable& var, const GroupAction& act) {
  const auto all = detail::all_elements(act.group());
  return is_permissible(var, act, all);
}

/// The value permutation g with var(k x) = g(var(x)) for every x, if one exists.
inline std::optional<std::vector<int>> value_permutation(const ConceptualVariable& var, const GroupAction& act,
                                                         int k) {
  detail::require_same_space(var, act);
  std::vector<int> g(static_cast<std::size_t>(var.value_count()), -1);
  for (int x = 0; x < var.space_size(); ++x) {
    int& slot = g[var.value(x)];
    const int image = var.value(act.apply(k, x));
    if (slot < 0)
      slot = image;
    else if (slot != image)
      return std::nullopt;
  }
  std::vector<char> hit(g.size(), 0);
  for (int v : g) {
    if (hit[v]) return std::nullopt;
    hit[v] = 1;
  }
  return g;
}

/// The induced group G on the value space, (g theta)(x) = theta(k x), and the
/// homomorphism K -> G.
struct InducedAction {
  std::vector<std::vector<int>> induced_perm;  // per element of K
  std::vector<int> kernel;
  FiniteGroup image_group;
  std::vector<int> image_of;  // k -> element of image_group
  /// Distinct value permutations, indexed like image_group.
  std::vector<std::vector<int>> image_perms;
};

inline InducedAction induce_group(const ConceptualVariable& var, const GroupAction& act) {
  const Permissibility p = is_permissible(var, act);
  if (!p.permissible) throw NotPermissibleError(*p.witness);
  const FiniteGroup& k_group = act.group();
  std::vector<std::vector<int>> induced;
  induced.reserve(static_cast<std::size_t>(k_group.order()));
  for (int k = 0; k < k_group.order(); ++k) {
    auto g = value_permutation(var, act, k);
    if (!g) throw Error(Errc::InternalError, "permissible variable without induced permutation");
    induced.push_back(std::move(*g));
  }

  // Identity first, then the remaining distinct permutations in order of first
  // appearance along K.
  std::vector<std::vector<int>> distinct{induced[k_group.identity()]};
  std::vector<int> image_of(induced.size(), -1);
  for (std::size_t k = 0; k < induced.size(); ++k) {
    auto it = std::find(distinct.begin(), distinct.end(), induced[k]);
    if (it == distinct.end()) {
      distinct.push_back(induced[k]);
      it = distinct.end() - 1;
    }
    image_of[k] = static_cast<int>(it - distinct.begin());
  }
  const int m = static_cast<int>(distinct.size());
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(distinct[a].size());
      for (std::size_t v = 0; v < c.size(); ++v) c[v] = distinct[a][distinct[b][v]];
      const auto it = std::find(distinct.begin(), distinct.end(), c);
      if (it == distinct.end()) throw Error(Errc::InternalError, "induced permutations not closed");
      table[static_cast<std::size_t>(a) * m + b] = static_cast<int>(it - distinct.begin());
    }

  InducedAction out{std::move(induced), {}, FiniteGroup::from_table(std::move(table), m), std::move(image_of),
                    std::move(distinct)};
  for (int k = 0; k < k_group.order(); ++k)
    if (out.image_of[k] == 0) out.kernel.push_back(k);
  return out;
}

/// All h whose action on the space descends to a single value permutation.
/// The result is checked for closure; a failure is an internal error.
inline std::vector<int> maximal_permissible_subgroup(const ConceptualVariable& var, const GroupAction& act) {
  detail::require_same_space(var, act);
  std::vector<int> h;
  for (int k = 0; k < act.group().order(); ++k)
    if (value_permutation(var, act, k)) h.push_back(k);
  if (!is_subgroup(act.group(), h))
    throw Error(Errc::InternalError, "maximal permissible set is not closed under the group law");
  return h;
}

/// alpha <= beta iff alpha = f(beta). Returns f as a table from beta's value
/// ids to alpha's value ids.
inline std::optional<std::vector<int>> accessibility_leq(const ConceptualVariable& alpha,
                                                         const ConceptualVariable& beta) {
  if (alpha.space_size() != beta.space_size()) throw Error(Errc::SizeMismatch, "variables on different spaces");
  std::vector<int> f(static_cast<std::size_t>(beta.value_count()), -1);
  for (int x = 0; x < beta.space_size(); ++x) {
    int& slot = f[beta.value(x)];
    if (slot < 0)
      slot = alpha.value(x);
    else if (slot != alpha.value(x))
      return std::nullopt;
  }
  return f;
}

/// theta'(x) = theta(h x).
inline ConceptualVariable compose(const ConceptualVariable& var, const GroupAction& act, int h) {
  detail::require_same_space(var, act);
  std::vector<int> values(static_cast<std::size_t>(var.space_size()));
  for (int x = 0; x < var.space_size(); ++x) values[x] = var.value(act.apply(h, x));
  return ConceptualVariable::make(std::move(values), var.labels(), var.names(), var.accessible());
}

}  // namespace qgroup
