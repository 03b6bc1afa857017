#pragma once

// Finite groups as explicit Cayley tables, their left actions on finite
// spaces, orbits, subgroups, homomorphisms and invariant measures.
//
// Element ordering for named groups: the identity is element 0, the
// generators follow in the order listed below, and the remaining elements are
// appended in breadth-first order of right multiplication by the generators.
//
//   cyclic:n            generator r (so element k is r^k)
//   dihedral:n          generators r (rotation by 2pi/n), s (reflection)
//   symmetric:n         generators (0 1), (0 1 ... n-1)
//   binary_tetrahedral  generators i, (1+i+j+k)/2 as unit quaternions
//   A x B               pair (a, b) has index a*|B| + b
//
// Every finite action is proper, so no properness check exists.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgroup/error.hpp"

namespace qgroup {

inline constexpr int kMaxGroupOrder = 10000;

class FiniteGroup {
 public:
  /// Validates the table: Latin square, identity, inverses, associativity
  /// (exhaustive for order <= 64, 20000 sampled triples above). An empty
  /// generator list is replaced by a greedily chosen generating set.
  static FiniteGroup from_table(std::vector<int> flat_table, int order, std::vector<int> generators = {},
                                std::string name = {}) {
    if (order <= 0) throw Error(Errc::InvalidGroup, "order must be positive");
    if (order > kMaxGroupOrder) throw Error(Errc::OrderTooLarge, "order " + std::to_string(order));
    if (flat_table.size() != static_cast<std::size_t>(order) * order)
      throw Error(Errc::InvalidGroup, "table size does not match order");
    auto data = std::make_shared<Data>();
    data->order = order;
    data->table = std::move(flat_table);
    data->name = std::move(name);
    validate(*data);
    if (generators.empty()) generators = greedy_generators(*data);
    for (int g : generators)
      if (g < 0 || g >= order) throw Error(Errc::BadElement, "generator out of range");
    data->generators = std::move(generators);
    return FiniteGroup(std::move(data));
  }

  static FiniteGroup from_table(const std::vector<std::vector<int>>& table, std::vector<int> generators = {},
                                std::string name = {}) {
    const int n = static_cast<int>(table.size());
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : table) {
      if (static_cast<int>(row.size()) != n) throw Error(Errc::InvalidGroup, "table is not square");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return from_table(std::move(flat), n, std::move(generators), std::move(name));
  }

  int order() const { return d_->order; }
  int identity() const { return d_->identity; }
  int mul(int a, int b) const { return d_->table[static_cast<std::size_t>(a) * d_->order + b]; }
  int inv(int a) const { return d_->inverses[a]; }
  const std::vector<int>& inverses() const { return d_->inverses; }
  const std::vector<int>& generators() const { return d_->generators; }
  const std::string& name() const { return d_->name; }
  std::span<const int> row(int a) const {
    return {d_->table.data() + static_cast<std::size_t>(a) * d_->order, static_cast<std::size_t>(d_->order)};
  }
  bool valid_element(int a) const { return a >= 0 && a < d_->order; }

  bool is_abelian() const {
    for (int a = 0; a < order(); ++a)
      for (int b = a + 1; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.d_ == b.d_ || (a.d_->order == b.d_->order && a.d_->table == b.d_->table);
  }

 private:
  struct Data {
    int order = 0;
    int identity = 0;
    std::vector<int> table;
    std::vector<int> inverses;
    std::vector<int> generators;
    std::string name;
  };

  explicit FiniteGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  static int at(const Data& d, int a, int b) { return d.table[static_cast<std::size_t>(a) * d.order + b]; }

  static void validate(Data& d) {
    const int n = d.order;
    for (int v : d.table)
      if (v < 0 || v >= n) throw Error(Errc::InvalidGroup, "table entry out of range");
    std::vector<char> seen(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int b = 0; b < n; ++b) seen[at(d, a, b)] = 1;
      if (std::count(seen.begin(), seen.end(), 1) != n)
        throw Error(Errc::InvalidGroup, "row " + std::to_string(a) + " is not a permutation");
      std::fill(seen.begin(), seen.end(), 0);
      for (int b = 0; b < n; ++b) seen[at(d, b, a)] = 1;
      if (std::count(seen.begin(), seen.end(), 1) != n)
        throw Error(Errc::InvalidGroup, "column " + std::to_string(a) + " is not a permutation");
    }
    int e = -1;
    for (int a = 0; a < n && e < 0; ++a) {
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) ok = at(d, a, x) == x && at(d, x, a) == x;
      if (ok) e = a;
    }
    if (e < 0) throw Error(Errc::InvalidGroup, "no identity element");
    d.identity = e;
    d.inverses.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (at(d, a, b) == e) {
          if (at(d, b, a) != e) throw Error(Errc::InvalidGroup, "left and right inverses differ");
          d.inverses[a] = b;
        }
    auto assoc = [&](int a, int b, int c) {
      if (at(d, at(d, a, b), c) != at(d, a, at(d, b, c)))
        throw Error(Errc::InvalidGroup, "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                                            "," + std::to_string(c) + ")");
    };
    if (n <= 64) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) assoc(a, b, c);
    } else {
      std::mt19937_64 rng(0x5eed);
      std::uniform_int_distribution<int> pick(0, n - 1);
      for (int i = 0; i < 20000; ++i) assoc(pick(rng), pick(rng), pick(rng));
    }
  }

  static std::vector<int> closure(const Data& d, const std::vector<int>& gens) {
    std::vector<char> in(static_cast<std::size_t>(d.order), 0);
    std::vector<int> elems{d.identity};
    in[d.identity] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (int g : gens) {
        const int y = at(d, elems[i], g);
        if (!in[y]) {
          in[y] = 1;
          elems.push_back(y);
        }
      }
    return elems;
  }

  static std::vector<int> greedy_generators(const Data& d) {
    std::vector<int> gens;
    std::vector<char> in(static_cast<std::size_t>(d.order), 0);
    in[d.identity] = 1;
    for (int a = 0; a < d.order; ++a) {
      if (in[a]) continue;
      gens.push_back(a);
      for (int x : closure(d, gens)) in[x] = 1;
    }
    return gens;
  }

  std::shared_ptr<const Data> d_;
};

namespace detail {

/// Generates a group from concrete generator objects. The identity is element
/// 0, generators come next, remaining elements in BFS order of x*g.
template <class T, class Mul, class Key>
std::pair<FiniteGroup, std::vector<T>> generate_group(const T& identity, const std::vector<T>& gens, Mul mul,
                                                      Key key, std::string name) {
  using K = decltype(key(identity));
  std::map<K, int> index;
  std::vector<T> elems;
  auto add = [&](const T& x) {
    auto [it, fresh] = index.emplace(key(x), static_cast<int>(elems.size()));
    if (fresh) {
      elems.push_back(x);
      if (static_cast<int>(elems.size()) > kMaxGroupOrder)
        throw Error(Errc::OrderTooLarge, name + " exceeds " + std::to_string(kMaxGroupOrder) + " elements");
    }
    return it->second;
  };
  add(identity);
  std::vector<int> gen_ids;
  for (const T& g : gens) {
    const int id = add(g);
    if (id != 0 && std::find(gen_ids.begin(), gen_ids.end(), id) == gen_ids.end()) gen_ids.push_back(id);
  }
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const T& g : gens) add(mul(elems[i], g));
  const int n = static_cast<int>(elems.size());
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = index.at(key(mul(elems[a], elems[b])));
  return {FiniteGroup::from_table(std::move(table), n, std::move(gen_ids), std::move(name)), std::move(elems)};
}

inline int parse_positive(const std::string& s, const std::string& spec) {
  if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw Error(Errc::UnknownGroupName, "bad size in '" + spec + "'");
  const int n = std::stoi(s);
  if (n < 1) throw Error(Errc::UnknownGroupName, "size must be >= 1 in '" + spec + "'");
  return n;
}

}  // namespace detail

/// Unit quaternion with exact arithmetic on the values used by the binary
/// polyhedral groups.
struct Quaternion {
  double w = 1, x = 0, y = 0, z = 0;

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
};

/// The 24 elements of the binary tetrahedral group, in the same order as the
/// Cayley table returned by make_named_group("binary_tetrahedral").
inline std::pair<FiniteGroup, std::vector<Quaternion>> binary_tetrahedral_group() {
  const Quaternion e{1, 0, 0, 0};
  const Quaternion i{0, 1, 0, 0};
  const Quaternion w{0.5, 0.5, 0.5, 0.5};
  auto key = [](const Quaternion& q) {
    return std::array<long, 4>{std::lround(4 * q.w), std::lround(4 * q.x), std::lround(4 * q.y), std::lround(4 * q.z)};
  };
  auto mul = [](const Quaternion& a, const Quaternion& b) { return a * b; };
  return detail::generate_group(e, std::vector<Quaternion>{i, w}, mul, key, "binary_tetrahedral");
}

inline FiniteGroup cyclic_group(int n) {
  if (n > kMaxGroupOrder) throw Error(Errc::OrderTooLarge, "cyclic:" + std::to_string(n));
  auto mul = [n](int a, int b) { return (a + b) % n; };
  return detail::generate_group(0, std::vector<int>{1 % n}, mul, [](int a) { return a; },
                                "cyclic:" + std::to_string(n))
      .first;
}

inline FiniteGroup dihedral_group(int n) {
  if (2L * n > kMaxGroupOrder) throw Error(Errc::OrderTooLarge, "dihedral:" + std::to_string(n));
  using El = std::pair<int, int>;  // (rotation, flip): x -> rot + (-1)^flip x
  auto mul = [n](const El& a, const El& b) {
    const int rot = a.second ? (a.first - b.first) : (a.first + b.first);
    return El{((rot % n) + n) % n, a.second ^ b.second};
  };
  return detail::generate_group(El{0, 0}, std::vector<El>{{1 % n, 0}, {0, 1}}, mul, [](const El& a) { return a; },
                                "dihedral:" + std::to_string(n))
      .first;
}

inline FiniteGroup symmetric_group(int n) {
  long fact = 1;
  for (int i = 2; i <= n; ++i) {
    fact *= i;
    if (fact > kMaxGroupOrder) throw Error(Errc::OrderTooLarge, "symmetric:" + std::to_string(n));
  }
  using Perm = std::vector<int>;
  Perm id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  Perm swap = id, cycle(static_cast<std::size_t>(n));
  if (n >= 2) std::swap(swap[0], swap[1]);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  // (a*b)(x) = a(b(x))
  auto mul = [](const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
    return c;
  };
  return detail::generate_group(id, std::vector<Perm>{swap, cycle}, mul, [](const Perm& p) { return p; },
                                "symmetric:" + std::to_string(n))
      .first;
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const long order = static_cast<long>(a.order()) * b.order();
  if (order > kMaxGroupOrder) throw Error(Errc::OrderTooLarge, a.name() + "x" + b.name());
  const int nb = b.order();
  const int n = static_cast<int>(order);
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      table[static_cast<std::size_t>(x) * n + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  std::vector<int> gens;
  for (int g : a.generators()) gens.push_back(g * nb + b.identity());
  for (int h : b.generators()) gens.push_back(a.identity() * nb + h);
  return FiniteGroup::from_table(std::move(table), n, std::move(gens), a.name() + "x" + b.name());
}

/// Parses `cyclic:<n>`, `dihedral:<n>`, `symmetric:<n>`, `binary_tetrahedral`
/// and `<spec>x<spec>` products (left-associative).
inline FiniteGroup make_named_group(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t pos; (pos = spec.find('x', start)) != std::string::npos; start = pos + 1)
    parts.push_back(spec.substr(start, pos - start));
  parts.push_back(spec.substr(start));

  auto single = [&](const std::string& s) -> FiniteGroup {
    if (s == "binary_tetrahedral") return binary_tetrahedral_group().first;
    if (s == "trivial") return cyclic_group(1);
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw Error(Errc::UnknownGroupName, "'" + s + "'");
    const std::string kind = s.substr(0, colon);
    const int n = detail::parse_positive(s.substr(colon + 1), spec);
    if (kind == "cyclic") return cyclic_group(n);
    if (kind == "dihedral") return dihedral_group(n);
    if (kind == "symmetric") return symmetric_group(n);
    throw Error(Errc::UnknownGroupName, "'" + s + "'");
  };

  FiniteGroup g = single(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) g = direct_product(g, single(parts[i]));
  return g;
}

/// Left action k: x -> k x on {0..space_size-1}. Axioms are verified
/// exhaustively on construction.
class GroupAction {
 public:
  static GroupAction make(FiniteGroup group, std::vector<std::vector<int>> perms) {
    if (static_cast<int>(perms.size()) != group.order())
      throw Error(Errc::InvalidAction, "need one permutation per group element");
    const int n = perms.empty() ? 0 : static_cast<int>(perms.front().size());
    if (n <= 0) throw Error(Errc::InvalidAction, "space must be nonempty");
    std::vector<char> seen(static_cast<std::size_t>(n));
    for (const auto& p : perms) {
      if (static_cast<int>(p.size()) != n) throw Error(Errc::InvalidAction, "ragged permutations");
      std::fill(seen.begin(), seen.end(), 0);
      for (int v : p) {
        if (v < 0 || v >= n || seen[v]) throw Error(Errc::InvalidAction, "not a bijection");
        seen[v] = 1;
      }
    }
    for (int x = 0; x < n; ++x)
      if (perms[group.identity()][x] != x) throw Error(Errc::InvalidAction, "identity does not act trivially");
    for (int a = 0; a < group.order(); ++a)
      for (int b = 0; b < group.order(); ++b) {
        const auto& pab = perms[group.mul(a, b)];
        for (int x = 0; x < n; ++x)
          if (pab[x] != perms[a][perms[b][x]])
            throw Error(Errc::InvalidAction, "compatibility fails for elements " + std::to_string(a) + ", " +
                                                 std::to_string(b));
      }
    return GroupAction(std::move(group), std::move(perms));
  }

  /// Builds the action from generator permutations by perm[x g] = perm[x] o perm[g].
  static GroupAction from_generators(FiniteGroup group, const std::vector<std::vector<int>>& generator_perms) {
    const auto& gens = group.generators();
    if (generator_perms.size() != gens.size())
      throw Error(Errc::InvalidAction, "need one permutation per generator");
    const int n = generator_perms.empty() ? 1 : static_cast<int>(generator_perms.front().size());
    std::vector<int> id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 0);
    auto compose = [](const std::vector<int>& a, const std::vector<int>& b) {
      std::vector<int> c(a.size());
      for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
      return c;
    };
    auto perms = extend_from_generators(group, generator_perms, id, compose);
    return make(std::move(group), std::move(perms));
  }

  static GroupAction from_function(FiniteGroup group, int space_size, const std::function<int(int, int)>& act) {
    std::vector<std::vector<int>> perms(static_cast<std::size_t>(group.order()),
                                        std::vector<int>(static_cast<std::size_t>(space_size)));
    for (int k = 0; k < group.order(); ++k)
      for (int x = 0; x < space_size; ++x) perms[k][x] = act(k, x);
    return make(std::move(group), std::move(perms));
  }

  /// Left multiplication of the group on itself.
  static GroupAction regular(const FiniteGroup& group) {
    return from_function(group, group.order(), [&](int k, int x) { return group.mul(k, x); });
  }

  static GroupAction trivial(const FiniteGroup& group, int space_size) {
    return from_function(group, space_size, [](int, int x) { return x; });
  }

  /// Images of every group element obtained by BFS over right multiplication
  /// by generators; the caller is responsible for validating the result.
  template <class T, class Mul>
  static std::vector<T> extend_from_generators(const FiniteGroup& group, const std::vector<T>& gen_images,
                                               const T& identity, Mul mul) {
    std::vector<std::optional<T>> images(static_cast<std::size_t>(group.order()));
    images[group.identity()] = identity;
    std::vector<int> queue{group.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int x = queue[i];
      for (std::size_t g = 0; g < gen_images.size(); ++g) {
        const int y = group.mul(x, group.generators()[g]);
        if (!images[y]) {
          images[y] = mul(*images[x], gen_images[g]);
          queue.push_back(y);
        }
      }
    }
    std::vector<T> out;
    out.reserve(images.size());
    for (auto& im : images) {
      if (!im) throw Error(Errc::InvalidGroup, "generators do not generate the group");
      out.push_back(std::move(*im));
    }
    return out;
  }

  const FiniteGroup& group() const { return group_; }
  int space_size() const { return static_cast<int>(perms_.front().size()); }
  int apply(int k, int x) const { return perms_[k][x]; }
  const std::vector<int>& perm(int k) const { return perms_[k]; }
  const std::vector<std::vector<int>>& perms() const { return perms_; }

 private:
  GroupAction(FiniteGroup g, std::vector<std::vector<int>> p) : group_(std::move(g)), perms_(std::move(p)) {}

  FiniteGroup group_;
  std::vector<std::vector<int>> perms_;
};

/// Orbit partition; blocks sorted ascending and ordered by smallest point.
inline std::vector<std::vector<int>> orbits(const GroupAction& act) {
  const int n = act.space_size();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<int> block;
    for (int k = 0; k < act.group().order(); ++k) {
      const int y = act.apply(k, x);
      if (!seen[y]) {
        seen[y] = 1;
        block.push_back(y);
      }
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

inline bool is_transitive(const GroupAction& act) { return orbits(act).size() == 1; }

/// Orbit index of every point, matching the block order of orbits().
inline std::vector<int> orbit_index(const GroupAction& act) {
  std::vector<int> idx(static_cast<std::size_t>(act.space_size()), -1);
  const auto blocks = orbits(act);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int x : blocks[b]) idx[x] = static_cast<int>(b);
  return idx;
}

/// Counting measure: left and right invariant for every finite group.
inline std::vector<double> haar_measure(const FiniteGroup& g) {
  return std::vector<double>(static_cast<std::size_t>(g.order()), 1.0);
}

struct InvariantMeasure {
  std::vector<double> weights;                  // per point
  std::vector<double> per_orbit_normalization;  // total mass of each orbit
  std::vector<int> orbit_of;                    // orbit index per point

  double total() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }
};

inline InvariantMeasure invariant_measure(const GroupAction& act, std::span<const double> per_orbit_mass) {
  const auto blocks = orbits(act);
  if (per_orbit_mass.size() != blocks.size())
    throw Error(Errc::MassCountMismatch, "got " + std::to_string(per_orbit_mass.size()) + " masses for " +
                                             std::to_string(blocks.size()) + " orbits");
  InvariantMeasure m;
  m.weights.assign(static_cast<std::size_t>(act.space_size()), 0.0);
  m.orbit_of.assign(static_cast<std::size_t>(act.space_size()), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (!(per_orbit_mass[b] > 0)) throw Error(Errc::MassCountMismatch, "orbit masses must be positive");
    const double w = per_orbit_mass[b] / static_cast<double>(blocks[b].size());
    for (int x : blocks[b]) {
      m.weights[x] = w;
      m.orbit_of[x] = static_cast<int>(b);
    }
  }
  m.per_orbit_normalization.assign(per_orbit_mass.begin(), per_orbit_mass.end());
  return m;
}

/// Smallest subset closed under the table containing gens and the identity;
/// sorted ascending.
inline std::vector<int> subgroup_generated(const FiniteGroup& g, std::span<const int> gens) {
  for (int x : gens)
    if (!g.valid_element(x)) throw Error(Errc::BadElement, "element " + std::to_string(x));
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
  std::vector<int> elems{g.identity()};
  in[g.identity()] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (int s : gens) {
      const int y = g.mul(elems[i], s);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

inline bool is_subgroup(const FiniteGroup& g, std::span<const int> elems) {
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
  for (int x : elems) {
    if (!g.valid_element(x)) return false;
    in[x] = 1;
  }
  if (!in[g.identity()]) return false;
  for (int a : elems)
    for (int b : elems)
      if (!in[g.mul(a, b)]) return false;
  return true;
}

/// A subgroup re-indexed as a group in its own right. parent[i] is the
/// element of the enclosing group that local element i stands for.
struct Subgroup {
  FiniteGroup group;
  std::vector<int> parent;
};

inline Subgroup make_subgroup(const FiniteGroup& g, std::span<const int> elems) {
  if (!is_subgroup(g, elems)) throw Error(Errc::BadElement, "element set is not a subgroup");
  std::vector<int> parent(elems.begin(), elems.end());
  std::sort(parent.begin(), parent.end());
  parent.erase(std::unique(parent.begin(), parent.end()), parent.end());
  std::vector<int> local(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < parent.size(); ++i) local[parent[i]] = static_cast<int>(i);
  const int m = static_cast<int>(parent.size());
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) table[static_cast<std::size_t>(a) * m + b] = local[g.mul(parent[a], parent[b])];
  return {FiniteGroup::from_table(std::move(table), m), std::move(parent)};
}

/// The action of a subgroup, indexed by the subgroup's local elements.
inline GroupAction restrict_action(const GroupAction& act, const Subgroup& sub) {
  std::vector<std::vector<int>> perms;
  perms.reserve(sub.parent.size());
  for (int k : sub.parent) perms.push_back(act.perm(k));
  return GroupAction::make(sub.group, std::move(perms));
}

struct HomomorphismCheck {
  bool ok = true;
  std::optional<std::pair<int, int>> violation;  // first failing (k1, k2)
};

/// Exhaustive check of f(k1 k2) = f(k1) f(k2).
inline HomomorphismCheck check_homomorphism(const FiniteGroup& from, const FiniteGroup& to, std::span<const int> f) {
  if (static_cast<int>(f.size()) != from.order()) throw Error(Errc::BadElement, "map must be total");
  for (int y : f)
    if (!to.valid_element(y)) throw Error(Errc::BadElement, "image " + std::to_string(y) + " out of range");
  for (int a = 0; a < from.order(); ++a)
    for (int b = 0; b < from.order(); ++b)
      if (f[from.mul(a, b)] != to.mul(f[a], f[b])) return {false, std::pair{a, b}};
  return {};
}

}  // namespace qgroup
