#pragma once

// Dense-table finite groups: construction, validation and the subgroup
// machinery (closure, core, centralizer, normality, dihedral recognition).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpx/errors.hpp"

namespace dpx {

using element = std::uint32_t;

/// Orders above this are validated with Light's associativity test over a
/// generating set instead of the exhaustive triple scan.
inline constexpr std::size_t exhaustive_associativity_limit = 1000;

class ConcreteGroup;
ConcreteGroup build_from_table(std::size_t order, std::vector<element> table,
                               std::vector<std::string> labels);

/// A finite group stored as its full multiplication table.
///
/// Instances are only produced by build_from_table, so every ConcreteGroup
/// in circulation has passed the Latin-square, identity, inverse and
/// associativity checks. Apart from naming generators the object is
/// immutable and safe to share between threads.
class ConcreteGroup {
 public:
  ConcreteGroup() = default;

  std::size_t order() const noexcept { return order_; }
  element identity() const noexcept { return identity_; }

  element mul(element a, element b) const noexcept { return table_[a * order_ + b]; }
  element inverse(element a) const noexcept { return inverse_[a]; }

  element pow(element g, long long k) const {
    if (k < 0) {
      g = inverse(g);
      k = -k;
    }
    element acc = identity_;
    element base = g;
    while (k > 0) {
      if (k & 1) acc = mul(acc, base);
      base = mul(base, base);
      k >>= 1;
    }
    return acc;
  }

  /// g^by = by^-1 g by
  element conj(element g, element by) const noexcept { return mul(mul(inverse(by), g), by); }

  /// [a,b] = a^-1 b^-1 a b
  element commutator(element a, element b) const noexcept {
    return mul(mul(inverse(a), inverse(b)), mul(a, b));
  }

  std::span<const element> row(element g) const noexcept {
    return {table_.data() + static_cast<std::size_t>(g) * order_, order_};
  }
  const std::vector<element>& table() const noexcept { return table_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(element g) const {
    return labels_.empty() ? std::to_string(g) : labels_[g];
  }

  void set_generator(const std::string& name, element g) {
    if (g >= order_) throw InvalidInput("generator index out of range");
    generators_[name] = g;
  }
  element generator(const std::string& name) const {
    auto it = generators_.find(name);
    if (it == generators_.end()) throw InvalidInput("unknown generator " + name);
    return it->second;
  }
  const std::map<std::string, element>& generators() const noexcept { return generators_; }

 private:
  friend ConcreteGroup build_from_table(std::size_t, std::vector<element>,
                                        std::vector<std::string>);

  std::size_t order_ = 0;
  std::vector<element> table_;
  element identity_ = 0;
  std::vector<element> inverse_;
  std::vector<std::string> labels_;
  std::map<std::string, element> generators_;
};

/// An element subset of a ConcreteGroup closed under the group law.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(std::size_t parent_order, std::vector<element> members, std::vector<element> witness)
      : members_(std::move(members)),
        witness_(std::move(witness)),
        mask_(parent_order, 0) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (element g : members_) mask_[g] = 1;
  }

  std::size_t order() const noexcept { return members_.size(); }
  std::size_t parent_order() const noexcept { return mask_.size(); }
  bool contains(element g) const noexcept { return g < mask_.size() && mask_[g] != 0; }
  const std::vector<element>& members() const noexcept { return members_; }
  const std::vector<element>& witness_generators() const noexcept { return witness_; }

  bool operator==(const Subgroup& other) const noexcept { return members_ == other.members_; }
  bool is_subset_of(const Subgroup& other) const {
    return std::all_of(members_.begin(), members_.end(),
                       [&](element g) { return other.contains(g); });
  }

 private:
  std::vector<element> members_;
  std::vector<element> witness_;
  std::vector<std::uint8_t> mask_;
};

namespace detail {

inline bool is_permutation_of_range(std::span<const element> values, std::vector<std::uint8_t>& seen) {
  std::fill(seen.begin(), seen.end(), 0);
  for (element v : values) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

// Smallest set of elements whose products reach the whole magma; used by
// Light's associativity test.
inline std::vector<element> magma_generators(std::size_t order, const std::vector<element>& table) {
  std::vector<std::uint8_t> reached(order, 0);
  std::vector<element> gens;
  std::vector<element> reached_list;
  for (element candidate = 0; candidate < order; ++candidate) {
    if (reached[candidate]) continue;
    gens.push_back(candidate);
    reached[candidate] = 1;
    reached_list.push_back(candidate);
    for (std::size_t i = 0; i < reached_list.size(); ++i) {
      const element a = reached_list[i];
      for (element g : gens) {
        for (element p : {table[a * order + g], table[g * order + a]}) {
          if (!reached[p]) {
            reached[p] = 1;
            reached_list.push_back(p);
          }
        }
      }
    }
  }
  return gens;
}

}  // namespace detail

/// Validates `table` (row-major, table[g*order+h] = g·h) and wraps it.
/// Throws NotAGroup naming the first failed axiom.
inline ConcreteGroup build_from_table(std::size_t order, std::vector<element> table,
                                      std::vector<std::string> labels = {}) {
  if (order == 0) throw NotAGroup("empty table");
  if (table.size() != order * order) throw NotAGroup("table is not order x order");
  if (!labels.empty() && labels.size() != order) throw NotAGroup("label count does not match order");
  for (element v : table)
    if (v >= order) throw NotAGroup("entry out of range");

  std::vector<std::uint8_t> seen(order);
  std::vector<element> column(order);
  for (std::size_t g = 0; g < order; ++g) {
    if (!detail::is_permutation_of_range({table.data() + g * order, order}, seen))
      throw NotAGroup("row " + std::to_string(g) + " is not a permutation");
    for (std::size_t h = 0; h < order; ++h) column[h] = table[h * order + g];
    if (!detail::is_permutation_of_range(column, seen))
      throw NotAGroup("column " + std::to_string(g) + " is not a permutation");
  }

  std::optional<element> identity;
  for (element e = 0; e < order && !identity; ++e) {
    bool ok = true;
    for (element g = 0; g < order && ok; ++g)
      ok = table[e * order + g] == g && table[g * order + e] == g;
    if (ok) identity = e;
  }
  if (!identity) throw NotAGroup("no identity element");

  std::vector<element> inverse(order);
  for (element g = 0; g < order; ++g) {
    const element* row = table.data() + static_cast<std::size_t>(g) * order;
    auto it = std::find(row, row + order, *identity);
    element h = static_cast<element>(it - row);
    if (table[h * order + g] != *identity)
      throw NotAGroup("element " + std::to_string(g) + " has no two-sided inverse");
    inverse[g] = h;
  }

  auto assoc_fail = [](std::size_t a, std::size_t b, std::size_t c) {
    return NotAGroup("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                     "," + std::to_string(c) + ")");
  };
  if (order <= exhaustive_associativity_limit) {
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b) {
        const std::size_t ab = table[a * order + b];
        const element* ab_row = table.data() + ab * order;
        const element* b_row = table.data() + b * order;
        const element* a_row = table.data() + a * order;
        for (std::size_t c = 0; c < order; ++c)
          if (ab_row[c] != a_row[b_row[c]]) throw assoc_fail(a, b, c);
      }
  } else {
    for (element b : detail::magma_generators(order, table))
      for (std::size_t a = 0; a < order; ++a)
        for (std::size_t c = 0; c < order; ++c)
          if (table[table[a * order + b] * order + c] != table[a * order + table[b * order + c]])
            throw assoc_fail(a, b, c);
  }

  ConcreteGroup group;
  group.order_ = order;
  group.table_ = std::move(table);
  group.identity_ = *identity;
  group.inverse_ = std::move(inverse);
  group.labels_ = std::move(labels);
  return group;
}

inline std::size_t element_order(const ConcreteGroup& group, element g) {
  std::size_t k = 1;
  for (element p = g; p != group.identity(); p = group.mul(p, g)) ++k;
  return k;
}

/// Smallest subgroup containing `seed`; the seed is kept as witness.
inline Subgroup closure(const ConcreteGroup& group, std::span<const element> seed) {
  std::vector<std::uint8_t> in(group.order(), 0);
  std::vector<element> members{group.identity()};
  in[group.identity()] = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (element s : seed) {
      element p = group.mul(members[i], s);
      if (!in[p]) {
        in[p] = 1;
        members.push_back(p);
      }
    }
  }
  return Subgroup(group.order(), std::move(members), {seed.begin(), seed.end()});
}

inline Subgroup closure(const ConcreteGroup& group, std::initializer_list<element> seed) {
  return closure(group, std::span<const element>(seed.begin(), seed.size()));
}

inline Subgroup whole_group(const ConcreteGroup& group) {
  std::vector<element> all(group.order());
  std::iota(all.begin(), all.end(), element{0});
  return Subgroup(group.order(), all, {});
}

inline Subgroup intersection(const ConcreteGroup& group, const Subgroup& a, const Subgroup& b) {
  std::vector<element> common;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                        b.members().end(), std::back_inserter(common));
  return Subgroup(group.order(), common, common);
}

/// g^-1 S g as a sorted member list.
inline std::vector<element> conjugate_members(const ConcreteGroup& group, const Subgroup& s,
                                              element g) {
  std::vector<element> out;
  out.reserve(s.order());
  for (element h : s.members()) out.push_back(group.conj(h, g));
  std::sort(out.begin(), out.end());
  return out;
}

/// Largest normal subgroup contained in S: the intersection of S^g over all g.
inline Subgroup core(const ConcreteGroup& group, const Subgroup& s) {
  std::vector<std::uint8_t> keep(group.order(), 0);
  for (element h : s.members()) keep[h] = 1;
  for (element g = 0; g < group.order(); ++g) {
    std::vector<std::uint8_t> in_conj(group.order(), 0);
    for (element h : s.members()) in_conj[group.conj(h, g)] = 1;
    for (element h : s.members())
      if (!in_conj[h]) keep[h] = 0;
  }
  std::vector<element> members;
  for (element h : s.members())
    if (keep[h]) members.push_back(h);
  return Subgroup(group.order(), members, members);
}

/// Same result as core(), iterating conjugation by `generators` to a fixpoint.
inline Subgroup core_by_generators(const ConcreteGroup& group, const Subgroup& s,
                                   std::span<const element> generators) {
  std::vector<element> current = s.members();
  for (bool changed = true; changed;) {
    changed = false;
    for (element g : generators) {
      for (element conj_by : {g, group.inverse(g)}) {
        std::vector<std::uint8_t> in(group.order(), 0);
        for (element h : current) in[h] = 1;
        std::vector<element> next;
        for (element h : current)
          if (in[group.conj(h, conj_by)]) next.push_back(h);
        if (next.size() != current.size()) {
          current = std::move(next);
          changed = true;
        }
      }
    }
  }
  return Subgroup(group.order(), current, current);
}

inline Subgroup centralizer(const ConcreteGroup& group, std::span<const element> set) {
  std::vector<element> members;
  for (element g = 0; g < group.order(); ++g) {
    bool commutes = std::all_of(set.begin(), set.end(),
                                [&](element s) { return group.mul(g, s) == group.mul(s, g); });
    if (commutes) members.push_back(g);
  }
  return Subgroup(group.order(), members, members);
}

inline Subgroup centralizer(const ConcreteGroup& group, std::initializer_list<element> set) {
  return centralizer(group, std::span<const element>(set.begin(), set.size()));
}

inline bool is_normal(const ConcreteGroup& group, const Subgroup& s) {
  for (element g = 0; g < group.order(); ++g)
    for (element h : s.members())
      if (!s.contains(group.conj(h, g))) return false;
  return true;
}

struct DihedralVerdict {
  enum class Kind { dihedral, cyclic, other };
  Kind kind = Kind::other;
  element rotation = 0;    // dihedral: rotation generator; cyclic: generator
  element reflection = 0;  // dihedral only
};

/// Classifies S as dihedral (order >= 6), cyclic, or other.
///
/// Orders 2 and 4 are never reported dihedral; C2 x C2 is "other".
inline DihedralVerdict recognize_dihedral(const ConcreteGroup& group, const Subgroup& s) {
  const std::size_t n = s.order();
  DihedralVerdict verdict;
  for (element g : s.members()) {
    if (element_order(group, g) == n) {
      verdict.kind = DihedralVerdict::Kind::cyclic;
      verdict.rotation = g;
      return verdict;
    }
  }
  if (n % 2 != 0 || n < 6) return verdict;
  const std::size_t half = n / 2;
  for (element r : s.members()) {
    if (element_order(group, r) != half) continue;
    Subgroup rotations = closure(group, {r});
    const element r_inv = group.inverse(r);
    for (element f : s.members()) {
      if (rotations.contains(f) || group.mul(f, f) != group.identity()) continue;
      if (group.conj(r, f) == r_inv) {
        verdict.kind = DihedralVerdict::Kind::dihedral;
        verdict.rotation = r;
        verdict.reflection = f;
        return verdict;
      }
    }
  }
  return verdict;
}

/// element order -> number of elements of that order
using OrderProfile = std::map<std::size_t, std::size_t>;

inline OrderProfile order_profile(const ConcreteGroup& group) {
  OrderProfile profile;
  for (element g = 0; g < group.order(); ++g) ++profile[element_order(group, g)];
  return profile;
}

// ---------------------------------------------------------------------------
// Cayley table files: "order=<N>" then N rows of N comma-separated indices.

struct CayleyTable {
  std::size_t order = 0;
  std::vector<element> cells;
};

inline void write_cayley_csv(std::ostream& out, std::size_t order, std::span<const element> cells) {
  out << "order=" << order << '\n';
  for (std::size_t g = 0; g < order; ++g) {
    for (std::size_t h = 0; h < order; ++h) {
      if (h) out << ',';
      out << cells[g * order + h];
    }
    out << '\n';
  }
}

inline void write_cayley_csv(std::ostream& out, const ConcreteGroup& group) {
  write_cayley_csv(out, group.order(), group.table());
}

/// Parses the raw table without validating the group axioms.
inline CayleyTable read_cayley_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("order=", 0) != 0)
    throw InvalidInput("cayley file must start with order=<N>");
  CayleyTable t;
  try {
    t.order = std::stoul(line.substr(6));
  } catch (const std::exception&) {
    throw InvalidInput("bad order line: " + line);
  }
  if (t.order == 0) throw InvalidInput("order must be positive");
  t.cells.reserve(t.order * t.order);
  for (std::size_t row = 0; row < t.order; ++row) {
    if (!std::getline(in, line)) throw InvalidInput("cayley file truncated");
    std::stringstream ss(line);
    std::string cell;
    std::size_t count = 0;
    while (std::getline(ss, cell, ',')) {
      try {
        t.cells.push_back(static_cast<element>(std::stoul(cell)));
      } catch (const std::exception&) {
        throw InvalidInput("bad cell '" + cell + "' in row " + std::to_string(row));
      }
      ++count;
    }
    if (count != t.order) throw InvalidInput("row " + std::to_string(row) + " has wrong length");
  }
  return t;
}

/// Reads and validates a Cayley file; element 0 must be the identity.
inline ConcreteGroup load_cayley_group(std::istream& in) {
  CayleyTable t = read_cayley_csv(in);
  ConcreteGroup g = build_from_table(t.order, std::move(t.cells));
  if (g.identity() != 0) throw NotAGroup("element 0 is not the identity");
  return g;
}

}  // namespace dpx
