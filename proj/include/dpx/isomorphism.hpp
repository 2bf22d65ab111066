#pragma once

// Isomorphism testing by generator-image backtracking.
//
// A generating set of G1 is chosen greedily (highest element order first).
// Each generator is sent to a G2 element with the same signature (element
// order and centralizer size); after every choice the partial map is
// extended over the subgroup generated so far and checked for consistency
// and injectivity, which prunes incompatible prefixes early.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dpx/group.hpp"

namespace dpx {

struct IsoOptions {
  std::uint64_t node_budget = 100'000'000;
};

/// isomorphism[g] is the image in the second group of element g of the first.
using Isomorphism = std::vector<element>;

namespace detail {

struct ElementSignature {
  std::size_t order = 0;
  std::size_t centralizer_size = 0;
  auto operator<=>(const ElementSignature&) const = default;
};

inline std::vector<ElementSignature> element_signatures(const ConcreteGroup& group) {
  std::vector<ElementSignature> sig(group.order());
  for (element g = 0; g < group.order(); ++g) {
    sig[g].order = element_order(group, g);
    std::size_t c = 0;
    for (element h = 0; h < group.order(); ++h) c += group.mul(g, h) == group.mul(h, g);
    sig[g].centralizer_size = c;
  }
  return sig;
}

inline std::vector<element> greedy_generators(const ConcreteGroup& group,
                                              std::vector<element> pool,
                                              const std::vector<ElementSignature>& sig) {
  std::stable_sort(pool.begin(), pool.end(),
                   [&](element a, element b) { return sig[a].order > sig[b].order; });
  std::vector<element> gens;
  Subgroup reached = closure(group, std::span<const element>(gens));
  const std::size_t target = closure(group, std::span<const element>(pool)).order();
  for (element g : pool) {
    if (reached.order() == target) break;
    if (reached.contains(g)) continue;
    gens.push_back(g);
    reached = closure(group, std::span<const element>(gens));
  }
  return gens;
}

class GeneratorSearch {
 public:
  GeneratorSearch(const ConcreteGroup& source, const ConcreteGroup& target,
                  std::vector<element> generators, std::vector<std::vector<element>> candidates,
                  std::uint64_t budget)
      : source_(source),
        target_(target),
        gens_(std::move(generators)),
        candidates_(std::move(candidates)),
        images_(gens_.size()),
        budget_(budget) {}

  /// Calls `visit` for each isomorphism found; stops when it returns false.
  void run(const std::function<bool(const Isomorphism&)>& visit) {
    stop_ = false;
    descend(0, visit);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  // Extends gens_[0..level] -> images_[0..level] over the generated subgroup.
  bool extend(std::size_t level, Isomorphism& map) const {
    constexpr element unset = static_cast<element>(-1);
    map.assign(source_.order(), unset);
    std::vector<std::uint8_t> used(target_.order(), 0);
    std::vector<element> queue{source_.identity()};
    map[source_.identity()] = target_.identity();
    used[target_.identity()] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const element a = queue[q];
      for (std::size_t i = 0; i <= level; ++i) {
        const element b = source_.mul(a, gens_[i]);
        const element fb = target_.mul(map[a], images_[i]);
        if (map[b] == unset) {
          if (used[fb]) return false;
          used[fb] = 1;
          map[b] = fb;
          queue.push_back(b);
        } else if (map[b] != fb) {
          return false;
        }
      }
    }
    return true;
  }

  void descend(std::size_t level, const std::function<bool(const Isomorphism&)>& visit) {
    if (level == gens_.size()) {
      Isomorphism map;
      if (gens_.empty()) {
        map.assign(1, target_.identity());
        if (source_.order() == 1 && target_.order() == 1) stop_ = !visit(map);
        return;
      }
      if (extend(level - 1, map) &&
          std::find(map.begin(), map.end(), static_cast<element>(-1)) == map.end())
        stop_ = !visit(map);
      return;
    }
    Isomorphism scratch;
    for (element c : candidates_[level]) {
      if (++nodes_ > budget_) throw SearchBudgetExceeded(nodes_ - 1);
      images_[level] = c;
      if (level + 1 < gens_.size() && !extend(level, scratch)) continue;
      descend(level + 1, visit);
      if (stop_) return;
    }
  }

  const ConcreteGroup& source_;
  const ConcreteGroup& target_;
  std::vector<element> gens_;
  std::vector<std::vector<element>> candidates_;
  std::vector<element> images_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool stop_ = false;
};

inline std::vector<element> all_elements(const ConcreteGroup& g) {
  std::vector<element> v(g.order());
  for (element i = 0; i < g.order(); ++i) v[i] = i;
  return v;
}

inline std::vector<std::vector<element>> matching_candidates(
    const std::vector<element>& gens, const std::vector<ElementSignature>& sig1,
    const std::vector<ElementSignature>& sig2, const std::vector<element>& pool) {
  std::vector<std::vector<element>> out;
  for (element g : gens) {
    std::vector<element> c;
    for (element h : pool)
      if (sig2[h] == sig1[g]) c.push_back(h);
    out.push_back(std::move(c));
  }
  return out;
}

inline bool same_signature_multiset(std::vector<ElementSignature> a, std::vector<ElementSignature> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace detail

/// A group isomorphism from `first` to `second`, or nullopt if none exists.
/// Throws SearchBudgetExceeded when the node budget runs out.
inline std::optional<Isomorphism> isomorphic(const ConcreteGroup& first, const ConcreteGroup& second,
                                             IsoOptions options = {}) {
  if (first.order() != second.order()) return std::nullopt;
  if (order_profile(first) != order_profile(second)) return std::nullopt;
  const auto sig1 = detail::element_signatures(first);
  const auto sig2 = detail::element_signatures(second);
  if (!detail::same_signature_multiset(sig1, sig2)) return std::nullopt;

  auto gens = detail::greedy_generators(first, detail::all_elements(first), sig1);
  auto candidates = detail::matching_candidates(gens, sig1, sig2, detail::all_elements(second));
  detail::GeneratorSearch search(first, second, gens, std::move(candidates), options.node_budget);
  std::optional<Isomorphism> found;
  search.run([&](const Isomorphism& map) {
    found = map;
    return false;
  });
  return found;
}

/// An isomorphism carrying H1 onto H2 and K1 onto K2, or nullopt.
inline std::optional<Isomorphism> isomorphic_as_factorization(
    const ConcreteGroup& g1, const Subgroup& h1, const Subgroup& k1, const ConcreteGroup& g2,
    const Subgroup& h2, const Subgroup& k2, IsoOptions options = {}) {
  if (g1.order() != g2.order() || h1.order() != h2.order() || k1.order() != k2.order())
    return std::nullopt;
  const auto sig1 = detail::element_signatures(g1);
  const auto sig2 = detail::element_signatures(g2);
  if (!detail::same_signature_multiset(sig1, sig2)) return std::nullopt;

  auto gens_h = detail::greedy_generators(g1, h1.members(), sig1);
  auto gens_k = detail::greedy_generators(g1, k1.members(), sig1);
  auto cand_h = detail::matching_candidates(gens_h, sig1, sig2, h2.members());
  auto cand_k = detail::matching_candidates(gens_k, sig1, sig2, k2.members());

  std::vector<element> gens = gens_h;
  gens.insert(gens.end(), gens_k.begin(), gens_k.end());
  cand_h.insert(cand_h.end(), cand_k.begin(), cand_k.end());
  if (closure(g1, std::span<const element>(gens)).order() != g1.order()) return std::nullopt;

  detail::GeneratorSearch search(g1, g2, gens, std::move(cand_h), options.node_budget);
  std::optional<Isomorphism> found;
  search.run([&](const Isomorphism& map) {
    found = map;
    return false;
  });
  return found;
}

/// Every automorphism of `group`, as element maps.
inline std::vector<Isomorphism> automorphisms(const ConcreteGroup& group, IsoOptions options = {}) {
  const auto sig = detail::element_signatures(group);
  auto gens = detail::greedy_generators(group, detail::all_elements(group), sig);
  auto candidates = detail::matching_candidates(gens, sig, sig, detail::all_elements(group));
  detail::GeneratorSearch search(group, group, gens, std::move(candidates), options.node_budget);
  std::vector<Isomorphism> out;
  search.run([&](const Isomorphism& map) {
    out.push_back(map);
    return true;
  });
  return out;
}

}  // namespace dpx
