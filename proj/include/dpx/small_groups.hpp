#pragma once

// Reference groups used as building blocks and test controls.

#include <map>
#include <string>
#include <vector>

#include "dpx/group.hpp"

namespace dpx {

inline ConcreteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw InvalidInput("cyclic group order must be positive");
  std::vector<element> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = static_cast<element>((i + j) % n);
  ConcreteGroup g = build_from_table(n, std::move(table));
  if (n > 1) g.set_generator("g", 1);
  return g;
}

/// D_2n with element r^i s^e stored at index i + n*e.
///
/// Rotation r is index 1 and reflection s is index n; they are registered
/// under the names given (defaults "x", "y").
inline ConcreteGroup dihedral_group(std::size_t n, const std::string& rotation = "x",
                                    const std::string& reflection = "y") {
  if (n < 1) throw InvalidInput("dihedral group needs n >= 1");
  const std::size_t order = 2 * n;
  std::vector<element> table(order * order);
  std::vector<std::string> labels(order);
  for (std::size_t a = 0; a < order; ++a) {
    const std::size_t i = a % n, e = a / n;
    labels[a] = rotation + "^" + std::to_string(i) + (e ? reflection : "");
    for (std::size_t b = 0; b < order; ++b) {
      const std::size_t j = b % n, f = b / n;
      // r^i s^e r^j s^f = r^(i + (-1)^e j) s^(e+f)
      const std::size_t k = e ? (i + n - j) % n : (i + j) % n;
      table[a * order + b] = static_cast<element>(k + n * ((e + f) % 2));
    }
  }
  ConcreteGroup g = build_from_table(order, std::move(table), std::move(labels));
  g.set_generator(rotation, n > 1 ? 1 : 0);
  g.set_generator(reflection, static_cast<element>(n));
  return g;
}

/// D_2n realised as symmetries of the n-gon acting on {0..n-1}, closed
/// under composition and re-indexed in discovery order. Independent of
/// dihedral_group's arithmetic.
inline ConcreteGroup permutation_dihedral(std::size_t n) {
  if (n < 3) throw InvalidInput("permutation dihedral group needs n >= 3");
  using perm = std::vector<std::size_t>;
  perm id(n), rot(n), ref(n);
  for (std::size_t i = 0; i < n; ++i) {
    id[i] = i;
    rot[i] = (i + 1) % n;
    ref[i] = (n - i) % n;
  }
  auto compose = [n](const perm& p, const perm& q) {  // apply p, then q
    perm out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = q[p[i]];
    return out;
  };
  std::vector<perm> elems{id};
  std::map<perm, element> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const perm* g : {&rot, &ref}) {
      perm p = compose(elems[i], *g);
      if (!index.count(p)) {
        index.emplace(p, static_cast<element>(elems.size()));
        elems.push_back(std::move(p));
      }
    }
  }
  const std::size_t order = elems.size();
  std::vector<element> table(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) table[a * order + b] = index.at(compose(elems[a], elems[b]));
  ConcreteGroup g = build_from_table(order, std::move(table));
  g.set_generator("r", index.at(rot));
  g.set_generator("s", index.at(ref));
  return g;
}

/// G1 x G2 with (a,b) stored at index a*|G2| + b.
inline ConcreteGroup direct_product(const ConcreteGroup& left, const ConcreteGroup& right) {
  const std::size_t n1 = left.order(), n2 = right.order(), order = n1 * n2;
  std::vector<element> table(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      const element l = left.mul(static_cast<element>(a / n2), static_cast<element>(b / n2));
      const element r = right.mul(static_cast<element>(a % n2), static_cast<element>(b % n2));
      table[a * order + b] = static_cast<element>(l * n2 + r);
    }
  return build_from_table(order, std::move(table));
}

}  // namespace dpx
