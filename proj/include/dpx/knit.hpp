#pragma once

// Exhaustive enumeration of exact products of D_2n and D_2m as knit
// (Zappa-Szep) products on the set H x K.
//
// An exact product X = HK is determined by the crossing function
// phi(k, h) = (h', k') with kh = h'k'. A seed fixes phi on the four
// generator pairs (z,x), (z,y), (w,x), (w,y); propagation fills the rest of
// phi with the row rule
//   phi(k, h1 h2) = (p u, v)   where (p,q) = phi(k,h1), (u,v) = phi(q,h2)
// and the column rule
//   phi(k1 k2, h) = (p, q v)   where (u,v) = phi(k2,h), (p,q) = phi(k1,u).
// h -> first(phi(k,h)) and k -> second(phi(k,h)) are bijections (they are
// the coset actions), so repeated values in a row or column are conflicts.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "dpx/exact_product.hpp"
#include "dpx/group.hpp"
#include "dpx/isomorphism.hpp"
#include "dpx/parameters.hpp"
#include "dpx/small_groups.hpp"

namespace dpx {

/// Canonical H = D_2n (x = 1, y = n) and K = D_2m (z = 1, w = m), with
/// r^i s^e at index i + degree*e.
struct KnitFactors {
  long m = 3, n = 3;
  ConcreteGroup H, K;
  element x = 1, y = 0, z = 1, w = 0;

  KnitFactors(long m_, long n_)
      : m(m_),
        n(n_),
        H(dihedral_group(static_cast<std::size_t>(n_), "x", "y")),
        K(dihedral_group(static_cast<std::size_t>(m_), "z", "w")),
        x(H.generator("x")),
        y(H.generator("y")),
        z(K.generator("z")),
        w(K.generator("w")) {}

  std::size_t h_order() const { return H.order(); }
  std::size_t k_order() const { return K.order(); }
  std::size_t pair_count() const { return H.order() * K.order(); }

  /// (h,k) <-> h*|K| + k
  element pair(element h, element k) const { return static_cast<element>(h * K.order() + k); }
  element pair_h(element v) const { return static_cast<element>(v / K.order()); }
  element pair_k(element v) const { return static_cast<element>(v % K.order()); }
};

/// Images of the four generator pairs, each encoded as a pair index.
struct CrossingSeed {
  element zx = 0, zy = 0, wx = 0, wy = 0;
  auto operator<=>(const CrossingSeed&) const = default;
};

inline std::uint64_t seed_space(long m, long n) {
  const std::uint64_t N = static_cast<std::uint64_t>(4 * m * n);
  return N * N * N * N;
}

inline std::uint64_t seed_index(const KnitFactors& f, const CrossingSeed& s) {
  const std::uint64_t N = f.pair_count();
  return ((std::uint64_t{s.zx} * N + s.zy) * N + s.wx) * N + s.wy;
}

inline CrossingSeed seed_from_index(const KnitFactors& f, std::uint64_t idx) {
  const std::uint64_t N = f.pair_count();
  CrossingSeed s;
  s.wy = static_cast<element>(idx % N);
  idx /= N;
  s.wx = static_cast<element>(idx % N);
  idx /= N;
  s.zy = static_cast<element>(idx % N);
  idx /= N;
  s.zx = static_cast<element>(idx);
  return s;
}

/// phi as a |K| x |H| array of pair indices, cell k*|H| + h.
struct CrossingTable {
  std::vector<element> cells;
  auto operator<=>(const CrossingTable&) const = default;
};

inline CrossingSeed seed_of(const KnitFactors& f, const CrossingTable& t) {
  const std::size_t nh = f.h_order();
  return {t.cells[f.z * nh + f.x], t.cells[f.z * nh + f.y], t.cells[f.w * nh + f.x],
          t.cells[f.w * nh + f.y]};
}

namespace detail {

/// Worklist propagation state. Copyable so branching can snapshot it.
class CrossingPropagator {
 public:
  static constexpr std::int32_t unknown = -1;

  explicit CrossingPropagator(const KnitFactors& f)
      : f_(&f),
        nh_(f.h_order()),
        nk_(f.k_order()),
        cells_(nh_ * nk_, unknown),
        row_used_(nk_ * nh_, 0),
        col_used_(nh_ * nk_, 0),
        row_known_(nk_, 0),
        col_known_(nh_, 0) {
    hmul_.resize(nh_ * nh_);
    kmul_.resize(nk_ * nk_);
    for (element a = 0; a < nh_; ++a)
      for (element b = 0; b < nh_; ++b) hmul_[a * nh_ + b] = f.H.mul(a, b);
    for (element a = 0; a < nk_; ++a)
      for (element b = 0; b < nk_; ++b) kmul_[a * nk_ + b] = f.K.mul(a, b);
    hgen_ = {f.x, f.y};
    kgen_ = {f.z, f.w};
  }

  void reset() {
    std::fill(cells_.begin(), cells_.end(), unknown);
    std::fill(row_used_.begin(), row_used_.end(), 0);
    std::fill(col_used_.begin(), col_used_.end(), 0);
    std::fill(row_known_.begin(), row_known_.end(), 0);
    std::fill(col_known_.begin(), col_known_.end(), 0);
    known_ = 0;
    work_.clear();
  }

  /// Identity row and column plus the seed. False on an immediate conflict.
  bool seed(const CrossingSeed& s) {
    reset();
    const element eh = f_->H.identity(), ek = f_->K.identity();
    for (element h = 0; h < nh_; ++h)
      if (!assign(ek, h, f_->pair(h, ek))) return false;
    for (element k = 0; k < nk_; ++k)
      if (!assign(k, eh, f_->pair(eh, k))) return false;
    return assign(f_->z, f_->x, s.zx) && assign(f_->z, f_->y, s.zy) &&
           assign(f_->w, f_->x, s.wx) && assign(f_->w, f_->y, s.wy);
  }

  /// Runs the worklist to a fixpoint. False on conflict.
  bool propagate() {
    while (!work_.empty()) {
      const std::size_t cell = work_.back();
      work_.pop_back();
      if (!process(cell)) return false;
    }
    return true;
  }

  bool assign(element k, element h, element value) {
    const std::size_t cell = k * nh_ + h;
    if (cells_[cell] != unknown) return cells_[cell] == static_cast<std::int32_t>(value);
    const element p = f_->pair_h(value), q = f_->pair_k(value);
    std::uint8_t& ru = row_used_[k * nh_ + p];
    std::uint8_t& cu = col_used_[h * nk_ + q];
    if (ru || cu) return false;
    ru = cu = 1;
    cells_[cell] = static_cast<std::int32_t>(value);
    ++row_known_[k];
    ++col_known_[h];
    ++known_;
    work_.push_back(cell);
    return true;
  }

  bool complete() const { return known_ == cells_.size(); }
  std::int32_t cell(element k, element h) const { return cells_[k * nh_ + h]; }

  /// The unknown cell with the fewest values still free in its row and column.
  std::optional<std::size_t> most_constrained_unknown() const {
    std::optional<std::size_t> best;
    std::size_t best_count = 0;
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      if (cells_[c] != unknown) continue;
      const std::size_t count = (nh_ - row_known_[c / nh_]) * (nk_ - col_known_[c % nh_]);
      if (!best || count < best_count) {
        best = c;
        best_count = count;
      }
    }
    return best;
  }

  /// Values that keep row k and column h injective.
  std::vector<element> free_values(element k, element h) const {
    std::vector<element> out;
    for (element p = 0; p < nh_; ++p) {
      if (row_used_[k * nh_ + p]) continue;
      for (element q = 0; q < nk_; ++q)
        if (!col_used_[h * nk_ + q]) out.push_back(f_->pair(p, q));
    }
    return out;
  }

  CrossingTable table() const { return {std::vector<element>(cells_.begin(), cells_.end())}; }

  /// Set the LIFO/FIFO discipline of the worklist (propagation results do
  /// not depend on it; exposed for testing that claim).
  void set_fifo(bool fifo) { fifo_ = fifo; }

 private:
  bool process(std::size_t cell) {
    const element k = static_cast<element>(cell / nh_), h = static_cast<element>(cell % nh_);
    const element value = static_cast<element>(cells_[cell]);
    const element p = f_->pair_h(value), q = f_->pair_k(value);

    // row rule, this cell as phi(k, h1)
    for (element g : hgen_) {
      const std::int32_t v = cells_[q * nh_ + g];
      if (v == unknown) continue;
      const element u = f_->pair_h(static_cast<element>(v)), vq = f_->pair_k(static_cast<element>(v));
      if (!assign(k, hmul(h, g), f_->pair(hmul(p, u), vq))) return false;
    }
    // row rule, this cell as phi(q', h2) with h2 a generator
    if (h == hgen_[0] || h == hgen_[1]) {
      for (std::size_t c = 0; c < cells_.size(); ++c) {
        const std::int32_t v = cells_[c];
        if (v == unknown || f_->pair_k(static_cast<element>(v)) != k) continue;
        const element k2 = static_cast<element>(c / nh_), h1 = static_cast<element>(c % nh_);
        const element p2 = f_->pair_h(static_cast<element>(v));
        if (!assign(k2, hmul(h1, h), f_->pair(hmul(p2, p), q))) return false;
      }
    }
    // column rule, this cell as phi(k2, h)
    for (element g : kgen_) {
      const std::int32_t v = cells_[g * nh_ + p];
      if (v == unknown) continue;
      const element p2 = f_->pair_h(static_cast<element>(v)), q2 = f_->pair_k(static_cast<element>(v));
      if (!assign(kmul(g, k), h, f_->pair(p2, kmul(q2, q)))) return false;
    }
    // column rule, this cell as phi(k1, u) with k1 a generator
    if (k == kgen_[0] || k == kgen_[1]) {
      for (std::size_t c = 0; c < cells_.size(); ++c) {
        const std::int32_t v = cells_[c];
        if (v == unknown || f_->pair_h(static_cast<element>(v)) != h) continue;
        const element k2 = static_cast<element>(c / nh_), h2 = static_cast<element>(c % nh_);
        const element v2 = f_->pair_k(static_cast<element>(v));
        if (!assign(kmul(k, k2), h2, f_->pair(p, kmul(q, v2)))) return false;
      }
    }
    return true;
  }

  element hmul(element a, element b) const { return hmul_[a * nh_ + b]; }
  element kmul(element a, element b) const { return kmul_[a * nk_ + b]; }

 public:
  // worklist pop honouring the discipline
  bool propagate_with_discipline() {
    if (!fifo_) return propagate();
    std::size_t head = 0;
    while (head < work_.size()) {
      const std::size_t cell = work_[head++];
      if (!process(cell)) return false;
    }
    work_.clear();
    return true;
  }

 private:
  const KnitFactors* f_;
  std::size_t nh_, nk_;
  std::vector<std::int32_t> cells_;
  std::vector<std::uint8_t> row_used_, col_used_;
  std::vector<std::size_t> row_known_, col_known_;
  std::vector<element> hmul_, kmul_;
  std::vector<element> hgen_, kgen_;
  std::vector<std::size_t> work_;
  std::size_t known_ = 0;
  bool fifo_ = false;
};

/// All completions of a partially propagated state, branching on the most
/// constrained unknown cell whenever the rules stall.
inline void complete_by_branching(const KnitFactors& f, CrossingPropagator state,
                                  std::vector<CrossingTable>& out) {
  if (!state.propagate_with_discipline()) return;
  const auto cell = state.most_constrained_unknown();
  if (!cell) {
    out.push_back(state.table());
    return;
  }
  const element k = static_cast<element>(*cell / f.h_order());
  const element h = static_cast<element>(*cell % f.h_order());
  for (element v : state.free_values(k, h)) {
    CrossingPropagator branch = state;
    if (branch.assign(k, h, v)) complete_by_branching(f, std::move(branch), out);
  }
}

}  // namespace detail

enum class PropagationOutcome { complete, conflict, stalled };

struct PropagationResult {
  PropagationOutcome outcome = PropagationOutcome::conflict;
  std::optional<CrossingTable> table;
};

/// Extends a seed to a total crossing table, or reports why it cannot.
/// `fifo` selects the worklist discipline; the outcome is the same either way.
inline PropagationResult propagate(const KnitFactors& f, const CrossingSeed& seed, bool fifo = false) {
  detail::CrossingPropagator state(f);
  state.set_fifo(fifo);
  PropagationResult res;
  if (!state.seed(seed) || !state.propagate_with_discipline()) return res;
  if (!state.complete()) {
    res.outcome = PropagationOutcome::stalled;
    return res;
  }
  res.outcome = PropagationOutcome::complete;
  res.table = state.table();
  return res;
}

/// Every total crossing table extending `seed` that the rules allow.
/// Equals the single propagate() result unless propagation stalls.
inline std::vector<CrossingTable> complete_seed(const KnitFactors& f, const CrossingSeed& seed) {
  detail::CrossingPropagator state(f);
  std::vector<CrossingTable> out;
  if (!state.seed(seed)) return out;
  detail::complete_by_branching(f, std::move(state), out);
  return out;
}

/// Row and column rules on every triple: the matched-pair axioms. Cheap
/// pre-filter before full validation of the induced magma.
inline bool satisfies_matched_pair_axioms(const KnitFactors& f, const CrossingTable& t) {
  const std::size_t nh = f.h_order(), nk = f.k_order();
  auto at = [&](element k, element h) { return t.cells[k * nh + h]; };
  for (element k = 0; k < nk; ++k)
    for (element h1 = 0; h1 < nh; ++h1) {
      const element pq = at(k, h1);
      const element p = f.pair_h(pq), q = f.pair_k(pq);
      for (element h2 = 0; h2 < nh; ++h2) {
        const element uv = at(q, h2);
        if (at(k, f.H.mul(h1, h2)) != f.pair(f.H.mul(p, f.pair_h(uv)), f.pair_k(uv))) return false;
      }
    }
  for (element h = 0; h < nh; ++h)
    for (element k2 = 0; k2 < nk; ++k2) {
      const element uv = at(k2, h);
      const element u = f.pair_h(uv), v = f.pair_k(uv);
      for (element k1 = 0; k1 < nk; ++k1) {
        const element pq = at(k1, u);
        if (at(f.K.mul(k1, k2), h) != f.pair(f.pair_h(pq), f.K.mul(f.pair_k(pq), v))) return false;
      }
    }
  return true;
}

struct OracleGroup {
  ConcreteGroup group;  // on H x K, (h,k) at index h*|K| + k
  Subgroup H_embedded, K_embedded;
  CrossingSeed source_seed;
  std::uint64_t seed_index = 0;
  CrossingTable table;
};

/// Product (h1,k1)(h2,k2) = (h1 p, q k2) with (p,q) = phi(k1,h2), as a raw table.
inline std::vector<element> knit_product_table(const KnitFactors& f, const CrossingTable& t) {
  const std::size_t N = f.pair_count(), nh = f.h_order();
  std::vector<element> table(N * N);
  for (element a = 0; a < N; ++a) {
    const element h1 = f.pair_h(a), k1 = f.pair_k(a);
    for (element b = 0; b < N; ++b) {
      const element h2 = f.pair_h(b), k2 = f.pair_k(b);
      const element pq = t.cells[k1 * nh + h2];
      table[a * N + b] = f.pair(f.H.mul(h1, f.pair_h(pq)), f.K.mul(f.pair_k(pq), k2));
    }
  }
  return table;
}

/// The induced group on H x K, or nullopt if the magma is not a group.
inline std::optional<OracleGroup> build_oracle_group(const KnitFactors& f, const CrossingTable& t) {
  OracleGroup og;
  try {
    og.group = build_from_table(f.pair_count(), knit_product_table(f, t));
  } catch (const NotAGroup&) {
    return std::nullopt;
  }
  std::vector<element> hs, ks;
  for (element h = 0; h < f.h_order(); ++h) hs.push_back(f.pair(h, f.K.identity()));
  for (element k = 0; k < f.k_order(); ++k) ks.push_back(f.pair(f.H.identity(), k));
  og.H_embedded = Subgroup(og.group.order(), hs, {f.pair(f.x, 0), f.pair(f.y, 0)});
  og.K_embedded = Subgroup(og.group.order(), ks, {f.pair(0, f.z), f.pair(0, f.w)});
  og.table = t;
  og.source_seed = seed_of(f, t);
  og.seed_index = seed_index(f, og.source_seed);
  return og;
}

struct SweepOptions {
  unsigned workers = 1;
  std::uint64_t seed_budget = 200'000'000;
};

struct SweepStats {
  std::uint64_t seeds_total = 0;
  std::uint64_t propagation_rejected = 0;  // conflicts, including every branch of stalled seeds
  std::uint64_t stalled_seeds = 0;         // seeds that needed branching
  std::uint64_t axiom_rejected = 0;        // total tables whose magma is not a group
  std::uint64_t groups_accepted = 0;
  auto operator<=>(const SweepStats&) const = default;
};

struct SweepResult {
  SweepStats stats;
  std::vector<OracleGroup> groups;  // sorted by (seed index, table)
};

/// All exact products of D_2n and D_2m on H x K. Output order is the seed
/// order and does not depend on the worker count.
inline SweepResult enumerate_exact_products(long m, long n, SweepOptions options = {}) {
  validate_dimensions(m, n);
  const std::uint64_t total = seed_space(m, n);
  if (total > options.seed_budget) throw BudgetExceeded(total, options.seed_budget);
  const KnitFactors f(m, n);

  const unsigned workers = std::max(1u, options.workers);
  struct Chunk {
    SweepStats stats;
    std::vector<OracleGroup> groups;
  };
  std::vector<Chunk> chunks(workers);

  auto run_range = [&](unsigned w) {
    const std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
    Chunk& out = chunks[w];
    detail::CrossingPropagator state(f);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      const CrossingSeed seed = seed_from_index(f, idx);
      ++out.stats.seeds_total;
      std::vector<CrossingTable> tables;
      if (!state.seed(seed) || !state.propagate()) {
        ++out.stats.propagation_rejected;
        continue;
      }
      if (state.complete()) {
        tables.push_back(state.table());
      } else {
        ++out.stats.stalled_seeds;
        detail::complete_by_branching(f, state, tables);
        if (tables.empty()) {
          ++out.stats.propagation_rejected;
          continue;
        }
        std::sort(tables.begin(), tables.end());
      }
      for (const CrossingTable& t : tables) {
        std::optional<OracleGroup> og;
        if (satisfies_matched_pair_axioms(f, t)) og = build_oracle_group(f, t);
        if (!og) {
          ++out.stats.axiom_rejected;
          continue;
        }
        ++out.stats.groups_accepted;
        out.groups.push_back(std::move(*og));
      }
    }
  };

  if (workers == 1) {
    run_range(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_range, w);
    for (auto& t : pool) t.join();
  }

  SweepResult result;
  for (auto& c : chunks) {
    result.stats.seeds_total += c.stats.seeds_total;
    result.stats.propagation_rejected += c.stats.propagation_rejected;
    result.stats.stalled_seeds += c.stats.stalled_seeds;
    result.stats.axiom_rejected += c.stats.axiom_rejected;
    result.stats.groups_accepted += c.stats.groups_accepted;
    for (auto& g : c.groups) result.groups.push_back(std::move(g));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Matching oracle groups against the presentation.

struct TheoremMatch {
  ParameterTuple tuple;
  element x = 0, y = 0, z = 0, w = 0;
};

/// Searches generator quadruples x,y in H and z,w in K for which every
/// relation of the presentation holds with admissible exponents. m1 and n1
/// come from the cores of <z> and <x>; a,b,c,r,s,t are read off the three
/// commutators by discrete log over x^i z^j.
inline std::optional<TheoremMatch> match_to_theorem(const ConcreteGroup& X, const Subgroup& H,
                                                    const Subgroup& K, long m, long n) {
  const DihedralVerdict vh = recognize_dihedral(X, H);
  const DihedralVerdict vk = recognize_dihedral(X, K);
  if (vh.kind != DihedralVerdict::Kind::dihedral || vk.kind != DihedralVerdict::Kind::dihedral)
    return std::nullopt;
  const Subgroup rot_h = closure(X, {vh.rotation});
  const Subgroup rot_k = closure(X, {vk.rotation});
  if (rot_h.order() != static_cast<std::size_t>(n) || rot_k.order() != static_cast<std::size_t>(m))
    return std::nullopt;

  auto split = [&](const Subgroup& whole, const Subgroup& rot, std::size_t degree) {
    std::pair<std::vector<element>, std::vector<element>> out;
    for (element g : whole.members()) {
      if (!rot.contains(g)) out.second.push_back(g);
      else if (element_order(X, g) == degree) out.first.push_back(g);
    }
    return out;
  };
  const auto [xs, ys] = split(H, rot_h, static_cast<std::size_t>(n));
  const auto [zs, ws] = split(K, rot_k, static_cast<std::size_t>(m));

  const long n1 = n / static_cast<long>(core(X, rot_h).order());
  const long m1 = m / static_cast<long>(core(X, rot_k).order());
  const long p = n / n1, q = m / m1;

  for (element x : xs) {
    for (element z : zs) {
      if (X.commutator(x, z) != X.identity()) continue;
      // discrete log table for x^i z^j
      std::vector<std::int64_t> log(X.order(), -1);
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j) log[X.mul(X.pow(x, i), X.pow(z, j))] = i * m + j;
      auto read = [&](element g, long& x_exp, long& z_exp) {
        const std::int64_t l = log[g];
        if (l < 0) return false;
        const long i = static_cast<long>(l / m), j = static_cast<long>(l % m);
        if (i % n1 != 0 || j % m1 != 0) return false;
        x_exp = (i / n1) % p;
        z_exp = (j / m1) % q;
        return true;
      };
      for (element y : ys) {
        for (element w : ws) {
          ParameterTuple t{m, n, m1, n1, 0, 0, 0, 0, 0, 0};
          if (!read(X.commutator(x, w), t.s, t.b)) continue;
          if (!read(X.commutator(z, y), t.r, t.a)) continue;
          if (!read(X.commutator(y, w), t.t, t.c)) continue;
          if (!presentation_checks(X, x, y, z, w, t).all_passed()) continue;
          if (!check_conditions(t).passed) continue;
          return TheoremMatch{t, x, y, z, w};
        }
      }
    }
  }
  return std::nullopt;
}

inline std::optional<TheoremMatch> match_to_theorem(const OracleGroup& g, long m, long n) {
  return match_to_theorem(g.group, g.H_embedded, g.K_embedded, m, n);
}

// ---------------------------------------------------------------------------
// Factorization classes of crossing tables.

/// Automorphisms of the canonical factors, used to canonicalise tables.
struct FactorAutomorphisms {
  std::vector<Isomorphism> of_h, of_k;
  explicit FactorAutomorphisms(const KnitFactors& f)
      : of_h(automorphisms(f.H)), of_k(automorphisms(f.K)) {}
};

/// Lexicographically least image of `t` under Aut(H) x Aut(K). Two knit
/// products on H x K are isomorphic as factorizations exactly when their
/// canonical tables agree.
inline CrossingTable canonical_table(const KnitFactors& f, const FactorAutomorphisms& autos,
                                     const CrossingTable& t) {
  const std::size_t nh = f.h_order();
  CrossingTable best{}, cur{std::vector<element>(t.cells.size())};
  bool first = true;
  for (const auto& alpha : autos.of_h)
    for (const auto& beta : autos.of_k) {
      for (std::size_t c = 0; c < t.cells.size(); ++c) {
        const element k = static_cast<element>(c / nh), h = static_cast<element>(c % nh);
        const element v = t.cells[c];
        cur.cells[beta[k] * nh + alpha[h]] = f.pair(alpha[f.pair_h(v)], beta[f.pair_k(v)]);
      }
      if (first || cur < best) {
        best = cur;
        first = false;
      }
    }
  return best;
}

/// The crossing table of an exact product X = HK whose factors are
/// identified with the canonical ones through the generator quadruple:
/// x^i y^e <-> canonical i + n e, z^j w^d <-> canonical j + m d.
inline CrossingTable crossing_table_of(const KnitFactors& f, const ConcreteGroup& X, element x,
                                       element y, element z, element w) {
  const std::size_t nh = f.h_order(), nk = f.k_order();
  std::vector<element> h_elem(nh), k_elem(nk);
  std::vector<std::int64_t> h_index(X.order(), -1), k_index(X.order(), -1);
  for (long e = 0; e < 2; ++e)
    for (long i = 0; i < f.n; ++i) {
      const element can = static_cast<element>(i + f.n * e);
      h_elem[can] = X.mul(X.pow(x, i), X.pow(y, e));
      h_index[h_elem[can]] = can;
    }
  for (long d = 0; d < 2; ++d)
    for (long j = 0; j < f.m; ++j) {
      const element can = static_cast<element>(j + f.m * d);
      k_elem[can] = X.mul(X.pow(z, j), X.pow(w, d));
      k_index[k_elem[can]] = can;
    }
  CrossingTable t{std::vector<element>(nh * nk)};
  for (element k = 0; k < nk; ++k)
    for (element h = 0; h < nh; ++h) {
      const element prod = X.mul(k_elem[k], h_elem[h]);
      bool found = false;
      for (element hp = 0; hp < nh && !found; ++hp) {
        const std::int64_t kp = k_index[X.mul(X.inverse(h_elem[hp]), prod)];
        if (kp >= 0) {
          t.cells[k * nh + h] = f.pair(hp, static_cast<element>(kp));
          found = true;
        }
      }
      if (!found) throw InvalidInput("group is not the product HK");
    }
  return t;
}

inline CrossingTable crossing_table_of(const KnitFactors& f, const ExactProductGroup& g) {
  return crossing_table_of(f, g.group, g.x, g.y, g.z, g.w);
}

// ---------------------------------------------------------------------------
// Cross-validation against the presentation.

struct CrossReport {
  long m = 0, n = 0;
  SweepStats sweep;
  std::size_t classes_as_factorizations = 0;  // oracle side
  std::size_t completeness_failures = 0;      // oracle groups with no theorem match
  std::size_t soundness_failures = 0;         // admissible tuples with no oracle group
  std::size_t theorem_tuples = 0;
  std::size_t theorem_factorization_classes = 0;
  std::vector<std::size_t> class_sizes;       // raw oracle groups per class
  std::vector<std::int64_t> tuple_class;      // oracle class of each tuple, -1 if uncovered
  std::vector<ParameterTuple> tuples;

  std::uint64_t duplicates() const { return sweep.groups_accepted - classes_as_factorizations; }
  bool passed() const { return completeness_failures == 0 && soundness_failures == 0; }
  auto operator<=>(const CrossReport&) const = default;
};

struct CrossOptions {
  SweepOptions sweep;
  IsoOptions iso;
};

/// Sweeps the oracle for (m,n), matches every oracle group to the
/// presentation, and checks every admissible tuple is realised.
inline CrossReport cross_validate(long m, long n, CrossOptions options = {}) {
  CrossReport rep;
  rep.m = m;
  rep.n = n;
  const SweepResult sweep = enumerate_exact_products(m, n, options.sweep);
  rep.sweep = sweep.stats;
  const KnitFactors f(m, n);
  const FactorAutomorphisms autos(f);

  // oracle classes by canonical table, numbered by first occurrence
  std::map<CrossingTable, std::size_t> class_of_key;
  std::vector<std::size_t> rep_group;
  std::vector<std::size_t> group_class(sweep.groups.size());
  for (std::size_t i = 0; i < sweep.groups.size(); ++i) {
    const CrossingTable key = canonical_table(f, autos, sweep.groups[i].table);
    auto [it, inserted] = class_of_key.emplace(key, rep_group.size());
    if (inserted) {
      rep_group.push_back(i);
      rep.class_sizes.push_back(0);
    }
    group_class[i] = it->second;
    ++rep.class_sizes[it->second];
  }
  rep.classes_as_factorizations = rep_group.size();

  // completeness: every oracle group has a presentation; class
  // representatives are additionally checked isomorphic to the constructed group
  for (std::size_t i = 0; i < sweep.groups.size(); ++i) {
    const auto match = match_to_theorem(sweep.groups[i], m, n);
    bool ok = match.has_value() &&
              sweep.groups[i].group.commutator(match->x, match->z) == sweep.groups[i].group.identity();
    if (ok && rep_group[group_class[i]] == i) {
      const ExactProductGroup built = construct_group(match->tuple);
      ok = isomorphic_as_factorization(sweep.groups[i].group, sweep.groups[i].H_embedded,
                                       sweep.groups[i].K_embedded, built.group, built.H, built.K,
                                       options.iso)
               .has_value();
    }
    if (!ok) ++rep.completeness_failures;
  }

  // soundness: each tuple's group appears in the sweep
  rep.tuples = admissible_tuples(m, n);
  rep.theorem_tuples = rep.tuples.size();
  for (const ParameterTuple& t : rep.tuples) {
    const ExactProductGroup g = construct_group(t);
    const CrossingTable table = crossing_table_of(f, g);
    const std::uint64_t idx = seed_index(f, seed_of(f, table));
    auto lo = std::lower_bound(sweep.groups.begin(), sweep.groups.end(), idx,
                               [](const OracleGroup& og, std::uint64_t v) { return og.seed_index < v; });
    std::int64_t cls = -1;
    for (auto it = lo; it != sweep.groups.end() && it->seed_index == idx; ++it) {
      if (it->table != table) continue;
      if (isomorphic_as_factorization(g.group, g.H, g.K, it->group, it->H_embedded, it->K_embedded,
                                      options.iso))
        cls = static_cast<std::int64_t>(group_class[static_cast<std::size_t>(it - sweep.groups.begin())]);
      break;
    }
    if (cls < 0) ++rep.soundness_failures;
    rep.tuple_class.push_back(cls);
  }
  std::vector<std::int64_t> hit = rep.tuple_class;
  std::sort(hit.begin(), hit.end());
  hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
  hit.erase(std::remove(hit.begin(), hit.end(), -1), hit.end());
  rep.theorem_factorization_classes = hit.size();
  return rep;
}

}  // namespace dpx
