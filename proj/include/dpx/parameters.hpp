#pragma once

// Parameter tuples (m, n, m1, n1, a, b, c, r, s, t) for exact products of
// D_2n = <x,y> and D_2m = <z,w>, and the four admissibility conditions.

#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dpx/errors.hpp"

namespace dpx {

struct ParameterTuple {
  long m = 3, n = 3;
  long m1 = 1, n1 = 1;
  long a = 0, b = 0, c = 0;  // residues mod m/m1
  long r = 0, s = 0, t = 0;  // residues mod n/n1

  long m_quotient() const { return m / m1; }
  long n_quotient() const { return n / n1; }

  auto operator<=>(const ParameterTuple&) const = default;
};

/// Throws InvalidTuple if the tuple breaks its type invariants.
inline void validate(const ParameterTuple& t) {
  if (t.m < 3 || t.m % 2 == 0) throw InvalidTuple("m must be odd and >= 3");
  if (t.n < 3 || t.n % 2 == 0) throw InvalidTuple("n must be odd and >= 3");
  if (t.m1 < 1 || t.m % t.m1 != 0) throw InvalidTuple("m1 must divide m");
  if (t.n1 < 1 || t.n % t.n1 != 0) throw InvalidTuple("n1 must divide n");
  const long q = t.m_quotient(), p = t.n_quotient();
  for (auto [name, v] : {std::pair{"a", t.a}, {"b", t.b}, {"c", t.c}})
    if (v < 0 || v >= q) throw InvalidTuple(std::string(name) + " must lie in [0, m/m1)");
  for (auto [name, v] : {std::pair{"r", t.r}, {"s", t.s}, {"t", t.t}})
    if (v < 0 || v >= p) throw InvalidTuple(std::string(name) + " must lie in [0, n/n1)");
}

inline void validate_dimensions(long m, long n) {
  if (m < 3 || m % 2 == 0) throw InvalidInput("m must be odd and >= 3");
  if (n < 3 || n % 2 == 0) throw InvalidInput("n must be odd and >= 3");
}

inline long mod(long v, long q) {
  long r = v % q;
  return r < 0 ? r + q : r;
}

/// Additive order of v in Z_q.
inline long additive_order(long v, long q) { return q / std::gcd(mod(v, q), q); }

/// The biconditional "v*k = 0 (mod q)  <=>  k = 0 (mod period)" decided by
/// a literal scan over one joint period. Returns the first violating k.
inline std::optional<long> order_condition_witness(long v, long q, long period) {
  for (long k = 0; k < q * period; ++k) {
    const bool lhs = mod(v * k, q) == 0;
    const bool rhs = k % period == 0;
    if (lhs != rhs) return k;
  }
  return std::nullopt;
}

/// Same biconditional decided through the additive order of v.
inline bool order_condition_holds(long v, long q, long period) {
  return additive_order(v, q) == period;
}

struct ConditionReport {
  bool passed = false;
  std::array<bool, 4> per_condition{};  // (a), (b), (c), (d)
  std::optional<long> witness_c;        // violating k for (c)
  std::optional<long> witness_d;        // violating k for (d)

  bool condition(char which) const { return per_condition.at(static_cast<std::size_t>(which - 'a')); }
};

inline ConditionReport check_conditions(const ParameterTuple& t) {
  validate(t);
  const long q = t.m_quotient(), p = t.n_quotient();
  ConditionReport rep;
  const long ua = 2 + t.a * t.m1;
  rep.per_condition[0] = mod(t.a * ua, q) == 0 && mod(t.b * ua, q) == 0 && mod(t.c * ua, q) == 0;
  const long us = 2 + t.s * t.n1;
  rep.per_condition[1] = mod(t.r * us, p) == 0 && mod(t.s * us, p) == 0 && mod(t.t * us, p) == 0;
  rep.per_condition[2] = order_condition_holds(t.b, q, t.n1);
  rep.per_condition[3] = order_condition_holds(t.r, p, t.m1);
  if (!rep.per_condition[2]) rep.witness_c = order_condition_witness(t.b, q, t.n1);
  if (!rep.per_condition[3]) rep.witness_d = order_condition_witness(t.r, p, t.m1);
  rep.passed = rep.per_condition[0] && rep.per_condition[1] && rep.per_condition[2] &&
               rep.per_condition[3];
  return rep;
}

/// e.g. "condition (c) (witness k=1)"; empty if every condition passes.
inline std::string describe_failures(const ConditionReport& rep) {
  std::string out;
  for (char c : {'a', 'b', 'c', 'd'}) {
    if (rep.condition(c)) continue;
    if (!out.empty()) out += ", ";
    out += std::string("condition (") + c + ")";
    const auto& witness = c == 'c' ? rep.witness_c : rep.witness_d;
    if ((c == 'c' || c == 'd') && witness) out += " (witness k=" + std::to_string(*witness) + ")";
  }
  return out;
}

inline std::vector<long> divisors(long v) {
  std::vector<long> out;
  for (long d = 1; d <= v; ++d)
    if (v % d == 0) out.push_back(d);
  return out;
}

/// All admissible tuples for (m, n), ordered lexicographically by
/// (m1, n1, a, b, c, r, s, t).
inline std::vector<ParameterTuple> admissible_tuples(long m, long n) {
  validate_dimensions(m, n);
  std::vector<ParameterTuple> out;
  for (long m1 : divisors(m)) {
    for (long n1 : divisors(n)) {
      const long q = m / m1, p = n / n1;
      // (a),(c) involve only a,b,c; (b),(d) only r,s,t.
      std::vector<std::array<long, 3>> abc, rst;
      for (long a = 0; a < q; ++a)
        for (long b = 0; b < q; ++b)
          for (long c = 0; c < q; ++c) {
            const long ua = 2 + a * m1;
            if (mod(a * ua, q) == 0 && mod(b * ua, q) == 0 && mod(c * ua, q) == 0 &&
                order_condition_holds(b, q, n1))
              abc.push_back({a, b, c});
          }
      for (long r = 0; r < p; ++r)
        for (long s = 0; s < p; ++s)
          for (long t = 0; t < p; ++t) {
            const long us = 2 + s * n1;
            if (mod(r * us, p) == 0 && mod(s * us, p) == 0 && mod(t * us, p) == 0 &&
                order_condition_holds(r, p, m1))
              rst.push_back({r, s, t});
          }
      for (const auto& x : abc)
        for (const auto& y : rst) {
          ParameterTuple tup{m, n, m1, n1, x[0], x[1], x[2], y[0], y[1], y[2]};
          // n1 | m/m1 and m1 | n/n1 follow from (c) and (d)
          if (q % n1 != 0 || p % m1 != 0)
            throw std::logic_error("order reformulation violated divisibility");
          out.push_back(tup);
        }
    }
  }
  return out;
}

/// The tuple describing the same group with the roles of (H,x,y,n) and
/// (K,z,w,m) exchanged.
inline ParameterTuple swap_roles(const ParameterTuple& t) {
  ParameterTuple out;
  out.m = t.n;
  out.n = t.m;
  out.m1 = t.n1;
  out.n1 = t.m1;
  out.a = t.s;
  out.b = t.r;
  out.c = t.t;
  out.r = t.b;
  out.s = t.a;
  out.t = t.c;
  return out;
}

inline std::string to_string(const ParameterTuple& t) {
  return "m=" + std::to_string(t.m) + ",n=" + std::to_string(t.n) + ",m1=" + std::to_string(t.m1) +
         ",n1=" + std::to_string(t.n1) + ",a=" + std::to_string(t.a) + ",b=" + std::to_string(t.b) +
         ",c=" + std::to_string(t.c) + ",r=" + std::to_string(t.r) + ",s=" + std::to_string(t.s) +
         ",t=" + std::to_string(t.t);
}

inline void to_json(nlohmann::ordered_json& j, const ParameterTuple& t) {
  j = nlohmann::ordered_json{{"m", t.m},   {"n", t.n}, {"m1", t.m1}, {"n1", t.n1}, {"a", t.a},
                             {"b", t.b},   {"c", t.c}, {"r", t.r},   {"s", t.s},   {"t", t.t}};
}

inline void from_json(const nlohmann::ordered_json& j, ParameterTuple& t) {
  t.m = j.at("m").get<long>();
  t.n = j.at("n").get<long>();
  t.m1 = j.at("m1").get<long>();
  t.n1 = j.at("n1").get<long>();
  t.a = j.value("a", 0L);
  t.b = j.value("b", 0L);
  t.c = j.value("c", 0L);
  t.r = j.value("r", 0L);
  t.s = j.value("s", 0L);
  t.t = j.value("t", 0L);
}

}  // namespace dpx
