#pragma once

// The group X = <x,y,z,w> of order 4mn attached to an admissible tuple,
// built on normal forms x^i z^j y^e w^d and then validated as a group.
//
// With A = <x> x <z> (abelian since [x,z] = 1) the relations give
//   y acts on A:  x -> x^-1,           z -> x^(r n1) z^(1 + a m1)
//   w acts on A:  x -> x^(1 + s n1) z^(b m1),   z -> z^-1
//   y^w = y x^(t n1) z^(c m1)
// so X = (A : <y>) : <w>. Multiplication moves w^d past a y^e using the
// w-action on A and y^w, then moves y^e past an A element.

#include <string>
#include <utility>
#include <vector>

#include "dpx/group.hpp"
#include "dpx/parameters.hpp"

namespace dpx {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Named pass/fail entries, in evaluation order.
struct CheckList {
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }
  void append(const CheckList& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

struct ExactProductGroup {
  ConcreteGroup group;
  ParameterTuple tuple;
  element x = 0, y = 0, z = 0, w = 0;
  Subgroup H, K;
};

/// Index of x^i z^j y^e w^d.
inline element normal_form_index(const ParameterTuple& t, long i, long j, int e, int d) {
  return static_cast<element>(((mod(i, t.n) * t.m + mod(j, t.m)) * 2 + e) * 2 + d);
}

namespace detail {

struct NormalForm {
  long i, j;
  int e, d;
};

class NormalFormArithmetic {
 public:
  explicit NormalFormArithmetic(const ParameterTuple& t)
      : t_(t), u_(1 + t.a * t.m1), S_(1 + t.s * t.n1) {
    y_shift_ = act_y({t.t * t.n1, t.c * t.m1});
  }

  NormalForm decode(element g) const {
    const long v = g;
    return {v / 4 / t_.m, (v / 4) % t_.m, static_cast<int>((v / 2) % 2), static_cast<int>(v % 2)};
  }

  element multiply(element g, element h) const {
    const NormalForm p = decode(g), q = decode(h);
    std::pair<long, long> moved{q.i, q.j};
    if (p.d) {
      moved = act_w(moved);
      if (q.e) moved = add(moved, y_shift_);
    }
    if (p.e) moved = act_y(moved);
    const auto [i, j] = add({p.i, p.j}, moved);
    return normal_form_index(t_, i, j, p.e ^ q.e, p.d ^ q.d);
  }

 private:
  std::pair<long, long> add(std::pair<long, long> a, std::pair<long, long> b) const {
    return {mod(a.first + b.first, t_.n), mod(a.second + b.second, t_.m)};
  }
  // y^-1 (x^i z^j) y
  std::pair<long, long> act_y(std::pair<long, long> a) const {
    const auto [i, j] = a;
    return {mod(-i + j * t_.r * t_.n1, t_.n), mod(j * u_, t_.m)};
  }
  // w^-1 (x^i z^j) w
  std::pair<long, long> act_w(std::pair<long, long> a) const {
    const auto [i, j] = a;
    return {mod(i * S_, t_.n), mod(i * t_.b * t_.m1 - j, t_.m)};
  }

  ParameterTuple t_;
  long u_, S_;
  std::pair<long, long> y_shift_;  // y^-1 (x^(t n1) z^(c m1)) y
};

inline std::string normal_form_label(long i, long j, int e, int d) {
  std::string s;
  if (i) s += "x^" + std::to_string(i);
  if (j) s += (s.empty() ? "" : " ") + std::string("z^") + std::to_string(j);
  if (e) s += (s.empty() ? "" : " ") + std::string("y");
  if (d) s += (s.empty() ? "" : " ") + std::string("w");
  return s.empty() ? "1" : s;
}

}  // namespace detail

/// Evaluates every defining relation for the generator quadruple (x,y,z,w)
/// with the exponents of `t`.
inline CheckList presentation_checks(const ConcreteGroup& X, element x, element y, element z,
                                     element w, const ParameterTuple& t) {
  const element e = X.identity();
  auto xz = [&](long i, long j) { return X.mul(X.pow(x, i), X.pow(z, j)); };
  CheckList out;
  out.add("x^n=1", X.pow(x, t.n) == e);
  out.add("y^2=1", X.pow(y, 2) == e);
  out.add("z^m=1", X.pow(z, t.m) == e);
  out.add("w^2=1", X.pow(w, 2) == e);
  out.add("[x,z]=1", X.commutator(x, z) == e);
  out.add("x^y=x^-1", X.conj(x, y) == X.inverse(x));
  out.add("z^w=z^-1", X.conj(z, w) == X.inverse(z));
  out.add("[x,w]=x^(s*n1) z^(b*m1)", X.commutator(x, w) == xz(t.s * t.n1, t.b * t.m1));
  out.add("[z,y]=x^(r*n1) z^(a*m1)", X.commutator(z, y) == xz(t.r * t.n1, t.a * t.m1));
  out.add("[y,w]=x^(t*n1) z^(c*m1)", X.commutator(y, w) == xz(t.t * t.n1, t.c * t.m1));
  const std::vector<element> gens{x, y, z, w};
  out.add("<x,y,z,w>=X", closure(X, std::span<const element>(gens)).order() == X.order());
  return out;
}

inline CheckList relation_checks(const ExactProductGroup& g) {
  return presentation_checks(g.group, g.x, g.y, g.z, g.w, g.tuple);
}

/// Wraps an already validated table laid out in normal-form order.
inline ExactProductGroup adopt_normal_form_group(const ParameterTuple& t, ConcreteGroup group) {
  if (group.order() != static_cast<std::size_t>(4 * t.m * t.n))
    throw NotAGroup("table order is not 4mn");
  ExactProductGroup out;
  out.tuple = t;
  out.x = normal_form_index(t, 1, 0, 0, 0);
  out.y = normal_form_index(t, 0, 0, 1, 0);
  out.z = normal_form_index(t, 0, 1, 0, 0);
  out.w = normal_form_index(t, 0, 0, 0, 1);
  out.group = std::move(group);
  out.group.set_generator("x", out.x);
  out.group.set_generator("y", out.y);
  out.group.set_generator("z", out.z);
  out.group.set_generator("w", out.w);
  out.H = closure(out.group, {out.x, out.y});
  out.K = closure(out.group, {out.z, out.w});
  return out;
}

/// The multiplication table of the normal-form rewriting, unvalidated.
inline std::vector<element> normal_form_table(const ParameterTuple& t) {
  const std::size_t order = static_cast<std::size_t>(4 * t.m * t.n);
  detail::NormalFormArithmetic arith(t);
  std::vector<element> table(order * order);
  for (element g = 0; g < order; ++g)
    for (element h = 0; h < order; ++h) table[g * order + h] = arith.multiply(g, h);
  return table;
}

/// Builds and validates the group for an admissible tuple.
///
/// Throws InadmissibleTuple if the tuple fails (a)-(d) and
/// ConstructionInconsistent if the table is not a group or misses one of
/// the defining relations.
inline ExactProductGroup construct_group(const ParameterTuple& t) {
  const ConditionReport rep = check_conditions(t);
  if (!rep.passed) throw InadmissibleTuple("tuple " + to_string(t) + " fails " + describe_failures(rep));

  const std::size_t order = static_cast<std::size_t>(4 * t.m * t.n);
  std::vector<std::string> labels(order);
  detail::NormalFormArithmetic arith(t);
  for (element g = 0; g < order; ++g) {
    const auto f = arith.decode(g);
    labels[g] = detail::normal_form_label(f.i, f.j, f.e, f.d);
  }

  ConcreteGroup group;
  try {
    group = build_from_table(order, normal_form_table(t), std::move(labels));
  } catch (const NotAGroup& err) {
    throw ConstructionInconsistent("group axioms: " + err.reason());
  }
  ExactProductGroup out = adopt_normal_form_group(t, std::move(group));
  if (const Check* bad = relation_checks(out).first_failure())
    throw ConstructionInconsistent(bad->name);
  return out;
}

/// H and K are dihedral of the right degrees and X = HK exactly.
inline CheckList verify_exact_product(const ExactProductGroup& g) {
  const ConcreteGroup& X = g.group;
  CheckList out;
  const DihedralVerdict vh = recognize_dihedral(X, g.H);
  const DihedralVerdict vk = recognize_dihedral(X, g.K);
  out.add("H dihedral of degree n",
          vh.kind == DihedralVerdict::Kind::dihedral &&
              element_order(X, vh.rotation) == static_cast<std::size_t>(g.tuple.n),
          "|H|=" + std::to_string(g.H.order()));
  out.add("K dihedral of degree m",
          vk.kind == DihedralVerdict::Kind::dihedral &&
              element_order(X, vk.rotation) == static_cast<std::size_t>(g.tuple.m),
          "|K|=" + std::to_string(g.K.order()));
  out.add("H and K intersect trivially", intersection(X, g.H, g.K).order() == 1);
  out.add("|H||K|=|X|", g.H.order() * g.K.order() == X.order());
  return out;
}

inline CheckList verify_cores(const ExactProductGroup& g) {
  const ConcreteGroup& X = g.group;
  CheckList out;
  const Subgroup core_x = core(X, closure(X, {g.x}));
  const Subgroup core_z = core(X, closure(X, {g.z}));
  out.add("core<x> = <x^n1>", core_x == closure(X, {X.pow(g.x, g.tuple.n1)}),
          "|core|=" + std::to_string(core_x.order()));
  out.add("core<z> = <z^m1>", core_z == closure(X, {X.pow(g.z, g.tuple.m1)}),
          "|core|=" + std::to_string(core_z.order()));
  return out;
}

/// Index-2 semidirect decompositions, normality of the core extensions,
/// the commutations x z^m1 = z^m1 x, z x^n1 = x^n1 z, [x,z] = 1, and the
/// y-action on z^m1 by u = 1 + a m1 with u^2 = 1 (mod m/m1).
inline CheckList structural_checks(const ExactProductGroup& g) {
  const ConcreteGroup& X = g.group;
  const ParameterTuple& t = g.tuple;
  const element e = X.identity();
  const element x1 = X.pow(g.x, t.n1), z1 = X.pow(g.z, t.m1);
  CheckList out;

  auto semidirect_by = [&](const std::vector<element>& seed, element involution) {
    const Subgroup s = closure(X, std::span<const element>(seed));
    return 2 * s.order() == X.order() && is_normal(X, s) && !s.contains(involution) &&
           X.mul(involution, involution) == e;
  };
  out.add("(i) X = (H<z>) : <w>", semidirect_by({g.x, g.y, g.z}, g.w));
  out.add("(ii) X = (<x>K) : <y>", semidirect_by({g.x, g.z, g.w}, g.y));
  out.add("(iii) <z^m1>H normal", is_normal(X, closure(X, {z1, g.x, g.y})));
  out.add("(iv) <x^n1>K normal", is_normal(X, closure(X, {x1, g.z, g.w})));
  out.add("(v) x commutes with z^m1, z with x^n1",
          X.mul(g.x, z1) == X.mul(z1, g.x) && X.mul(g.z, x1) == X.mul(x1, g.z));
  out.add("(vi) [x,z]=1", X.commutator(g.x, g.z) == e);
  const long q = t.m_quotient();
  const long u = 1 + t.m1 * t.a;
  out.add("(vii) z1^y = z1^u, u^2 = 1 mod m/m1",
          X.conj(z1, g.y) == X.pow(z1, u) && mod(u * u, q) == mod(1, q),
          "u=" + std::to_string(mod(u, q)));
  return out;
}

/// GAP script declaring the presentation and asserting its order.
inline std::string gap_script(const ParameterTuple& t) {
  auto pw = [](const char* g, long k) { return std::string(g) + "^" + std::to_string(k); };
  const std::string xs = pw("x", t.s * t.n1) + "*" + pw("z", t.b * t.m1);
  const std::string xr = pw("x", t.r * t.n1) + "*" + pw("z", t.a * t.m1);
  const std::string xt = pw("x", t.t * t.n1) + "*" + pw("z", t.c * t.m1);
  std::string out;
  out += "# " + to_string(t) + "\n";
  out += "F := FreeGroup(\"x\", \"y\", \"z\", \"w\");;\n";
  out += "x := F.1;; y := F.2;; z := F.3;; w := F.4;;\n";
  out += "rels := [\n";
  out += "  " + pw("x", t.n) + ", y^2, " + pw("z", t.m) + ", w^2,\n";
  out += "  Comm(x, z),\n";
  out += "  x^y * x,\n";
  out += "  z^w * z,\n";
  out += "  Comm(x, w) * (" + xs + ")^-1,\n";
  out += "  Comm(z, y) * (" + xr + ")^-1,\n";
  out += "  Comm(y, w) * (" + xt + ")^-1\n";
  out += "];;\n";
  out += "G := F / rels;;\n";
  out += "Assert(0, Size(G) = " + std::to_string(4 * t.m * t.n) + ");\n";
  return out;
}

}  // namespace dpx
