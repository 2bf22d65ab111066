// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dpx/classify.hpp"
#include "dpx/exact_product.hpp"
#include "dpx/group.hpp"
#include "dpx/knit.hpp"
#include "dpx/small_groups.hpp"

using namespace dpx;

namespace limits {
constexpr double direct_product_s = 1.0;          // per case
constexpr double soundness_sweep_s = 300.0;       // whole sweep, one thread
constexpr double crosscheck33_single_s = 900.0;
constexpr double crosscheck33_parallel_s = 180.0;
constexpr double crosscheck35_parallel_s = 3600.0;  // per case
constexpr double condition_scan_s = 30.0;
constexpr double negative_controls_s = 1.0;
constexpr long condition_modulus_max = 100;
constexpr unsigned parallel_workers = 8;
}  // namespace limits

namespace {

using clock_type = std::chrono::steady_clock;

double since(clock_type::time_point t0) { return std::chrono::duration<double>(clock_type::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  failures += !o.pass;
  std::printf("%s criterion %d: %s | %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

Outcome direct_product_sanity() {
  bool ok = true;
  std::ostringstream d;
  for (auto [m, n] : {std::pair{3L, 3L}, {3L, 5L}}) {
    const auto t0 = clock_type::now();
    const ExactProductGroup g = construct_group({m, n, 1, 1, 0, 0, 0, 0, 0, 0});
    const ConcreteGroup ref = direct_product(permutation_dihedral(static_cast<std::size_t>(n)),
                                             permutation_dihedral(static_cast<std::size_t>(m)));
    const bool iso = isomorphic(g.group, ref).has_value();
    const double s = since(t0);
    ok = ok && iso && s < limits::direct_product_s;
    d << "(" << m << "," << n << ") iso=" << iso << " " << fmt(s) << "s; ";
  }
  d << "limit " << limits::direct_product_s << "s each";
  return {ok, d.str()};
}

Outcome soundness_sweep() {
  const auto t0 = clock_type::now();
  std::size_t tuples = 0, bad = 0, checks = 0;
  std::string first_bad;
  for (auto [m, n] : {std::pair{3L, 3L}, {3L, 5L}, {5L, 3L}, {5L, 5L}, {3L, 7L}, {3L, 9L}}) {
    for (const auto& t : admissible_tuples(m, n)) {
      ++tuples;
      const ExactProductGroup g = construct_group(t);
      CheckList all = relation_checks(g);
      all.append(verify_exact_product(g));
      all.append(verify_cores(g));
      const CheckList s = structural_checks(g);
      all.append(s);
      checks += all.checks.size();
      const bool ok = g.group.order() == static_cast<std::size_t>(4 * m * n) && s.checks.size() == 7 &&
                      all.all_passed();
      if (!ok) {
        ++bad;
        if (first_bad.empty()) first_bad = to_string(t);
      }
    }
  }
  const double s = since(t0);
  std::string d = std::to_string(tuples) + " tuples, " + std::to_string(checks) + " checks, " +
                  std::to_string(bad) + " failures, " + fmt(s) + "s (limit " + fmt(limits::soundness_sweep_s) + "s)";
  if (!first_bad.empty()) d += ", first " + first_bad;
  return {bad == 0 && s < limits::soundness_sweep_s, d};
}

Outcome crosscheck33() {
  auto t0 = clock_type::now();
  const CrossReport one = cross_validate(3, 3);
  const double s1 = since(t0);
  t0 = clock_type::now();
  CrossOptions par;
  par.sweep.workers = limits::parallel_workers;
  const CrossReport eight = cross_validate(3, 3, par);
  const double s8 = since(t0);
  const bool ok = one.sweep.seeds_total == 1679616 && one.passed() && eight.passed() &&
                  s1 < limits::crosscheck33_single_s && s8 < limits::crosscheck33_parallel_s;
  return {ok, "seeds " + std::to_string(one.sweep.seeds_total) + ", accepted " +
                  std::to_string(one.sweep.groups_accepted) + ", classes " +
                  std::to_string(one.classes_as_factorizations) + ", completeness failures " +
                  std::to_string(one.completeness_failures) + ", soundness failures " +
                  std::to_string(one.soundness_failures) + ", 1 worker " + fmt(s1) + "s (limit " +
                  fmt(limits::crosscheck33_single_s) + "s), 8 workers " + fmt(s8) + "s (limit " +
                  fmt(limits::crosscheck33_parallel_s) + "s)"};
}

Outcome crosscheck35() {
  CrossOptions par;
  par.sweep.workers = limits::parallel_workers;
  auto t0 = clock_type::now();
  const CrossReport a = cross_validate(3, 5, par);
  const double sa = since(t0);
  t0 = clock_type::now();
  const CrossReport b = cross_validate(5, 3, par);
  const double sb = since(t0);
  const bool tallies = a.classes_as_factorizations == b.classes_as_factorizations &&
                       a.theorem_factorization_classes == b.theorem_factorization_classes &&
                       a.sweep.groups_accepted == b.sweep.groups_accepted && a.theorem_tuples == b.theorem_tuples;
  const bool ok = a.passed() && b.passed() && tallies && sa < limits::crosscheck35_parallel_s &&
                  sb < limits::crosscheck35_parallel_s;
  auto line = [](const CrossReport& r, double s) {
    return "(" + std::to_string(r.m) + "," + std::to_string(r.n) + ") accepted " +
           std::to_string(r.sweep.groups_accepted) + " classes " + std::to_string(r.classes_as_factorizations) +
           " failures " + std::to_string(r.completeness_failures) + "/" + std::to_string(r.soundness_failures) +
           " " + fmt(s) + "s";
  };
  return {ok, line(a, sa) + "; " + line(b, sb) + "; tallies equal under swap " + (tallies ? "yes" : "no") +
                  " (limit " + fmt(limits::crosscheck35_parallel_s) + "s each)"};
}

Outcome strata33() {
  std::map<std::pair<long, long>, std::size_t> strata{{{1, 1}, 0}, {{1, 3}, 0}, {{3, 1}, 0}, {{3, 3}, 0}};
  for (const auto& t : admissible_tuples(3, 3)) ++strata[{t.m1, t.n1}];
  const CrossReport r = cross_validate(3, 3);
  const bool pinned = strata[{1, 1}] == 16 && strata[{1, 3}] == 6 && strata[{3, 1}] == 6 && strata[{3, 3}] == 0;
  const bool covered = r.soundness_failures == 0 && r.theorem_factorization_classes == r.classes_as_factorizations;
  return {pinned && covered, "strata (1,1)=" + std::to_string(strata[{1, 1}]) +
                                 " (1,3)=" + std::to_string(strata[{1, 3}]) + " (3,1)=" +
                                 std::to_string(strata[{3, 1}]) + " (3,3)=" + std::to_string(strata[{3, 3}]) +
                                 "; tuples cover " + std::to_string(r.theorem_factorization_classes) + " of " +
                                 std::to_string(r.classes_as_factorizations) + " oracle classes"};
}

Outcome condition_equivalence() {
  const auto t0 = clock_type::now();
  std::uint64_t compared = 0, disagreements = 0;
  for (long q = 1; q <= limits::condition_modulus_max; ++q)
    for (long period = 1; period <= limits::condition_modulus_max; ++period)
      for (long v = 0; v < q; ++v) {
        ++compared;
        disagreements += order_condition_holds(v, q, period) == order_condition_witness(v, q, period).has_value();
      }
  // and through check_conditions on every tuple shape with small moduli
  for (long m : {3L, 5L, 7L, 9L, 15L})
    for (long n : {3L, 5L, 9L})
      for (long m1 : divisors(m))
        for (long n1 : divisors(n))
          for (long v = 0; v < std::max(m / m1, n / n1); ++v) {
            ParameterTuple t{m, n, m1, n1, 0, v % (m / m1), 0, v % (n / n1), 0, 0};
            const ConditionReport rep = check_conditions(t);
            ++compared;
            disagreements += rep.condition('c') == order_condition_witness(t.b, m / m1, n1).has_value();
            disagreements += rep.condition('d') == order_condition_witness(t.r, n / n1, m1).has_value();
          }
  const double s = since(t0);
  return {disagreements == 0 && s < limits::condition_scan_s,
          std::to_string(compared) + " cases, " + std::to_string(disagreements) + " disagreements, " + fmt(s) +
              "s (limit " + fmt(limits::condition_scan_s) + "s)"};
}

Outcome determinism() {
  bool same = true;
  std::string ref;
  for (unsigned w : {1u, 4u, 8u}) {
    CrossOptions o;
    o.sweep.workers = w;
    const std::string text = cross_report_json(cross_validate(3, 3, o)).dump(2);
    if (ref.empty()) ref = text;
    same = same && text == ref;
  }
  std::string ref35;
  for (unsigned w : {1u, 4u, 8u}) {
    CrossOptions o;
    o.sweep.workers = w;
    const std::string text = cross_report_json(cross_validate(5, 3, o)).dump(2);
    if (ref35.empty()) ref35 = text;
    same = same && text == ref35;
  }
  ClassifyOptions co;
  co.run_oracle = true;
  const ClassificationReport r = classify(3, 3, co);
  const bool exact = parse_report(emit_report(r, ReportFormat::json, true)) == r;
  const std::string plain = emit_report(r, ReportFormat::json);
  const bool stable = emit_report(parse_report(plain), ReportFormat::json) == plain;
  const bool cross_rt = cross_report_from_json(json::parse(ref)) == cross_validate(3, 3);
  return {same && exact && stable && cross_rt,
          std::string("reports identical across workers {1,4,8}: ") + (same ? "yes" : "no") +
              "; report round-trip: " + (exact && stable ? "yes" : "no") +
              "; crosscheck round-trip: " + (cross_rt ? "yes" : "no")};
}

Outcome negative_controls() {
  const auto t0 = clock_type::now();
  // corrupted Cayley tables
  const ParameterTuple direct{3, 3, 1, 1, 0, 0, 0, 0, 0, 0};
  std::vector<element> table = normal_form_table(direct);
  std::vector<element> swapped = table;
  const element x = normal_form_index(direct, 1, 0, 0, 0), y = normal_form_index(direct, 0, 0, 1, 0);
  std::swap(swapped[x * 36 + y], swapped[y * 36 + x]);
  std::vector<element> overwritten = table;
  overwritten[10 * 36 + 11] = overwritten[10 * 36 + 12];
  bool tables_rejected = true;
  for (const auto* bad : {&swapped, &overwritten}) {
    try {
      build_from_table(36, *bad);
      tables_rejected = false;
    } catch (const NotAGroup&) {
    }
  }
  try {
    build_from_table(3, {0, 1, 2, 1, 2, 0, 2, 1, 0});
    tables_rejected = false;
  } catch (const NotAGroup&) {
  }

  // inadmissible tuple with witness k = 1
  const ConditionReport rep = check_conditions({3, 3, 3, 3, 0, 0, 0, 0, 0, 0});
  bool tuple_rejected = !rep.passed && !rep.condition('c') && rep.witness_c == 1L;
  try {
    construct_group({3, 3, 3, 3, 0, 0, 0, 0, 0, 0});
    tuple_rejected = false;
  } catch (const InadmissibleTuple&) {
  }

  // collapsing oracle seed phi(z,x) = (1_H, z)
  const KnitFactors f(3, 3);
  CrossingSeed seed{f.pair(f.H.identity(), f.z), f.pair(f.y, f.z), f.pair(f.x, f.w), f.pair(f.y, f.w)};
  bool seed_rejected = propagate(f, seed).outcome != PropagationOutcome::complete && complete_seed(f, seed).empty();
  for (element zy = 0; zy < f.pair_count() && seed_rejected; ++zy)
    for (element wx = 0; wx < f.pair_count() && seed_rejected; ++wx)
      for (element wy = 0; wy < f.pair_count() && seed_rejected; ++wy) {
        seed = {f.pair(f.H.identity(), f.z), zy, wx, wy};
        seed_rejected = complete_seed(f, seed).empty();
      }
  const double s = since(t0);
  return {tables_rejected && tuple_rejected && seed_rejected && s < limits::negative_controls_s,
          std::string("corrupted tables rejected: ") + (tables_rejected ? "yes" : "no") +
              "; (3,3,3,3) rejected with witness k=" + (rep.witness_c ? std::to_string(*rep.witness_c) : "none") +
              "; phi(z,x)=(1,z) seeds rejected: " + (seed_rejected ? "yes" : "no") + "; " + fmt(s) + "s (limit " +
              fmt(limits::negative_controls_s) + "s)"};
}

}  // namespace

int main() {
  report(1, "direct-product sanity", direct_product_sanity);
  report(2, "theorem soundness sweep", soundness_sweep);
  report(3, "completeness cross-check (3,3)", crosscheck33);
  report(4, "completeness cross-check (3,5) and (5,3)", crosscheck35);
  report(5, "enumeration regressions (3,3)", strata33);
  report(6, "condition-checker equivalence", condition_equivalence);
  report(7, "determinism", determinism);
  report(8, "negative controls", negative_controls);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
