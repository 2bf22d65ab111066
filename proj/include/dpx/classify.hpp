#pragma once

// Per-(m,n) classification: tuple strata, plain isomorphism classes,
// factorization classes, and the optional oracle cross-check.

#include <chrono>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dpx/exact_product.hpp"
#include "dpx/isomorphism.hpp"
#include "dpx/knit.hpp"
#include "dpx/parameters.hpp"
#include "dpx/partition.hpp"

namespace dpx {

using json = nlohmann::ordered_json;

struct TupleVerdict {
  ParameterTuple tuple;
  bool verified = false;
  std::string failure;  // first failing check, empty when verified
  auto operator<=>(const TupleVerdict&) const = default;
};

struct ClassificationReport {
  long m = 0, n = 0;
  std::vector<TupleVerdict> tuples;
  std::map<std::pair<long, long>, std::size_t> strata;  // (m1,n1) -> count, every divisor pair
  Partition iso_classes;
  Partition factorization_classes;
  std::optional<CrossReport> oracle;
  std::map<std::string, double> timing;  // seconds per phase

  bool operator==(const ClassificationReport& o) const {
    return m == o.m && n == o.n && tuples == o.tuples && strata == o.strata &&
           iso_classes.cells == o.iso_classes.cells && iso_classes.undecided == o.iso_classes.undecided &&
           factorization_classes.cells == o.factorization_classes.cells &&
           factorization_classes.undecided == o.factorization_classes.undecided && oracle == o.oracle &&
           timing == o.timing;
  }
};

struct ClassifyOptions {
  unsigned workers = 1;
  IsoOptions iso;
  bool run_oracle = false;
  SweepOptions sweep;
};

/// Cells of pairwise isomorphic groups; comparisons only within order-profile buckets.
inline Partition partition_by_isomorphism(const std::vector<const ConcreteGroup*>& groups,
                                          IsoOptions iso = {}, unsigned workers = 1) {
  std::vector<OrderProfile> profiles;
  for (const ConcreteGroup* g : groups) profiles.push_back(order_profile(*g));
  return partition_by<OrderProfile>(
      groups.size(), [&](std::size_t i) { return profiles[i]; },
      [&](std::size_t a, std::size_t b) { return isomorphic(*groups[a], *groups[b], iso).has_value(); },
      workers);
}

/// Cells of exact products that are isomorphic as factorizations.
inline Partition partition_by_factorization(const std::vector<const ExactProductGroup*>& groups,
                                            IsoOptions iso = {}, unsigned workers = 1) {
  using Key = std::tuple<OrderProfile, std::size_t, std::size_t>;
  std::vector<Key> keys;
  for (const ExactProductGroup* g : groups)
    keys.emplace_back(order_profile(g->group), core(g->group, closure(g->group, {g->x})).order(),
                      core(g->group, closure(g->group, {g->z})).order());
  return partition_by<Key>(
      groups.size(), [&](std::size_t i) { return keys[i]; },
      [&](std::size_t a, std::size_t b) {
        const ExactProductGroup& p = *groups[a];
        const ExactProductGroup& q = *groups[b];
        return isomorphic_as_factorization(p.group, p.H, p.K, q.group, q.H, q.K, iso).has_value();
      },
      workers);
}

inline ClassificationReport classify(long m, long n, const ClassifyOptions& options = {}) {
  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::time_point a) { return std::chrono::duration<double>(clock::now() - a).count(); };

  ClassificationReport rep;
  rep.m = m;
  rep.n = n;
  auto t0 = clock::now();
  const std::vector<ParameterTuple> tuples = admissible_tuples(m, n);
  for (long m1 : divisors(m))
    for (long n1 : divisors(n)) rep.strata[{m1, n1}] = 0;
  for (const auto& t : tuples) ++rep.strata[{t.m1, t.n1}];
  rep.timing["enumerate"] = seconds(t0);

  t0 = clock::now();
  std::vector<ExactProductGroup> built;
  built.reserve(tuples.size());
  for (const auto& t : tuples) {
    TupleVerdict v{t, false, {}};
    built.push_back(construct_group(t));
    CheckList checks = verify_exact_product(built.back());
    checks.append(verify_cores(built.back()));
    checks.append(structural_checks(built.back()));
    v.verified = checks.all_passed();
    if (!v.verified) v.failure = checks.first_failure()->name;
    rep.tuples.push_back(std::move(v));
  }
  rep.timing["construct_verify"] = seconds(t0);

  t0 = clock::now();
  std::vector<const ConcreteGroup*> plain;
  std::vector<const ExactProductGroup*> facts;
  for (const auto& g : built) {
    plain.push_back(&g.group);
    facts.push_back(&g);
  }
  rep.iso_classes = partition_by_isomorphism(plain, options.iso, options.workers);
  rep.factorization_classes = partition_by_factorization(facts, options.iso, options.workers);
  rep.timing["partition"] = seconds(t0);

  if (options.run_oracle) {
    t0 = clock::now();
    SweepOptions sweep = options.sweep;
    sweep.workers = options.workers;
    rep.oracle = cross_validate(m, n, {sweep, options.iso});
    rep.timing["oracle"] = seconds(t0);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization.

inline std::string stratum_key(long m1, long n1) { return std::to_string(m1) + "," + std::to_string(n1); }

inline json partition_json(const Partition& p) {
  json cells = json::array(), undecided = json::array();
  for (const auto& c : p.cells) cells.push_back(c);
  for (bool u : p.undecided) undecided.push_back(u);
  return json{{"cells", cells}, {"undecided", undecided}};
}

inline Partition partition_from_json(const json& j) {
  Partition p;
  for (const auto& c : j.at("cells")) p.cells.push_back(c.get<std::vector<std::size_t>>());
  for (const auto& u : j.at("undecided")) p.undecided.push_back(u.get<bool>());
  return p;
}

/// The sweep report keys, followed by the extra tallies.
inline json cross_report_json(const CrossReport& r) {
  json j{{"m", r.m},
         {"n", r.n},
         {"seeds_total", r.sweep.seeds_total},
         {"propagation_rejected", r.sweep.propagation_rejected},
         {"axiom_rejected", r.sweep.axiom_rejected},
         {"groups_accepted", r.sweep.groups_accepted},
         {"classes_as_factorizations", r.classes_as_factorizations},
         {"completeness_failures", r.completeness_failures},
         {"soundness_failures", r.soundness_failures},
         {"duplicates", r.duplicates()},
         {"stalled_seeds", r.sweep.stalled_seeds},
         {"theorem_tuples", r.theorem_tuples},
         {"theorem_factorization_classes", r.theorem_factorization_classes},
         {"class_sizes", r.class_sizes},
         {"tuple_class", r.tuple_class}};
  json ts = json::array();
  for (const auto& t : r.tuples) ts.push_back(t);
  j["tuples"] = ts;
  return j;
}

inline CrossReport cross_report_from_json(const json& j) {
  CrossReport r;
  r.m = j.at("m").get<long>();
  r.n = j.at("n").get<long>();
  r.sweep.seeds_total = j.at("seeds_total").get<std::uint64_t>();
  r.sweep.propagation_rejected = j.at("propagation_rejected").get<std::uint64_t>();
  r.sweep.axiom_rejected = j.at("axiom_rejected").get<std::uint64_t>();
  r.sweep.groups_accepted = j.at("groups_accepted").get<std::uint64_t>();
  r.sweep.stalled_seeds = j.value("stalled_seeds", std::uint64_t{0});
  r.classes_as_factorizations = j.at("classes_as_factorizations").get<std::size_t>();
  r.completeness_failures = j.at("completeness_failures").get<std::size_t>();
  r.soundness_failures = j.at("soundness_failures").get<std::size_t>();
  r.theorem_tuples = j.value("theorem_tuples", std::size_t{0});
  r.theorem_factorization_classes = j.value("theorem_factorization_classes", std::size_t{0});
  if (j.contains("class_sizes")) r.class_sizes = j["class_sizes"].get<std::vector<std::size_t>>();
  if (j.contains("tuple_class")) r.tuple_class = j["tuple_class"].get<std::vector<std::int64_t>>();
  if (j.contains("tuples"))
    for (const auto& t : j["tuples"]) r.tuples.push_back(t.get<ParameterTuple>());
  return r;
}

/// Timing is left out unless asked for, so the default output is deterministic.
inline json report_json(const ClassificationReport& r, bool include_timing = false) {
  json strata = json::object();
  for (const auto& [key, count] : r.strata) strata[stratum_key(key.first, key.second)] = count;
  const auto iso_of = r.iso_classes.cell_of(r.tuples.size());
  const auto fact_of = r.factorization_classes.cell_of(r.tuples.size());
  json tuples = json::array();
  for (std::size_t i = 0; i < r.tuples.size(); ++i) {
    json entry{{"tuple", r.tuples[i].tuple}, {"verified", r.tuples[i].verified}};
    if (!r.tuples[i].failure.empty()) entry["failure"] = r.tuples[i].failure;
    entry["iso_class"] = iso_of[i];
    entry["factorization_class"] = fact_of[i];
    tuples.push_back(entry);
  }
  json j{{"m", r.m},
         {"n", r.n},
         {"tuple_count", r.tuples.size()},
         {"strata", strata},
         {"iso_class_count", r.iso_classes.cells.size()},
         {"factorization_class_count", r.factorization_classes.cells.size()},
         {"tuples", tuples},
         {"iso_classes", partition_json(r.iso_classes)},
         {"factorization_classes", partition_json(r.factorization_classes)},
         {"oracle", r.oracle ? cross_report_json(*r.oracle) : json(nullptr)}};
  if (include_timing) j["timing"] = r.timing;
  return j;
}

inline ClassificationReport report_from_json(const json& j) {
  ClassificationReport r;
  r.m = j.at("m").get<long>();
  r.n = j.at("n").get<long>();
  for (const auto& [key, count] : j.at("strata").items()) {
    const auto comma = key.find(',');
    r.strata[{std::stol(key.substr(0, comma)), std::stol(key.substr(comma + 1))}] = count.get<std::size_t>();
  }
  for (const auto& e : j.at("tuples"))
    r.tuples.push_back({e.at("tuple").get<ParameterTuple>(), e.at("verified").get<bool>(),
                        e.value("failure", std::string{})});
  r.iso_classes = partition_from_json(j.at("iso_classes"));
  r.factorization_classes = partition_from_json(j.at("factorization_classes"));
  if (!j.at("oracle").is_null()) r.oracle = cross_report_from_json(j.at("oracle"));
  if (j.contains("timing")) r.timing = j["timing"].get<std::map<std::string, double>>();
  return r;
}

inline std::string markdown_report(const ClassificationReport& r, bool include_timing = false) {
  std::ostringstream out;
  out << "# Exact products of D" << 2 * r.n << " and D" << 2 * r.m << " (m=" << r.m << ", n=" << r.n << ")\n\n";
  out << "- admissible tuples: " << r.tuples.size() << "\n";
  out << "- isomorphism classes: " << r.iso_classes.cells.size() << " (undecided "
      << r.iso_classes.cells.size() - r.iso_classes.decided_cells() << ")\n";
  out << "- factorization classes: " << r.factorization_classes.cells.size() << " (undecided "
      << r.factorization_classes.cells.size() - r.factorization_classes.decided_cells() << ")\n\n";

  out << "## Strata\n\nRows m1, columns n1.\n\n| m1 \\ n1 |";
  const auto m1s = divisors(r.m), n1s = divisors(r.n);
  for (long n1 : n1s) out << ' ' << n1 << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < n1s.size(); ++i) out << "---|";
  out << '\n';
  for (long m1 : m1s) {
    out << "| " << m1 << " |";
    for (long n1 : n1s) {
      const auto it = r.strata.find({m1, n1});
      out << ' ' << (it == r.strata.end() ? 0 : it->second) << " |";
    }
    out << '\n';
  }

  const auto iso_of = r.iso_classes.cell_of(r.tuples.size());
  const auto fact_of = r.factorization_classes.cell_of(r.tuples.size());
  out << "\n## Tuples\n\n| # | m1 | n1 | a | b | c | r | s | t | verified | iso | factorization |\n"
      << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (std::size_t i = 0; i < r.tuples.size(); ++i) {
    const auto& t = r.tuples[i].tuple;
    out << "| " << i << " | " << t.m1 << " | " << t.n1 << " | " << t.a << " | " << t.b << " | " << t.c << " | "
        << t.r << " | " << t.s << " | " << t.t << " | "
        << (r.tuples[i].verified ? "yes" : "no: " + r.tuples[i].failure) << " | " << iso_of[i] << " | "
        << fact_of[i] << " |\n";
  }

  if (r.oracle) {
    const CrossReport& o = *r.oracle;
    out << "\n## Oracle\n\n| quantity | value |\n|---|---|\n"
        << "| seeds | " << o.sweep.seeds_total << " |\n"
        << "| propagation rejected | " << o.sweep.propagation_rejected << " |\n"
        << "| stalled seeds | " << o.sweep.stalled_seeds << " |\n"
        << "| axiom rejected | " << o.sweep.axiom_rejected << " |\n"
        << "| groups accepted | " << o.sweep.groups_accepted << " |\n"
        << "| factorization classes | " << o.classes_as_factorizations << " |\n"
        << "| duplicates | " << o.duplicates() << " |\n"
        << "| completeness failures | " << o.completeness_failures << " |\n"
        << "| soundness failures | " << o.soundness_failures << " |\n";
  }
  if (include_timing && !r.timing.empty()) {
    out << "\n## Timing\n\n| phase | seconds |\n|---|---|\n";
    for (const auto& [phase, secs] : r.timing) out << "| " << phase << " | " << secs << " |\n";
  }
  return out.str();
}

enum class ReportFormat { json, markdown };

inline std::string emit_report(const ClassificationReport& r, ReportFormat format, bool include_timing = false) {
  if (format == ReportFormat::markdown) return markdown_report(r, include_timing);
  return report_json(r, include_timing).dump(2) + "\n";
}

inline ClassificationReport parse_report(const std::string& text) { return report_from_json(json::parse(text)); }

}  // namespace dpx
