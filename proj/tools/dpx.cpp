// dpx: exact products of two dihedral groups from the command line.
//
// exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 budget exceeded

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "dpx/classify.hpp"
#include "dpx/errors.hpp"
#include "dpx/exact_product.hpp"
#include "dpx/group.hpp"
#include "dpx/knit.hpp"
#include "dpx/parameters.hpp"

namespace {

enum Exit { ok = 0, verification_failed = 1, invalid_input = 2, budget_exceeded = 3 };

struct Config {
  long m = 0, n = 0;
  std::string tuple;
  std::string format = "json";
  std::string emit = "json";
  std::string from_cayley;
  std::string output;
  std::string report_path;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed_budget = 200'000'000;
  std::uint64_t iso_budget = 100'000'000;
  bool with_oracle = false;
  bool timing = false;
};

/// "m1=1,n1=3,a=1" on top of the -m/-n flags; m1 and n1 are required.
dpx::ParameterTuple parse_tuple(const Config& cfg) {
  nlohmann::ordered_json j{{"m", cfg.m}, {"n", cfg.n}};
  std::stringstream ss(cfg.tuple);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw dpx::InvalidInput("malformed tuple entry '" + item + "'");
    const std::string key = item.substr(0, eq);
    static const std::set<std::string> known{"m1", "n1", "a", "b", "c", "r", "s", "t"};
    if (!known.count(key)) throw dpx::InvalidInput("unknown tuple key '" + key + "'");
    long value = 0;
    try {
      std::size_t used = 0;
      value = std::stol(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw dpx::InvalidInput("tuple value for '" + key + "' is not an integer");
    }
    j[key] = value;
  }
  if (!j.contains("m1") || !j.contains("n1")) throw dpx::InvalidInput("tuple must set m1 and n1");
  dpx::ParameterTuple t = j.get<dpx::ParameterTuple>();
  dpx::validate_dimensions(t.m, t.n);
  dpx::validate(t);
  return t;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw dpx::InvalidInput("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_enumerate(const Config& cfg) {
  const auto tuples = dpx::admissible_tuples(cfg.m, cfg.n);
  Output out(cfg.output);
  if (cfg.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& t : tuples) arr.push_back(t);
    out.stream() << arr.dump(2) << '\n';
  } else {
    std::map<std::pair<long, long>, std::size_t> strata;
    for (long m1 : dpx::divisors(cfg.m))
      for (long n1 : dpx::divisors(cfg.n)) strata[{m1, n1}] = 0;
    for (const auto& t : tuples) ++strata[{t.m1, t.n1}];
    out.stream() << "| m1 | n1 | tuples |\n|---|---|---|\n";
    for (const auto& [key, count] : strata)
      out.stream() << "| " << key.first << " | " << key.second << " | " << count << " |\n";
    out.stream() << "\n| m1 | n1 | a | b | c | r | s | t |\n|---|---|---|---|---|---|---|---|\n";
    for (const auto& t : tuples)
      out.stream() << "| " << t.m1 << " | " << t.n1 << " | " << t.a << " | " << t.b << " | " << t.c << " | "
                   << t.r << " | " << t.s << " | " << t.t << " |\n";
  }
  return ok;
}

int cmd_construct(const Config& cfg) {
  const dpx::ParameterTuple t = parse_tuple(cfg);
  if (cfg.emit == "gap") {
    dpx::construct_group(t);
    Output out(cfg.output);
    out.stream() << dpx::gap_script(t);
    return ok;
  }
  const dpx::ExactProductGroup g = dpx::construct_group(t);
  Output out(cfg.output);
  if (cfg.emit == "cayley") {
    dpx::write_cayley_csv(out.stream(), g.group);
  } else {
    nlohmann::ordered_json j{{"tuple", t},
                             {"order", g.group.order()},
                             {"generators", {{"x", g.x}, {"y", g.y}, {"z", g.z}, {"w", g.w}}},
                             {"H_order", g.H.order()},
                             {"K_order", g.K.order()}};
    out.stream() << j.dump(2) << '\n';
  }
  return ok;
}

int cmd_verify(const Config& cfg) {
  const dpx::ParameterTuple t = parse_tuple(cfg);
  dpx::ExactProductGroup g;
  dpx::CheckList checks;
  if (cfg.from_cayley.empty()) {
    g = dpx::construct_group(t);
  } else {
    const dpx::ConditionReport rep = dpx::check_conditions(t);
    if (!rep.passed) throw dpx::InadmissibleTuple("tuple " + dpx::to_string(t) + " fails " + dpx::describe_failures(rep));
    std::ifstream in(cfg.from_cayley);
    if (!in) throw dpx::InvalidInput("cannot open " + cfg.from_cayley);
    try {
      g = dpx::adopt_normal_form_group(t, dpx::load_cayley_group(in));
    } catch (const dpx::NotAGroup& e) {
      std::cout << "FAIL group axioms: " << e.reason() << '\n';
      return verification_failed;
    }
    checks.append(dpx::relation_checks(g));
  }
  checks.append(dpx::verify_exact_product(g));
  checks.append(dpx::verify_cores(g));
  checks.append(dpx::structural_checks(g));
  Output out(cfg.output);
  for (const auto& c : checks.checks)
    out.stream() << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  " + c.detail) << '\n';
  return checks.all_passed() ? ok : verification_failed;
}

dpx::CrossReport run_cross(const Config& cfg) {
  dpx::CrossOptions opts;
  opts.sweep.workers = std::max(1u, cfg.workers);
  opts.sweep.seed_budget = cfg.seed_budget;
  opts.iso.node_budget = cfg.iso_budget;
  std::cerr << "sweeping " << dpx::seed_space(cfg.m, cfg.n) << " seeds on " << opts.sweep.workers << " workers\n";
  return dpx::cross_validate(cfg.m, cfg.n, opts);
}

int cmd_oracle(const Config& cfg) {
  const dpx::CrossReport rep = run_cross(cfg);
  Output out(cfg.output);
  out.stream() << dpx::cross_report_json(rep).dump(2) << '\n';
  return ok;
}

int cmd_crosscheck(const Config& cfg) {
  const dpx::CrossReport rep = run_cross(cfg);
  const std::string text = dpx::cross_report_json(rep).dump(2) + "\n";
  if (!cfg.report_path.empty()) {
    Output file(cfg.report_path);
    file.stream() << text;
  }
  Output out(cfg.output);
  out.stream() << text;
  std::cerr << "completeness failures " << rep.completeness_failures << ", soundness failures "
            << rep.soundness_failures << '\n';
  return rep.passed() ? ok : verification_failed;
}

int cmd_classify(const Config& cfg) {
  dpx::ClassifyOptions opts;
  opts.workers = std::max(1u, cfg.workers);
  opts.iso.node_budget = cfg.iso_budget;
  opts.run_oracle = cfg.with_oracle;
  opts.sweep.seed_budget = cfg.seed_budget;
  const dpx::ClassificationReport rep = dpx::classify(cfg.m, cfg.n, opts);
  Output out(cfg.output);
  out.stream() << dpx::emit_report(rep, cfg.format == "md" ? dpx::ReportFormat::markdown : dpx::ReportFormat::json,
                                   cfg.timing);
  bool all_verified = true;
  for (const auto& v : rep.tuples) all_verified = all_verified && v.verified;
  if (rep.oracle && !rep.oracle->passed()) all_verified = false;
  return all_verified ? ok : verification_failed;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  if (const char* env = std::getenv("DPX_SEED_BUDGET")) {
    try {
      cfg.seed_budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "DPX_SEED_BUDGET is not a number\n";
      return invalid_input;
    }
  }

  CLI::App app{"exact products of two dihedral groups"};
  app.require_subcommand(1);
  auto positive = CLI::PositiveNumber;

  auto add_mn = [&](CLI::App* sub) {
    sub->add_option("-m", cfg.m, "degree of K = D_2m")->required();
    sub->add_option("-n", cfg.n, "degree of H = D_2n")->required();
    sub->add_option("-o,--output", cfg.output, "write to file instead of stdout");
  };
  auto add_tuple = [&](CLI::App* sub) {
    sub->add_option("--tuple", cfg.tuple, "m1=..,n1=..,a=..,b=..,c=..,r=..,s=..,t=..")->required();
  };
  auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--workers", cfg.workers, "worker threads")->check(positive);
    sub->add_option("--budget", cfg.seed_budget, "seed budget")->check(positive);
    sub->add_option("--iso-budget", cfg.iso_budget, "isomorphism search node budget")->check(positive);
  };

  auto* enumerate = app.add_subcommand("enumerate", "list admissible tuples");
  add_mn(enumerate);
  enumerate->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "md"}));

  auto* construct = app.add_subcommand("construct", "build the group of one tuple");
  add_mn(construct);
  add_tuple(construct);
  construct->add_option("--emit", cfg.emit)->check(CLI::IsMember({"cayley", "gap", "json"}));

  auto* verify = app.add_subcommand("verify", "run every structural check on one tuple");
  add_mn(verify);
  add_tuple(verify);
  verify->add_option("--from-cayley", cfg.from_cayley, "check this table instead of constructing one");

  auto* oracle = app.add_subcommand("oracle", "sweep all crossing seeds");
  add_mn(oracle);
  add_sweep(oracle);

  auto* crosscheck = app.add_subcommand("crosscheck", "oracle sweep matched against the theorem");
  add_mn(crosscheck);
  add_sweep(crosscheck);
  crosscheck->add_option("--report", cfg.report_path, "also write the report here");

  auto* classify = app.add_subcommand("classify", "full classification report");
  add_mn(classify);
  add_sweep(classify);
  classify->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "md"}));
  classify->add_flag("--oracle", cfg.with_oracle, "include the oracle cross-check");
  classify->add_flag("--timing", cfg.timing, "include per-phase wall-clock");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : invalid_input;
  }

  try {
    dpx::validate_dimensions(cfg.m, cfg.n);
    if (cfg.seed_budget == 0) throw dpx::InvalidInput("budgets must be positive");
    if (enumerate->parsed()) return cmd_enumerate(cfg);
    if (construct->parsed()) return cmd_construct(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (oracle->parsed()) return cmd_oracle(cfg);
    if (crosscheck->parsed()) return cmd_crosscheck(cfg);
    if (classify->parsed()) return cmd_classify(cfg);
  } catch (const dpx::InvalidInput& e) {
    std::cerr << e.what() << '\n';
    return invalid_input;
  } catch (const dpx::InadmissibleTuple& e) {
    std::cerr << e.what() << '\n';
    return invalid_input;
  } catch (const dpx::BudgetExceeded& e) {
    std::cerr << e.what() << '\n';
    return budget_exceeded;
  } catch (const dpx::SearchBudgetExceeded& e) {
    std::cerr << e.what() << '\n';
    return budget_exceeded;
  } catch (const dpx::ConstructionInconsistent& e) {
    std::cerr << e.what() << '\n';
    return verification_failed;
  }
  return ok;
}
