#include "aoi/cli/run.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "aoi/adversaries.hpp"
#include "aoi/analysis.hpp"
#include "aoi/audit.hpp"
#include "aoi/error.hpp"
#include "aoi/estimator.hpp"
#include "aoi/oracle.hpp"
#include "aoi/policies.hpp"
#include "aoi/version.hpp"

namespace aoi::cli {

namespace {

using nlohmann::json;

struct Outcome {
  json result;
  std::string human;
  std::string fileBody;  // audit CSV instead of the JSON report
  std::string trace;
};

std::string sig6(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string show(const Rational& r) {
  return to_fraction_string(r) + " (" + sig6(to_double(r)) + ")";
}

json exact(const Rational& r) { return {{"exact", to_fraction_string(r)}, {"value", to_double(r)}}; }

ExpectationMethod method_or(const ExperimentConfig& c, ExpectationMethod fallback) {
  return c.method.value_or(fallback);
}

// Sequences that do not depend on the schedule.
AdversarySequence fixed_sequence(const ExperimentConfig& c) {
  const int T = c.params.T;
  const auto& kind = c.adversary.kind;
  if (kind == "zeros") return constant_sequence(T, AdversaryAction::Idle);
  if (kind == "ones") return constant_sequence(T, AdversaryAction::Forward);
  if (kind == "bernoulli") return bernoulli_sequence({c.p, c.seed}, T);
  if (kind == "explicit") return AdversarySequence::parse(c.adversary.bits);
  throw ValidationError("adversary '" + kind + "' does not name a single sequence here");
}

Schedule build_policy(const ExperimentConfig& c, const AdversarySequence* sigma) {
  const auto& name = c.policy.name;
  Schedule s;
  if (name == "hat") {
    s = build_hat_policy(c.params);
  } else if (name == "check") {
    s = build_check_policy(c.params);
  } else if (name == "idle") {
    s = build_idle_policy(c.params);
  } else if (name == "uniform") {
    return build_uniform_reference(c.params);  // a bound witness, not budget-feasible
  } else if (name == "clairvoyant") {
    if (sigma == nullptr) {
      throw ValidationError("the clairvoyant policy needs a fixed adversary sequence");
    }
    s = build_clairvoyant_bound_policy(c.params, *sigma);
  } else {
    s = Schedule::parse(c.policy.schedule);
    if (auto report = validate_schedule(s, c.params, c.singleUpdate); !report) {
      throw ValidationError("schedule violates constraints: " + report.summary());
    }
  }
  return s;
}

// A schedule for modes that quantify over sequences. The clairvoyant policy
// is built once for the configured sequence and then held fixed.
Schedule policy_for_sweep(const ExperimentConfig& c) {
  if (c.policy.name != "clairvoyant") return build_policy(c, nullptr);
  const auto sigma = fixed_sequence(c);
  return build_policy(c, &sigma);
}

Outcome simulate_mode(const ExperimentConfig& c) {
  Schedule schedule;
  AdversarySequence sigma;
  if (c.adversary.kind == "worst") {
    if (c.policy.name == "clairvoyant") {
      throw ValidationError("the clairvoyant policy cannot face the worst-case adversary");
    }
    schedule = build_policy(c, nullptr);
    sigma = worst_sequence(schedule, c.params).sigma;
  } else {
    sigma = fixed_sequence(c);
    schedule = build_policy(c, &sigma);
  }
  const auto trace = simulate(schedule, sigma, c.params);
  std::int64_t total = 0;
  for (int a : trace.ages) total += a;

  Outcome o;
  o.result = {{"schedule", schedule.to_string()},
              {"sigma", sigma.to_string()},
              {"total_age", total},
              {"average_age", exact(trace.averageAge)}};
  o.human = "schedule " + schedule.to_string() + "\nsigma    " + sigma.to_string() +
            "\naverage age " + show(trace.averageAge) + "\n";
  if (c.trace) {
    std::ostringstream csv;
    write_trace_csv(csv, trace, schedule, sigma);
    o.trace = csv.str();
  }
  return o;
}

Outcome expect_mode(const ExperimentConfig& c) {
  const auto schedule = policy_for_sweep(c);
  const auto method = method_or(c, ExpectationMethod::Propagation);
  ExpectationResult r;
  switch (method) {
    case ExpectationMethod::Propagation: r = exact_expected_age(schedule, c.params, c.p); break;
    case ExpectationMethod::Enumeration:
      r = enumerated_expected_age(schedule, c.params, c.p, c.cap, c.workers);
      break;
    case ExpectationMethod::MonteCarlo:
      r = mc_expected_age(schedule, c.params, {c.p, c.seed}, c.samples, c.workers);
      break;
  }
  Outcome o;
  o.result = {{"schedule", schedule.to_string()}, {"method", to_string(r.method)},
              {"mean", exact(r.mean)}};
  o.human = "schedule " + schedule.to_string() + "\nexpected average age " + show(r.mean);
  if (method == ExpectationMethod::MonteCarlo) {
    o.result["std_error"] = r.standardError;
    o.result["samples"] = r.samples;
    o.human += " +/- " + sig6(r.standardError) + " (" + std::to_string(r.samples) + " samples)";
  }
  o.human += " [" + to_string(r.method) + "]\n";
  return o;
}

Outcome ratio_mode(const ExperimentConfig& c) {
  const auto schedule = policy_for_sweep(c);
  const auto r = exact_competitive_ratio(schedule, c.params, c.singleUpdate, c.cap, c.policy.name);
  Outcome o;
  o.result = {{"schedule", schedule.to_string()},
              {"ratio", exact(r.ratio)},
              {"argmax_sigma", r.argmaxSigma->to_string()},
              {"online_average", exact(r.numerator)},
              {"optimal_average", exact(r.denominator)}};
  o.human = "schedule " + schedule.to_string() + "\ncompetitive ratio " + show(r.ratio) +
            "\nattained at sigma " + r.argmaxSigma->to_string() + "\n";
  const auto g = SectionGeometry::of(c.params);
  if (c.policy.name == "hat" && g.blockLen != 0) {
    const auto bound = theorem1_bound_exact(c.params);
    o.result["theorem1_bound"] = exact(bound);
    o.human += "block-policy bound " + show(bound) + "\n";
  }
  return o;
}

Outcome worst_mode(const ExperimentConfig& c) {
  const auto schedule = policy_for_sweep(c);
  const auto w = worst_sequence(schedule, c.params);
  Outcome o;
  o.result = {{"schedule", schedule.to_string()},
              {"sigma", w.sigma.to_string()},
              {"total_age", w.totalAge},
              {"value", exact(w.value)}};
  o.human = "schedule " + schedule.to_string() + "\nworst sigma " + w.sigma.to_string() +
            "\nworst average age " + show(w.value) + "\n";
  return o;
}

json oracle_record(const AdversarySequence& sigma, const OracleResult& r) {
  return {{"sigma", sigma.to_string()},
          {"value_num", boost::multiprecision::numerator(r.value).str()},
          {"value_den", boost::multiprecision::denominator(r.value).str()},
          {"schedule", r.bestSchedule.to_string()}};
}

Outcome oracle_mode(const ExperimentConfig& c) {
  Outcome o;
  json records = json::array();
  if (c.adversary.kind == "enumerate") {
    const auto range = enumerate_sequences(c.params.T, c.cap);
    Rational lo, hi;
    bool first = true;
    for (const auto& sigma : range) {
      const auto r = offline_optimal(sigma, c.params, c.singleUpdate);
      records.push_back(oracle_record(sigma, r));
      if (first || r.value < lo) lo = r.value;
      if (first || r.value > hi) hi = r.value;
      first = false;
    }
    o.human = std::to_string(range.size()) + " sequences, optimal average age from " + show(lo) +
              " to " + show(hi) + "\n";
  } else {
    const auto sigma = fixed_sequence(c);
    const auto r = offline_optimal(sigma, c.params, c.singleUpdate);
    records.push_back(oracle_record(sigma, r));
    o.human = "sigma    " + sigma.to_string() + "\nschedule " + r.bestSchedule.to_string() +
              "\noptimal average age " + show(r.value) + "\n";
  }
  o.result = {{"records", records}};
  return o;
}

Outcome yao_mode(const ExperimentConfig& c) {
  YaoOptions options;
  options.method = method_or(c, ExpectationMethod::Enumeration);
  options.enforceSingleUpdate = c.singleUpdate;
  options.cap = c.cap;
  options.samples = c.samples;
  options.seed = c.seed;
  options.workers = c.workers;
  const auto r = yao_bound_empirical(c.params, options);
  const double closed = yao_lower_bound(c.params);

  Outcome o;
  o.result = {{"method", to_string(r.method)},
              {"check_expected_age", exact(r.numerator)},
              {"optimal_expected_age", exact(r.denominator)},
              {"ratio", exact(r.ratio)},
              {"closed_form_lower_bound", closed}};
  o.human = "check policy expected age   " + show(r.numerator) +
            "\noptimal expected age        " + show(r.denominator) +
            "\nempirical lower bound       " + show(r.ratio) + " [" + to_string(r.method) + "]" +
            "\nclosed-form lower bound     " + sig6(closed) + "\n";
  if (r.method == ExpectationMethod::MonteCarlo) {
    o.result["samples"] = r.samples;
    o.result["optimal_std_error"] = r.denominatorStdError;
  }
  return o;
}

Outcome audit_mode(const ExperimentConfig& c) {
  if (c.grid != "default") throw ValidationError("unknown grid '" + c.grid + "'");
  const auto rows = audit_formulas(default_audit_grid(), c.workers);
  std::ostringstream csv;
  write_audit_csv(csv, rows);
  std::map<std::string, int> counts;
  for (const auto& r : rows) ++counts[to_string(r.verdict)];

  Outcome o;
  o.result = {{"rows", rows.size()}, {"verdicts", counts}};
  o.fileBody = csv.str();
  if (c.out) {
    o.human = std::to_string(rows.size()) + " audit rows:";
    for (const auto& [verdict, n] : counts) o.human += " " + verdict + "=" + std::to_string(n);
    o.human += "\n";
  } else {
    o.human = o.fileBody;
  }
  return o;
}

Outcome search_best_mode(const ExperimentConfig& c) {
  const auto best = best_deterministic_under_P1(c.params, c.singleUpdate, c.searchCap);
  Outcome o;
  o.result = {{"schedule", best.schedule.to_string()},
              {"expected_age", exact(best.expectation.mean)},
              {"candidates", best.candidates},
              {"counterexample", best.counterexample}};
  o.human = "best schedule " + best.schedule.to_string() + "\nexpected average age " +
            show(best.expectation.mean) + "\n";
  if (best.checkExpectation) {
    const auto check = build_check_policy(c.params);
    o.result["check_schedule"] = check.to_string();
    o.result["check_expected_age"] = exact(best.checkExpectation->mean);
    o.human += "check policy  " + check.to_string() + "\nexpected average age " +
               show(best.checkExpectation->mean) + "\n";
    if (best.counterexample) o.human += "the search beat the check policy\n";
  }
  return o;
}

Outcome execute(const ExperimentConfig& c) {
  validate_config(c);
  switch (c.mode) {
    case Mode::Simulate: return simulate_mode(c);
    case Mode::Expect: return expect_mode(c);
    case Mode::Ratio: return ratio_mode(c);
    case Mode::Worst: return worst_mode(c);
    case Mode::Oracle: return oracle_mode(c);
    case Mode::Yao: return yao_mode(c);
    case Mode::Audit: return audit_mode(c);
    case Mode::SearchBest: return search_best_mode(c);
  }
  throw Error("unhandled mode");
}

json metadata(const ExperimentConfig& c) {
  json m = {{"tool", "aoi"},
            {"version", version()},
            {"command", to_string(c.mode)},
            {"params", {{"T", c.params.T}, {"T1", c.params.T1}, {"T2", c.params.T2}}},
            {"policy", c.policy.name == "schedule" ? c.policy.schedule : c.policy.name},
            {"adversary", c.adversary.kind == "explicit" ? c.adversary.bits : c.adversary.kind},
            {"p", to_fraction_string(c.p)},
            {"seed", c.seed},
            {"caps", {{"enumeration", c.cap}, {"search", c.searchCap}}},
            {"single_update_constraint", c.singleUpdate},
            {"samples", c.samples}};
  if (c.method) m["method"] = to_string(*c.method);
  return m;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << body;
  if (!f) throw Error("write failed for " + path.string());
}

}  // namespace

json build_report(const ExperimentConfig& config) {
  auto report = metadata(config);
  report["result"] = execute(config).result;
  return report;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto outcome = execute(config);
    out << outcome.human;
    if (config.trace && config.mode == Mode::Simulate) write_file(*config.trace, outcome.trace);
    if (config.out) {
      if (config.mode == Mode::Audit) {
        write_file(*config.out, outcome.fileBody);
      } else {
        auto report = metadata(config);
        report["result"] = outcome.result;
        write_file(*config.out, report.dump(2) + "\n");
      }
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace aoi::cli
