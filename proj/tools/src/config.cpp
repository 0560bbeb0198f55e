#include "aoi/cli/config.hpp"

#include <array>
#include <fstream>
#include <utility>

#include "aoi/error.hpp"

namespace aoi::cli {

namespace {

constexpr std::array<std::pair<Mode, const char*>, 8> kModes{{
    {Mode::Simulate, "simulate"},
    {Mode::Expect, "expect"},
    {Mode::Ratio, "ratio"},
    {Mode::Worst, "worst"},
    {Mode::Oracle, "oracle"},
    {Mode::Yao, "yao"},
    {Mode::Audit, "audit"},
    {Mode::SearchBest, "search-best"},
}};

constexpr std::array<const char*, 5> kPolicies{"hat", "check", "clairvoyant", "idle", "uniform"};
constexpr std::array<const char*, 5> kAdversaries{"zeros", "ones", "bernoulli", "enumerate",
                                                  "worst"};

bool only_chars(const std::string& s, std::string_view allowed) {
  return !s.empty() && s.find_first_not_of(allowed) == std::string::npos;
}

Rational json_rational(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return make_rational(v.get<std::int64_t>());
  if (v.is_number()) return parse_rational(v.dump());
  throw ValidationError("p must be a number or a fraction string");
}

template <class T>
T field(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string to_string(Mode mode) {
  for (const auto& [m, name] : kModes) {
    if (m == mode) return name;
  }
  return "unknown";
}

Mode parse_mode(const std::string& text) {
  for (const auto& [m, name] : kModes) {
    if (text == name) return m;
  }
  throw ValidationError("unknown mode '" + text + "'");
}

PolicySpec parse_policy(const std::string& text) {
  for (const char* name : kPolicies) {
    if (text == name) return {text, {}};
  }
  if (only_chars(text, ".CU")) return {"schedule", text};
  throw ValidationError("unknown policy '" + text + "'");
}

AdversarySpec parse_adversary(const std::string& text) {
  for (const char* name : kAdversaries) {
    if (text == name) return {text, {}};
  }
  if (only_chars(text, "01")) return {"explicit", text};
  throw ValidationError("unknown adversary '" + text + "'");
}

ExperimentConfig config_from_json(const nlohmann::json& doc, bool validate) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  ExperimentConfig c;
  if (doc.contains("mode")) c.mode = parse_mode(field<std::string>(doc, "mode", ""));
  c.params.T = field(doc, "T", 0);
  c.params.T1 = field(doc, "T1", 0);
  c.params.T2 = field(doc, "T2", 0);
  if (doc.contains("policy")) c.policy = parse_policy(field<std::string>(doc, "policy", ""));
  if (doc.contains("schedule")) c.policy = {"schedule", field<std::string>(doc, "schedule", "")};
  if (doc.contains("adversary")) {
    c.adversary = parse_adversary(field<std::string>(doc, "adversary", ""));
  }
  if (doc.contains("p")) c.p = json_rational(doc.at("p"));
  c.seed = field(doc, "seed", c.seed);
  c.cap = field(doc, "cap", c.cap);
  c.searchCap = field(doc, "search_cap", c.searchCap);
  c.singleUpdate = field(doc, "single_update_constraint", c.singleUpdate);
  if (doc.contains("method")) {
    c.method = parse_expectation_method(field<std::string>(doc, "method", ""));
  }
  c.samples = field(doc, "samples", c.samples);
  c.workers = field(doc, "workers", c.workers);
  c.grid = field(doc, "grid", c.grid);
  if (doc.contains("out")) c.out = field<std::string>(doc, "out", "");
  if (doc.contains("trace")) c.trace = field<std::string>(doc, "trace", "");
  if (validate) validate_config(c);
  return c;
}

nlohmann::json load_config_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("malformed config " + path.string() + ": " + e.what());
  }
  return doc;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  return config_from_json(load_config_document(path));
}

void validate_config(const ExperimentConfig& c) {
  if (c.mode != Mode::Audit) {
    if (auto report = validate_instance(c.params); !report) {
      throw ValidationError("invalid instance (" + to_string(c.params) + "): " + report.summary());
    }
    if (c.policy.name == "schedule" &&
        static_cast<int>(c.policy.schedule.size()) != c.params.T) {
      throw ValidationError("schedule '" + c.policy.schedule + "' has length " +
                            std::to_string(c.policy.schedule.size()) + ", T is " +
                            std::to_string(c.params.T));
    }
    if (c.adversary.kind == "explicit" && static_cast<int>(c.adversary.bits.size()) != c.params.T) {
      throw ValidationError("adversary sequence has length " +
                            std::to_string(c.adversary.bits.size()) + ", T is " +
                            std::to_string(c.params.T));
    }
  }
  if (c.cap < 1) throw ValidationError("cap must be positive");
  if (c.searchCap < 1) throw ValidationError("search cap must be positive");
  if (c.samples < 1) throw ValidationError("samples must be positive");
  if (c.workers < 1) throw ValidationError("workers must be positive");
  if (c.p < 0 || c.p > 1) throw ValidationError("p must lie in [0,1]");
}

}  // namespace aoi::cli
