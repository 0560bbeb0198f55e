#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "aoi/adversaries.hpp"
#include "aoi/dynamics.hpp"
#include "aoi/estimator.hpp"
#include "aoi/oracle.hpp"
#include "aoi/rational.hpp"

namespace aoi::cli {

enum class Mode { Simulate, Expect, Ratio, Worst, Oracle, Yao, Audit, SearchBest };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

/// A built-in policy name (hat, check, clairvoyant, idle, uniform) or an
/// explicit schedule string over ".CU".
struct PolicySpec {
  std::string name = "hat";
  std::string schedule;  ///< set when name == "schedule"
};

/// zeros, ones, bernoulli, enumerate, worst, or an explicit 0/1 string.
struct AdversarySpec {
  std::string kind = "zeros";
  std::string bits;  ///< set when kind == "explicit"
};

struct ExperimentConfig {
  Mode mode = Mode::Simulate;
  InstanceParams params;
  PolicySpec policy;
  AdversarySpec adversary;
  Rational p = make_rational(1, 2);
  std::uint64_t seed = 0;
  int cap = kDefaultEnumerationCap;
  std::uint64_t searchCap = kDefaultBruteForceCap;
  bool singleUpdate = true;
  std::optional<ExpectationMethod> method;  ///< per-mode default when unset
  std::uint64_t samples = 100'000;
  int workers = 1;
  std::string grid = "default";
  std::optional<std::filesystem::path> out;    ///< report (JSON, or CSV for audit)
  std::optional<std::filesystem::path> trace;  ///< per-slot CSV for simulate
};

PolicySpec parse_policy(const std::string& text);
AdversarySpec parse_adversary(const std::string& text);

/// Fields of a JSON config document; absent fields keep their defaults.
/// With `validate` off the caller is expected to call validate_config once
/// it has applied its own overrides.
ExperimentConfig config_from_json(const nlohmann::json& doc, bool validate = true);
nlohmann::json load_config_document(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Throws ValidationError on anything run() would reject up front.
void validate_config(const ExperimentConfig& config);

}  // namespace aoi::cli
