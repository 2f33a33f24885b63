#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaingraph/kg/vocabulary.hpp"
#include "chaingraph/resolution/resolution.hpp"
#include "chaingraph/semantics/relations.hpp"
#include "chaingraph/text/extract.hpp"

namespace chaingraph {

struct RiskConfig {
  /// Maximum transferredTo hops between two deployers.
  int hop_bound = 2;
  /// Other flagged contracts an announcer needs for the social-history pattern.
  int serial_threshold = 2;
};

struct IngestionConfig {
  double poll_interval_seconds = 1.0;
  std::size_t poll_cycles = 1;
  int enrichment_retries = 3;
  std::size_t channel_capacity = 64;
  /// Social stream filters; empty delivers every post.
  std::vector<std::string> social_filters;
};

/// Run configuration. The file is JSON using either nested objects or
/// dotted keys ("resolution.match_threshold"); unknown keys are rejected.
struct Config {
  std::string base_namespace{kg::vocab::kDefaultBase};
  std::vector<std::string> abi_providers{"registry", "etherscan", "sourcify"};
  semantics::SemanticsConfig semantics;
  resolution::ResolutionConfig resolution;
  text::TextConfig text;
  RiskConfig risk;
  IngestionConfig ingestion;

  static Config load_file(const std::string& path);
  static Config from_json(const nlohmann::json& doc);

  /// Applies one override; `value` is parsed as JSON, falling back to a
  /// plain string. Throws ValidationError for unknown keys or bad values.
  void set(std::string_view key, std::string_view value);
  void set_json(std::string_view key, const nlohmann::json& value);

  /// Throws ValidationError when a value is out of range.
  void validate() const;

  static const std::vector<std::string>& keys();
};

/// True when CHAINGRAPH_VERBOSE is set to a non-empty value other than "0".
bool verbose_from_environment();

}  // namespace chaingraph
