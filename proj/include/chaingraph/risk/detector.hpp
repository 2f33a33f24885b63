#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaingraph/config.hpp"
#include "chaingraph/kg/store.hpp"
#include "chaingraph/kg/term.hpp"

namespace chaingraph::risk {

enum class Pattern { ProceedsDiversion, SerialDeployer, SocialHistory };

/// "F1_proceeds_diversion", "F2_serial_deployer", "F3_social_history".
std::string_view to_string(Pattern pattern);

struct Finding {
  Pattern pattern;
  double severity = 0;
  /// Sorted, non-empty; every triple is in the store at report time.
  std::vector<kg::Triple> evidence;
};

enum class RiskLevel { None, Medium, High };

std::string_view to_string(RiskLevel level);

/// High iff F1, or F2 and F3 together; medium iff exactly one of F2/F3
/// without F1; none otherwise.
RiskLevel level_for(bool f1, bool f2, bool f3);

struct RiskReport {
  kg::Iri subject;
  /// In pattern order, at most one per pattern.
  std::vector<Finding> findings;
  RiskLevel level = RiskLevel::None;
  std::uint64_t revision = 0;

  bool has(Pattern pattern) const;
};

/// Evaluates the three patterns for a contract or account IRI. Throws
/// NotFoundError when the subject does not occur in the store.
RiskReport assess_address(const kg::Iri& subject, const kg::Store& store, const RiskConfig& config = {});

/// Individual pattern checks; empty evidence means the pattern does not hold.
std::vector<kg::Triple> proceeds_diversion(const kg::Iri& subject, const kg::Store& store);
std::vector<kg::Triple> serial_deployer(const kg::Iri& subject, const kg::Store& store, int hop_bound);
std::vector<kg::Triple> social_history(const kg::Iri& subject, const kg::Store& store, const RiskConfig& config);

/// "level: <level>" followed by one block per finding with its evidence in
/// N-Triples form.
std::string explain(const RiskReport& report);

/// {subject, level, findings: [{pattern, severity, evidence: [ntriples]}], revision}
nlohmann::json to_json(const RiskReport& report);

}  // namespace chaingraph::risk
