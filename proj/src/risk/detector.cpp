#include "chaingraph/risk/detector.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "chaingraph/error.hpp"
#include "chaingraph/kg/vocabulary.hpp"
#include "chaingraph/semantics/relations.hpp"

namespace chaingraph::risk {

using namespace kg::vocab;

namespace {

std::vector<kg::Triple> sorted_unique(std::vector<kg::Triple> triples) {
  std::vector<std::pair<std::string, kg::Triple>> keyed;
  for (auto& t : triples) keyed.emplace_back(kg::to_ntriples(t), std::move(t));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  std::vector<kg::Triple> out;
  for (auto& [_, t] : keyed) out.push_back(std::move(t));
  return out;
}

std::vector<kg::Iri> subjects(std::vector<kg::Triple> triples) {
  std::vector<kg::Iri> out;
  for (auto& t : triples) out.push_back(std::move(t.subject));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<kg::Iri> iri_objects(const std::vector<kg::Triple>& triples) {
  std::vector<kg::Iri> out;
  for (const auto& t : triples) {
    if (const auto* iri = kg::as_iri(t.object)) out.push_back(*iri);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

kg::Literal deployer_tag() { return kg::Literal::text(std::string(semantics::to_string(semantics::TagKind::Deployer))); }

}  // namespace

std::string_view to_string(Pattern pattern) {
  switch (pattern) {
    case Pattern::ProceedsDiversion: return "F1_proceeds_diversion";
    case Pattern::SerialDeployer: return "F2_serial_deployer";
    case Pattern::SocialHistory: return "F3_social_history";
  }
  return "unknown";
}

std::string_view to_string(RiskLevel level) {
  switch (level) {
    case RiskLevel::None: return "none";
    case RiskLevel::Medium: return "medium";
    case RiskLevel::High: return "high";
  }
  return "unknown";
}

RiskLevel level_for(bool f1, bool f2, bool f3) {
  if (f1 || (f2 && f3)) return RiskLevel::High;
  if (f2 || f3) return RiskLevel::Medium;
  return RiskLevel::None;
}

bool RiskReport::has(Pattern pattern) const {
  return std::any_of(findings.begin(), findings.end(), [&](const Finding& f) { return f.pattern == pattern; });
}

std::vector<kg::Triple> proceeds_diversion(const kg::Iri& subject, const kg::Store& store) {
  std::vector<kg::Triple> evidence;
  for (const auto& to_edge : store.match(std::nullopt, ethon_to(), kg::Term{subject})) {
    const kg::Iri& tx = to_edge.subject;
    std::vector<kg::Triple> labels;
    for (const auto& l : store.match(tx, rdfs_label(), std::nullopt)) {
      const auto* lit = std::get_if<kg::Literal>(&l.object);
      if (lit && semantics::is_mint_label(lit->lexical)) labels.push_back(l);
    }
    if (labels.empty()) continue;
    for (const auto& proceeds : store.match(tx, pred("proceedsTo"), std::nullopt)) {
      const auto* recipient = kg::as_iri(proceeds.object);
      if (!recipient) continue;
      kg::Triple tagged{*recipient, pred("tagged"), deployer_tag()};
      if (!store.contains(tagged)) continue;
      evidence.push_back(to_edge);
      evidence.insert(evidence.end(), labels.begin(), labels.end());
      evidence.push_back(proceeds);
      evidence.push_back(tagged);
    }
  }
  return sorted_unique(std::move(evidence));
}

std::vector<kg::Triple> serial_deployer(const kg::Iri& subject, const kg::Store& store, int hop_bound) {
  const kg::Iri deployed = pred("deployed");
  const kg::Iri transferred = pred("transferredTo");

  // Deployers of the subject contract, or the subject itself if it deployed.
  std::vector<std::pair<kg::Iri, std::optional<kg::Triple>>> deployers;
  for (const auto& t : store.match(std::nullopt, deployed, kg::Term{subject})) deployers.emplace_back(t.subject, t);
  if (!store.match(subject, deployed, std::nullopt).empty()) deployers.emplace_back(subject, std::nullopt);
  std::sort(deployers.begin(), deployers.end());

  std::vector<kg::Triple> evidence;
  for (const auto& [deployer, deploy_edge] : deployers) {
    std::map<kg::Iri, kg::Triple> parent_edge;  // node -> edge (node transferredTo child)
    std::set<kg::Iri> visited{deployer};
    std::vector<kg::Iri> frontier{deployer};
    std::vector<kg::Iri> funders;
    for (int hop = 0; hop < hop_bound && !frontier.empty(); ++hop) {
      std::vector<kg::Iri> next;
      for (const auto& node : frontier) {
        for (const auto& edge : store.match(std::nullopt, transferred, kg::Term{node})) {
          if (!visited.insert(edge.subject).second) continue;
          parent_edge.emplace(edge.subject, edge);
          next.push_back(edge.subject);
        }
      }
      std::sort(next.begin(), next.end());
      for (const auto& candidate : next) {
        for (const auto& contract : iri_objects(store.match(candidate, deployed, std::nullopt))) {
          if (contract == subject) continue;
          funders.push_back(candidate);
          evidence.push_back({candidate, deployed, contract});
        }
      }
      frontier = std::move(next);
    }
    for (const auto& funder : funders) {
      for (kg::Iri node = funder; node != deployer;) {
        const kg::Triple& edge = parent_edge.at(node);
        evidence.push_back(edge);
        node = std::get<kg::Iri>(edge.object);
      }
    }
    if (!funders.empty() && deploy_edge) evidence.push_back(*deploy_edge);
  }
  return sorted_unique(std::move(evidence));
}

std::vector<kg::Triple> social_history(const kg::Iri& subject, const kg::Store& store, const RiskConfig& config) {
  const kg::Iri announced_by = pred("announcedBy");
  std::vector<kg::Triple> evidence;
  for (const auto& link : store.match(subject, announced_by, std::nullopt)) {
    const auto* account = kg::as_iri(link.object);
    if (!account) continue;
    std::vector<kg::Triple> flagged;
    for (const auto& other : subjects(store.match(std::nullopt, announced_by, kg::Term{*account}))) {
      if (other == subject) continue;
      if (proceeds_diversion(other, store).empty() && serial_deployer(other, store, config.hop_bound).empty()) {
        continue;
      }
      flagged.push_back({other, announced_by, *account});
    }
    if (static_cast<int>(flagged.size()) < config.serial_threshold) continue;
    evidence.push_back(link);
    evidence.insert(evidence.end(), flagged.begin(), flagged.end());
  }
  return sorted_unique(std::move(evidence));
}

RiskReport assess_address(const kg::Iri& subject, const kg::Store& store, const RiskConfig& config) {
  if (!store.mentions(kg::Term{subject})) throw NotFoundError("subject not in graph: " + subject.value);
  RiskReport report;
  report.subject = subject;
  report.revision = store.revision();
  auto add = [&](Pattern p, double severity, std::vector<kg::Triple> evidence) {
    if (!evidence.empty()) report.findings.push_back({p, severity, std::move(evidence)});
  };
  add(Pattern::ProceedsDiversion, 1.0, proceeds_diversion(subject, store));
  add(Pattern::SerialDeployer, 0.5, serial_deployer(subject, store, config.hop_bound));
  add(Pattern::SocialHistory, 0.5, social_history(subject, store, config));
  report.level = level_for(report.has(Pattern::ProceedsDiversion), report.has(Pattern::SerialDeployer),
                           report.has(Pattern::SocialHistory));
  return report;
}

std::string explain(const RiskReport& report) {
  std::string out = "level: " + std::string(to_string(report.level)) + "\n";
  for (const auto& f : report.findings) {
    out += "finding: " + std::string(to_string(f.pattern)) + "\n";
    for (const auto& t : f.evidence) out += "  " + kg::to_ntriples(t) + "\n";
  }
  return out;
}

nlohmann::json to_json(const RiskReport& report) {
  nlohmann::json findings = nlohmann::json::array();
  for (const auto& f : report.findings) {
    nlohmann::json evidence = nlohmann::json::array();
    for (const auto& t : f.evidence) evidence.push_back(kg::to_ntriples(t));
    findings.push_back({{"pattern", to_string(f.pattern)}, {"severity", f.severity}, {"evidence", evidence}});
  }
  return {{"subject", report.subject.value},
          {"level", to_string(report.level)},
          {"findings", findings},
          {"revision", report.revision}};
}

}  // namespace chaingraph::risk
