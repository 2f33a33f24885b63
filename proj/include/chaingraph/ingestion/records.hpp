#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaingraph/bytes.hpp"
#include "chaingraph/semantics/relations.hpp"

namespace chaingraph::ingestion {

template <typename Payload>
struct SourceEnvelope {
  std::string source_id;
  /// Strictly increasing per source, starting at 1.
  std::uint64_t sequence = 0;
  Payload payload;
  /// Wall-clock unix seconds at which the producer read the record.
  std::int64_t ingest_timestamp = 0;
};

struct AttributionRecord {
  Address address;
  std::string label;
  /// One of exchange, deposit_address, known_entity.
  semantics::TagKind tag = semantics::TagKind::KnownEntity;
  std::string provenance;

  bool operator==(const AttributionRecord&) const = default;
};

AttributionRecord attribution_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const AttributionRecord& record);
/// Hex keccak of the canonical JSON form; identifies a record across polls.
std::string content_hash(const AttributionRecord& record);

struct EnrichmentRecord {
  std::string username;
  std::string name;
  std::string description;
  std::vector<std::string> affiliations;
  std::vector<std::string> links;
};

/// Enrichment fixture: {"<username>": {name, description, affiliations, links}}.
std::map<std::string, EnrichmentRecord> enrichment_from_json(const nlohmann::json& doc);

/// Table-style project metadata: the contract the project launched and the
/// figures reported for it.
struct ProjectRecord {
  std::string name;
  Address contract;
  /// YYYY-MM-DD.
  std::string launch_date;
  /// Decimal USD text.
  std::string estimated_profit_usd;
  std::string provenance;
};

ProjectRecord project_from_json(const nlohmann::json& doc);

/// Reads a JSON-lines file, calling `on_line(doc, line_number)` for each
/// non-blank line. Parse failures and exceptions thrown by `on_line` are
/// rethrown as ParseError naming the file and line.
void read_jsonl(const std::string& path, const std::function<void(const nlohmann::json&, std::size_t)>& on_line);

std::vector<semantics::ChainTransaction> load_chain(const std::string& path);
std::vector<AttributionRecord> load_attributions(const std::string& path);
std::vector<ProjectRecord> load_projects(const std::string& path);

}  // namespace chaingraph::ingestion
