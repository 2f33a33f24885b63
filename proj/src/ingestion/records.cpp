#include "chaingraph/ingestion/records.hpp"

#include <fstream>

#include "chaingraph/error.hpp"
#include "chaingraph/keccak.hpp"

namespace chaingraph::ingestion {

namespace {

std::vector<std::string> string_list(const nlohmann::json& doc, const char* key) {
  std::vector<std::string> out;
  if (!doc.contains(key)) return out;
  const auto& v = doc.at(key);
  if (v.is_string()) {
    out.push_back(v.get<std::string>());
  } else {
    for (const auto& item : v) out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

AttributionRecord attribution_from_json(const nlohmann::json& doc) {
  AttributionRecord r;
  r.address = Address::from_hex(doc.at("address").get<std::string>());
  r.label = doc.at("label").get<std::string>();
  std::string tag = doc.at("tag").get<std::string>();
  auto kind = semantics::tag_kind_from_string(tag);
  using semantics::TagKind;
  if (!kind || (*kind != TagKind::Exchange && *kind != TagKind::DepositAddress && *kind != TagKind::KnownEntity)) {
    throw ValidationError("attribution tag must be exchange, deposit_address or known_entity, got '" + tag + "'");
  }
  r.tag = *kind;
  r.provenance = doc.value("provenance", std::string{});
  return r;
}

nlohmann::json to_json(const AttributionRecord& record) {
  return {{"address", record.address.hex_prefixed()},
          {"label", record.label},
          {"tag", std::string(semantics::to_string(record.tag))},
          {"provenance", record.provenance}};
}

std::string content_hash(const AttributionRecord& record) {
  return keccak256(std::string_view(to_json(record).dump())).hex();
}

std::map<std::string, EnrichmentRecord> enrichment_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("enrichment document must be an object keyed by username");
  std::map<std::string, EnrichmentRecord> out;
  for (const auto& [username, entry] : doc.items()) {
    EnrichmentRecord r;
    r.username = username;
    r.name = entry.value("name", std::string{});
    r.description = entry.value("description", std::string{});
    r.affiliations = string_list(entry, "affiliations");
    r.links = string_list(entry, "links");
    out.emplace(username, std::move(r));
  }
  return out;
}

ProjectRecord project_from_json(const nlohmann::json& doc) {
  ProjectRecord p;
  p.name = doc.at("name").get<std::string>();
  p.contract = Address::from_hex(doc.at("contract").get<std::string>());
  p.launch_date = doc.at("launch_date").get<std::string>();
  const auto& profit = doc.at("estimated_profit_usd");
  p.estimated_profit_usd = profit.is_string() ? profit.get<std::string>() : profit.dump();
  p.provenance = doc.value("provenance", std::string{});
  if (p.name.empty()) throw ValidationError("project name is empty");
  if (p.launch_date.size() != 10 || p.launch_date[4] != '-' || p.launch_date[7] != '-') {
    throw ValidationError("launch_date must be YYYY-MM-DD, got '" + p.launch_date + "'");
  }
  return p;
}

void read_jsonl(const std::string& path, const std::function<void(const nlohmann::json&, std::size_t)>& on_line) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      on_line(nlohmann::json::parse(line), number);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what(), number);
    } catch (const std::exception& e) {
      throw ParseError(path + ": " + e.what(), number);
    }
  }
}

std::vector<semantics::ChainTransaction> load_chain(const std::string& path) {
  std::vector<semantics::ChainTransaction> out;
  read_jsonl(path, [&](const nlohmann::json& doc, std::size_t) { out.push_back(semantics::transaction_from_json(doc)); });
  return out;
}

std::vector<AttributionRecord> load_attributions(const std::string& path) {
  std::vector<AttributionRecord> out;
  read_jsonl(path, [&](const nlohmann::json& doc, std::size_t) { out.push_back(attribution_from_json(doc)); });
  return out;
}

std::vector<ProjectRecord> load_projects(const std::string& path) {
  std::vector<ProjectRecord> out;
  read_jsonl(path, [&](const nlohmann::json& doc, std::size_t) { out.push_back(project_from_json(doc)); });
  return out;
}

}  // namespace chaingraph::ingestion
