#include "chaingraph/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "chaingraph/error.hpp"

namespace chaingraph {

namespace {

template <typename T>
T get_as(std::string_view key, const nlohmann::json& value) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError("config key " + std::string(key) + ": unexpected value " + value.dump());
  }
}

std::vector<std::string> string_list(std::string_view key, const nlohmann::json& value) {
  if (value.is_string()) {
    // Comma-separated shorthand for command-line overrides.
    std::vector<std::string> out;
    std::string text = value.get<std::string>();
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t comma = text.find(',', start);
      if (comma == std::string::npos) comma = text.size();
      if (comma > start) out.push_back(text.substr(start, comma - start));
      start = comma + 1;
    }
    return out;
  }
  return get_as<std::vector<std::string>>(key, value);
}

void flatten(const nlohmann::json& doc, const std::string& prefix, std::vector<std::pair<std::string, nlohmann::json>>& out) {
  for (const auto& [k, v] : doc.items()) {
    std::string key = prefix.empty() ? k : prefix + "." + k;
    bool known = std::find(Config::keys().begin(), Config::keys().end(), key) != Config::keys().end();
    if (v.is_object() && !known) {
      flatten(v, key, out);
    } else {
      out.emplace_back(key, v);
    }
  }
}

}  // namespace

const std::vector<std::string>& Config::keys() {
  static const std::vector<std::string> k{
      "store.base_namespace",
      "abi.providers",
      "semantics.proceeds_threshold",
      "resolution.match_threshold",
      "resolution.property_weight",
      "resolution.deposit_forward_fraction",
      "resolution.block_cap",
      "text.launch_keywords",
      "risk.hop_bound",
      "risk.serial_threshold",
      "ingestion.poll_interval_seconds",
      "ingestion.poll_cycles",
      "ingestion.enrichment_retries",
      "ingestion.channel_capacity",
      "ingestion.social_filters",
  };
  return k;
}

void Config::set_json(std::string_view key, const nlohmann::json& v) {
  if (key == "store.base_namespace") {
    base_namespace = get_as<std::string>(key, v);
  } else if (key == "abi.providers") {
    abi_providers = string_list(key, v);
  } else if (key == "semantics.proceeds_threshold") {
    semantics.proceeds_threshold = get_as<double>(key, v);
  } else if (key == "resolution.match_threshold") {
    resolution.match_threshold = get_as<double>(key, v);
  } else if (key == "resolution.property_weight") {
    resolution.property_weight = get_as<double>(key, v);
  } else if (key == "resolution.deposit_forward_fraction") {
    resolution.deposit_forward_fraction = get_as<double>(key, v);
  } else if (key == "resolution.block_cap") {
    resolution.block_cap = get_as<std::size_t>(key, v);
  } else if (key == "text.launch_keywords") {
    text.launch_keywords = string_list(key, v);
  } else if (key == "risk.hop_bound") {
    risk.hop_bound = get_as<int>(key, v);
  } else if (key == "risk.serial_threshold") {
    risk.serial_threshold = get_as<int>(key, v);
  } else if (key == "ingestion.poll_interval_seconds") {
    ingestion.poll_interval_seconds = get_as<double>(key, v);
  } else if (key == "ingestion.poll_cycles") {
    ingestion.poll_cycles = get_as<std::size_t>(key, v);
  } else if (key == "ingestion.enrichment_retries") {
    ingestion.enrichment_retries = get_as<int>(key, v);
  } else if (key == "ingestion.channel_capacity") {
    ingestion.channel_capacity = get_as<std::size_t>(key, v);
  } else if (key == "ingestion.social_filters") {
    ingestion.social_filters = string_list(key, v);
  } else {
    throw ValidationError("unknown config key '" + std::string(key) + "'");
  }
}

void Config::set(std::string_view key, std::string_view value) {
  nlohmann::json parsed = nlohmann::json::parse(value, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) parsed = std::string(value);
  set_json(key, parsed);
  validate();
}

void Config::validate() const {
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!unit(semantics.proceeds_threshold) || semantics.proceeds_threshold == 0.0) {
    throw ValidationError("semantics.proceeds_threshold must be in (0, 1]");
  }
  if (!unit(resolution.match_threshold)) throw ValidationError("resolution.match_threshold must be in [0, 1]");
  if (!unit(resolution.property_weight)) throw ValidationError("resolution.property_weight must be in [0, 1]");
  if (!unit(resolution.deposit_forward_fraction)) {
    throw ValidationError("resolution.deposit_forward_fraction must be in [0, 1]");
  }
  if (risk.hop_bound < 1) throw ValidationError("risk.hop_bound must be at least 1");
  if (risk.serial_threshold < 1) throw ValidationError("risk.serial_threshold must be at least 1");
  if (ingestion.poll_interval_seconds < 0) throw ValidationError("ingestion.poll_interval_seconds must be >= 0");
  if (ingestion.enrichment_retries < 1) throw ValidationError("ingestion.enrichment_retries must be at least 1");
  if (ingestion.channel_capacity == 0) throw ValidationError("ingestion.channel_capacity must be positive");
  kg::vocab::Names check(base_namespace);
  (void)check;
}

Config Config::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  std::vector<std::pair<std::string, nlohmann::json>> entries;
  flatten(doc, "", entries);
  Config config;
  for (const auto& [key, value] : entries) config.set_json(key, value);
  config.validate();
  return config;
}

Config Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return from_json(doc);
}

bool verbose_from_environment() {
  const char* v = std::getenv("CHAINGRAPH_VERBOSE");
  return v != nullptr && *v != '\0' && std::string_view(v) != "0";
}

}  // namespace chaingraph
