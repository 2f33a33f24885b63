#include "chaingraph/ingestion/sources.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <thread>

#include <spdlog/spdlog.h>

#include "chaingraph/error.hpp"

namespace chaingraph::ingestion {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::int64_t now_unix() {
  return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::size_t replay_chain(const std::string& path, const Sink<semantics::ChainTransaction>& sink,
                         const std::string& source_id) {
  auto txs = load_chain(path);
  std::stable_sort(txs.begin(), txs.end(), [](const auto& a, const auto& b) { return a.block_number < b.block_number; });
  std::uint64_t sequence = 0;
  for (auto& tx : txs) sink({source_id, ++sequence, std::move(tx), now_unix()});
  return txs.size();
}

bool matches_filters(const text::SocialPost& post, const std::vector<std::string>& filters) {
  if (filters.empty()) return true;
  const std::string folded = lower(post.text);
  return std::any_of(filters.begin(), filters.end(), [&](const std::string& f) {
    return !f.empty() && folded.find(lower(f)) != std::string::npos;
  });
}

std::size_t stream_social(const std::string& path, const std::vector<std::string>& filters,
                          const Sink<text::SocialPost>& sink, const std::string& source_id) {
  std::vector<text::SocialPost> posts;
  read_jsonl(path, [&](const nlohmann::json& doc, std::size_t) { posts.push_back(text::post_from_json(doc)); });
  std::stable_sort(posts.begin(), posts.end(),
                   [](const auto& a, const auto& b) { return a.created_at < b.created_at; });
  std::uint64_t sequence = 0;
  for (auto& post : posts) {
    if (!matches_filters(post, filters)) continue;
    sink({source_id, ++sequence, std::move(post), now_unix()});
  }
  return sequence;
}

std::size_t AttributionPoller::poll_once(const Sink<AttributionRecord>& sink) {
  if (!std::filesystem::exists(path_)) {
    spdlog::warn("attribution file {} not found; empty cycle", path_);
    return 0;
  }
  std::size_t delivered = 0;
  for (auto& record : load_attributions(path_)) {
    if (!seen_.insert(content_hash(record)).second) continue;
    sink({source_id_, ++sequence_, std::move(record), now_unix()});
    ++delivered;
  }
  return delivered;
}

std::vector<std::size_t> AttributionPoller::run(std::chrono::milliseconds interval, std::size_t cycles,
                                                const Sink<AttributionRecord>& sink) {
  std::vector<std::size_t> counts;
  auto next = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < cycles; ++i) {
    if (i > 0) {
      next += interval;
      std::this_thread::sleep_until(next);
    }
    counts.push_back(poll_once(sink));
  }
  return counts;
}

FixtureEnrichmentClient::FixtureEnrichmentClient(std::map<std::string, EnrichmentRecord> records) {
  for (auto& [username, record] : records) records_.emplace(lower(username), std::move(record));
}

FixtureEnrichmentClient FixtureEnrichmentClient::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open enrichment fixture " + path);
  try {
    return FixtureEnrichmentClient(enrichment_from_json(nlohmann::json::parse(in)));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::optional<EnrichmentRecord> FixtureEnrichmentClient::lookup(const std::string& username) {
  auto it = records_.find(lower(username));
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::string account_username(const kg::Iri& account, const kg::Store& store) {
  const std::string segment = account.value.substr(account.value.rfind('/') + 1);
  std::vector<std::string> labels;
  for (const auto& t : store.match(account, kg::vocab::rdfs_label(), std::nullopt)) {
    if (const auto* lit = std::get_if<kg::Literal>(&t.object)) labels.push_back(lit->lexical);
  }
  std::sort(labels.begin(), labels.end());
  for (const auto& label : labels) {
    if (kg::vocab::slug(label) == segment) return label;
  }
  return segment;
}

std::vector<kg::Triple> enrichment_triples(const kg::Iri& account, const EnrichmentRecord& record) {
  using namespace kg::vocab;
  std::vector<kg::Triple> out;
  if (!record.name.empty()) out.push_back({account, rdfs_label(), kg::Literal::text(record.name)});
  if (!record.description.empty()) out.push_back({account, rdfs_comment(), kg::Literal::text(record.description)});
  for (const auto& a : record.affiliations) {
    out.push_back({account, rdfs_comment(), kg::Literal::text("affiliation: " + a)});
  }
  const kg::Iri see_also(std::string(kRdfs) + "seeAlso");
  for (const auto& link : record.links) {
    try {
      out.push_back({account, see_also, kg::Iri(link)});
    } catch (const ValidationError&) {
      out.push_back({account, rdfs_comment(), kg::Literal::text("link: " + link)});
    }
  }
  if (!out.empty()) {
    out.push_back({account, prov_derived_from(), kg::Literal::text("enrichment#" + lower(record.username))});
  }
  return out;
}

std::size_t enrich_on_entity(const kg::EntityAddedEvent& event, kg::Store& store, EnrichmentClient& client,
                             int attempts) {
  if (event.entity_class != kg::vocab::cls("XAccount")) return 0;
  const std::string username = account_username(event.entity, store);
  for (int attempt = 1; attempt <= std::max(1, attempts); ++attempt) {
    try {
      auto record = client.lookup(username);
      if (!record) return 0;
      return store.insert(enrichment_triples(event.entity, *record));
    } catch (const TransportError& e) {
      spdlog::debug("enrichment lookup for {} failed (attempt {}): {}", username, attempt, e.what());
    }
  }
  spdlog::warn("enrichment for {} skipped after {} attempts", username, attempts);
  return 0;
}

}  // namespace chaingraph::ingestion
