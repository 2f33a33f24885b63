#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "chaingraph/config.hpp"
#include "chaingraph/kg/store.hpp"

namespace chaingraph::ingestion {

/// File layout of a fixtures directory. Only the chain file is required.
struct FixturePaths {
  std::filesystem::path root;

  std::filesystem::path chain() const { return root / "chain.jsonl"; }
  std::filesystem::path social() const { return root / "social.jsonl"; }
  std::filesystem::path attributions() const { return root / "attributions.jsonl"; }
  std::filesystem::path projects() const { return root / "projects.jsonl"; }
  std::filesystem::path enrichment() const { return root / "enrichment.json"; }
  std::filesystem::path contracts() const { return root / "contracts.json"; }
  std::filesystem::path signatures() const { return root / "signatures.txt"; }
  std::filesystem::path project_names() const { return root / "project_names.txt"; }
  /// `<root>/abi/<provider>/<0xaddress>.json`
  std::filesystem::path abi_dir(const std::string& provider) const { return root / "abi" / provider; }
};

struct IngestReport {
  std::size_t chain_delivered = 0;
  std::size_t social_delivered = 0;
  std::size_t attributions_delivered = 0;
  std::size_t projects_delivered = 0;
  /// Records whose provenance key was already in the store.
  std::size_t skipped_seen = 0;
  std::size_t clusters = 0;
  std::size_t enrichment_triples = 0;
  std::size_t triples_added = 0;
  std::uint64_t revision = 0;
};

/// Runs the chain, social and attribution sources as concurrent producers
/// feeding bounded channels, with enrichment driven by entity-added events.
/// The calling thread is the only store writer apart from the enrichment
/// subscriber. Stages are consumed in a fixed order (attributions, projects,
/// chain, clustering, social) so the resulting graph is deterministic.
class Pipeline {
 public:
  Pipeline(kg::Store& store, Config config, FixturePaths paths);

  IngestReport run();

 private:
  kg::Store& store_;
  Config config_;
  FixturePaths paths_;
};

}  // namespace chaingraph::ingestion
