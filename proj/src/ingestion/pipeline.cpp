#include "chaingraph/ingestion/pipeline.hpp"

#include <atomic>
#include <exception>
#include <thread>

#include <spdlog/spdlog.h>

#include "chaingraph/error.hpp"
#include "chaingraph/ingestion/mapping.hpp"
#include "chaingraph/ingestion/sources.hpp"
#include "chaingraph/resolution/deposit_clustering.hpp"
#include "chaingraph/resolution/resolution.hpp"
#include "chaingraph/semantics/relations.hpp"
#include "chaingraph/text/extract.hpp"

namespace chaingraph::ingestion {

namespace fs = std::filesystem;
using namespace kg::vocab;

namespace {

/// Runs `produce` on its own thread, closing the channel when it returns and
/// capturing any exception for the consumer.
template <typename T>
class Producer {
 public:
  template <typename F>
  Producer(BoundedChannel<T>& channel, F produce)
      : thread_([this, &channel, produce = std::move(produce)] {
          try {
            produce();
          } catch (...) {
            error_ = std::current_exception();
          }
          channel.close();
        }) {}

  ~Producer() {
    if (thread_.joinable()) thread_.join();
  }

  void join() {
    if (thread_.joinable()) thread_.join();
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
  std::thread thread_;
};

/// Enforces strictly increasing sequence numbers per source.
class SequenceCheck {
 public:
  template <typename P>
  void observe(const SourceEnvelope<P>& env) {
    auto& last = last_[env.source_id];
    if (env.sequence <= last) {
      throw Error("source " + env.source_id + " delivered sequence " + std::to_string(env.sequence) + " after " +
                  std::to_string(last));
    }
    last = env.sequence;
  }

 private:
  std::map<std::string, std::uint64_t> last_;
};

bool seen(const kg::Store& store, const kg::Iri& node, const kg::Literal& key) {
  return store.contains({node, prov_derived_from(), key});
}

}  // namespace

Pipeline::Pipeline(kg::Store& store, Config config, FixturePaths paths)
    : store_(store), config_(std::move(config)), paths_(std::move(paths)) {
  config_.validate();
  if (!fs::is_directory(paths_.root)) throw Error("fixtures directory " + paths_.root.string() + " not found");
}

IngestReport Pipeline::run() {
  IngestReport report;
  const std::size_t size_before = store_.size();
  const Names names(config_.base_namespace);

  semantics::ContractRegistry registry;
  if (fs::exists(paths_.contracts())) registry = semantics::ContractRegistry::load_file(paths_.contracts().string());
  abi::SignatureDictionary dictionary;
  if (fs::exists(paths_.signatures())) dictionary = abi::SignatureDictionary::load_file(paths_.signatures().string());

  std::vector<std::shared_ptr<semantics::AbiProvider>> providers;
  for (const auto& name : config_.abi_providers) {
    if (name == "registry") {
      providers.push_back(std::make_shared<semantics::RegistryAbiProvider>(registry));
    } else if (fs::is_directory(paths_.abi_dir(name))) {
      providers.push_back(std::make_shared<semantics::DirectoryAbiProvider>(name, paths_.abi_dir(name).string()));
    } else {
      spdlog::debug("ABI provider {} has no fixture directory; skipped", name);
    }
  }
  semantics::AbiResolver resolver(registry, providers);
  semantics::TransactionClassifier classifier(registry, resolver, dictionary);

  std::unique_ptr<EnrichmentClient> enrichment;
  if (fs::exists(paths_.enrichment())) {
    enrichment = std::make_unique<FixtureEnrichmentClient>(FixtureEnrichmentClient::load_file(paths_.enrichment().string()));
  }
  std::atomic<std::size_t> enriched{0};
  kg::Subscription subscription;
  if (enrichment) {
    const int attempts = config_.ingestion.enrichment_retries;
    subscription = store_.subscribe([&, attempts](const kg::EntityAddedEvent& event) {
      enriched += enrich_on_entity(event, store_, *enrichment, attempts);
    });
  }

  const std::size_t capacity = config_.ingestion.channel_capacity;
  BoundedChannel<SourceEnvelope<AttributionRecord>> attribution_channel(capacity);
  BoundedChannel<SourceEnvelope<semantics::ChainTransaction>> chain_channel(capacity);
  BoundedChannel<SourceEnvelope<text::SocialPost>> social_channel(capacity);

  Producer<SourceEnvelope<AttributionRecord>> attribution_producer(attribution_channel, [&] {
    AttributionPoller poller(paths_.attributions().string());
    auto interval = std::chrono::milliseconds(static_cast<std::int64_t>(config_.ingestion.poll_interval_seconds * 1000));
    poller.run(interval, config_.ingestion.poll_cycles, [&](auto env) { attribution_channel.push(std::move(env)); });
  });
  Producer<SourceEnvelope<semantics::ChainTransaction>> chain_producer(chain_channel, [&] {
    if (!fs::exists(paths_.chain())) throw Error("chain fixture " + paths_.chain().string() + " not found");
    replay_chain(paths_.chain().string(), [&](auto env) { chain_channel.push(std::move(env)); });
  });
  Producer<SourceEnvelope<text::SocialPost>> social_producer(social_channel, [&] {
    if (!fs::exists(paths_.social())) return;
    stream_social(paths_.social().string(), config_.ingestion.social_filters,
                  [&](auto env) { social_channel.push(std::move(env)); });
  });

  // Close every channel on failure so blocked producers can exit.
  auto close_all = [&] {
    attribution_channel.close();
    chain_channel.close();
    social_channel.close();
  };
  SequenceCheck order;

  try {
    // Periodic attributions.
    std::set<Address> exchanges;
    while (auto env = attribution_channel.pop()) {
      order.observe(*env);
      ++report.attributions_delivered;
      if (env->payload.tag == semantics::TagKind::Exchange) exchanges.insert(env->payload.address);
      store_.insert(attribution_triples(env->payload, names));
    }
    attribution_producer.join();
    for (const auto& t : store_.match(std::nullopt, pred("tagged"), kg::Term{kg::Literal::text("exchange")})) {
      if (auto a = names.address_of(t.subject)) exchanges.insert(*a);
    }

    // Project metadata.
    if (fs::exists(paths_.projects())) {
      for (const auto& project : load_projects(paths_.projects().string())) {
        ++report.projects_delivered;
        auto triples = project_triples(project, names);
        resolution::resolve({names.project(project.name), cls("Project"), triples}, store_, config_.resolution);
      }
    }

    // Continuous chain transactions.
    std::vector<semantics::ChainTransaction> transactions;
    while (auto env = chain_channel.pop()) {
      order.observe(*env);
      ++report.chain_delivered;
      const auto& tx = env->payload;
      if (seen(store_, names.tx(tx.hash), provenance_key("chain", tx.hash.hex_prefixed()))) {
        ++report.skipped_seen;
      } else {
        auto kind = classifier.classify(tx);
        auto edges = semantics::extract_relations(tx, kind, config_.semantics);
        auto triples = transaction_triples(tx, edges, registry, names);
        auto tags = tag_triples(semantics::tag_addresses(edges), names);
        triples.insert(triples.end(), tags.begin(), tags.end());
        store_.insert(triples);
        spdlog::debug("tx {}: {}", tx.hash.hex_prefixed(), semantics::describe(kind));
      }
      transactions.push_back(std::move(env->payload));
    }
    chain_producer.join();

    // Deposit-address-reuse clustering over everything replayed.
    auto clusters = resolution::cluster_deposit_reuse(transactions, exchanges, config_.resolution.deposit_forward_fraction);
    report.clusters = clusters.size();
    for (const auto& cluster : clusters) store_.insert(cluster_triples(cluster, names));

    // Incremental social posts.
    text::ProjectDictionary projects;
    if (fs::exists(paths_.project_names())) projects.load_file(paths_.project_names().string());
    projects.add_from_store(store_);
    while (auto env = social_channel.pop()) {
      order.observe(*env);
      ++report.social_delivered;
      const auto& post = env->payload;
      const kg::Iri post_iri = names.x_post(post.id);
      const kg::Literal key = provenance_key("social", post.id);
      if (seen(store_, post_iri, key)) {
        ++report.skipped_seen;
        continue;
      }
      auto entities = text::recognize_entities(post.text, projects);
      auto relations = text::extract_post_relations(post, entities, config_.text);
      auto triples = text::post_to_triples(post, relations, names);
      const kg::Iri author = names.x_account(text::normalize(text::EntityKind::UsernameMention, post.author_username));
      triples.push_back({post_iri, prov_derived_from(), key});
      triples.push_back({author, prov_derived_from(), key});
      resolution::resolve({author, cls("XAccount"), triples}, store_, config_.resolution);
    }
    social_producer.join();
  } catch (...) {
    close_all();
    throw;
  }

  subscription.drain();
  subscription.reset();
  report.enrichment_triples = enriched.load();
  report.triples_added = store_.size() - size_before;
  report.revision = store_.revision();
  spdlog::info("ingest: {} chain, {} social, {} attributions, {} projects, {} clusters, {} new triples",
               report.chain_delivered, report.social_delivered, report.attributions_delivered,
               report.projects_delivered, report.clusters, report.triples_added);
  return report;
}

}  // namespace chaingraph::ingestion
