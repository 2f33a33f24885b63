#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chaingraph/ingestion/records.hpp"
#include "chaingraph/kg/store.hpp"
#include "chaingraph/kg/vocabulary.hpp"
#include "chaingraph/semantics/transaction.hpp"
#include "chaingraph/text/extract.hpp"

namespace chaingraph::ingestion {

/// FIFO with a fixed capacity. `push` blocks while full; `pop` blocks while
/// empty and returns nullopt once the channel is closed and drained.
template <typename T>
class BoundedChannel {
 public:
  explicit BoundedChannel(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

  /// Returns false if the channel was closed.
  bool push(T value) {
    std::unique_lock lock(mutex_);
    not_full_.wait(lock, [&] { return closed_ || items_.size() < capacity_; });
    if (closed_) return false;
    items_.push_back(std::move(value));
    not_empty_.notify_one();
    return true;
  }

  std::optional<T> pop() {
    std::unique_lock lock(mutex_);
    not_empty_.wait(lock, [&] { return closed_ || !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    T value = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return value;
  }

  void close() {
    std::lock_guard lock(mutex_);
    closed_ = true;
    not_empty_.notify_all();
    not_full_.notify_all();
  }

  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::mutex mutex_;
  std::condition_variable not_full_;
  std::condition_variable not_empty_;
  std::deque<T> items_;
  bool closed_ = false;
};

template <typename Payload>
using Sink = std::function<void(SourceEnvelope<Payload>)>;

std::int64_t now_unix();

/// Delivers the chain fixture in (block_number, file order). Returns the
/// number delivered. Malformed lines abort with a ParseError naming the line.
std::size_t replay_chain(const std::string& path, const Sink<semantics::ChainTransaction>& sink,
                         const std::string& source_id = "chain");

/// True if `filters` is empty or any filter occurs in the text
/// (case-insensitive).
bool matches_filters(const text::SocialPost& post, const std::vector<std::string>& filters);

/// Delivers matching posts in created_at order (ties keep file order).
std::size_t stream_social(const std::string& path, const std::vector<std::string>& filters,
                          const Sink<text::SocialPost>& sink, const std::string& source_id = "social");

/// Periodic attribution import. Each cycle re-reads the file and delivers
/// only records whose content hash has not been seen.
class AttributionPoller {
 public:
  explicit AttributionPoller(std::string path, std::string source_id = "attributions")
      : path_(std::move(path)), source_id_(std::move(source_id)) {}

  /// A missing file logs a warning and delivers nothing.
  std::size_t poll_once(const Sink<AttributionRecord>& sink);
  /// Runs `cycles` polls, sleeping `interval` between consecutive ones.
  /// Returns the per-cycle delivered counts.
  std::vector<std::size_t> run(std::chrono::milliseconds interval, std::size_t cycles,
                               const Sink<AttributionRecord>& sink);

 private:
  std::string path_;
  std::string source_id_;
  std::set<std::string> seen_;
  std::uint64_t sequence_ = 0;
};

/// Background-knowledge lookup keyed by X username. Returns nullopt on a
/// miss; throws TransportError when the service is unreachable.
class EnrichmentClient {
 public:
  virtual ~EnrichmentClient() = default;
  virtual std::optional<EnrichmentRecord> lookup(const std::string& username) = 0;
};

/// Serves the enrichment fixture; usernames compare case-insensitively.
class FixtureEnrichmentClient final : public EnrichmentClient {
 public:
  explicit FixtureEnrichmentClient(std::map<std::string, EnrichmentRecord> records);
  static FixtureEnrichmentClient load_file(const std::string& path);
  std::optional<EnrichmentRecord> lookup(const std::string& username) override;

 private:
  std::map<std::string, EnrichmentRecord> records_;
};

/// Username behind an XAccount IRI: its rdfs:label if any, else the last
/// path segment.
std::string account_username(const kg::Iri& account, const kg::Store& store);

/// Triples describing an enriched account; each carries provenance.
std::vector<kg::Triple> enrichment_triples(const kg::Iri& account, const EnrichmentRecord& record);

/// Handles an entity-added event: XAccounts are looked up by username and
/// the record's name, description, affiliations and links are attached.
/// Other classes and misses add nothing. Transport failures are retried up
/// to `attempts` times, then skipped with a warning. Returns triples added.
std::size_t enrich_on_entity(const kg::EntityAddedEvent& event, kg::Store& store, EnrichmentClient& client,
                             int attempts = 3);

/// Live-source contract mirrored by the fixture replays: `connect` opens the
/// feed, `next` yields the next envelope (nullopt at end of stream) and
/// `ack` confirms it was durably processed.
template <typename Payload>
class LiveSource {
 public:
  virtual ~LiveSource() = default;
  virtual void connect() = 0;
  virtual std::optional<SourceEnvelope<Payload>> next() = 0;
  virtual void ack(std::uint64_t sequence) = 0;
};

/// In-memory LiveSource over a fixed list of payloads.
template <typename Payload>
class FixtureLiveSource final : public LiveSource<Payload> {
 public:
  FixtureLiveSource(std::string source_id, std::vector<Payload> items)
      : source_id_(std::move(source_id)), items_(std::move(items)) {}

  void connect() override {
    connected_ = true;
    position_ = acked_;
  }

  std::optional<SourceEnvelope<Payload>> next() override {
    if (!connected_) throw Error("source " + source_id_ + " is not connected");
    if (position_ >= items_.size()) return std::nullopt;
    SourceEnvelope<Payload> env{source_id_, position_ + 1, items_[position_], now_unix()};
    ++position_;
    return env;
  }

  /// Reconnecting resumes after the highest acknowledged sequence.
  void ack(std::uint64_t sequence) override {
    if (sequence > acked_ && sequence <= position_) acked_ = sequence;
  }

  std::uint64_t acked() const { return acked_; }

 private:
  std::string source_id_;
  std::vector<Payload> items_;
  std::uint64_t position_ = 0;
  std::uint64_t acked_ = 0;
  bool connected_ = false;
};

}  // namespace chaingraph::ingestion
