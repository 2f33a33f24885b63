#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "chaingraph/kg/term.hpp"

namespace chaingraph::kg {

struct Variable {
  std::string name;
  auto operator<=>(const Variable&) const = default;
};

using PatternTerm = std::variant<Variable, Term>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

using Binding = std::map<std::string, Term>;

struct EntityAddedEvent {
  Iri entity;
  Iri entity_class;
  std::uint64_t revision = 0;
};

using EventConsumer = std::function<void(const EntityAddedEvent&)>;

namespace detail {
class Subscriber;
}

class Store;

/// Live subscription to entity-added events. Events are delivered on a
/// dedicated thread, in revision order. Destroying the handle unsubscribes.
class Subscription {
 public:
  Subscription() = default;
  Subscription(Subscription&&) noexcept;
  Subscription& operator=(Subscription&&) noexcept;
  Subscription(const Subscription&) = delete;
  Subscription& operator=(const Subscription&) = delete;
  ~Subscription();

  /// Blocks until every event queued so far has been consumed.
  void drain() const;
  void reset();

 private:
  friend class Store;
  explicit Subscription(std::shared_ptr<detail::Subscriber> subscriber);
  std::shared_ptr<detail::Subscriber> subscriber_;
};

/// Set-semantics triple store with subject/predicate/object indexes.
/// One writer at a time; readers see a consistent revision.
class Store {
 public:
  Store();
  ~Store();
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  /// Inserts the triples that are not yet present and returns how many were
  /// new. Throws ValidationError (inserting nothing) if any predicate is
  /// outside the vocabulary.
  std::size_t insert(std::span<const Triple> triples);
  std::size_t insert(const Triple& triple);

  bool contains(const Triple& triple) const;
  std::size_t size() const;
  /// Incremented once per newly inserted triple.
  std::uint64_t revision() const;

  /// All triples, sorted.
  std::vector<Triple> triples() const;

  /// Triples matching the given constants (nullopt = wildcard).
  std::vector<Triple> match(const std::optional<Iri>& subject, const std::optional<Iri>& predicate,
                            const std::optional<Term>& object) const;

  /// True if the term occurs as subject or object of any triple.
  bool mentions(const Term& term) const;

  /// Conjunctive evaluation with index-backed joins. Returns distinct
  /// bindings of every variable; order unspecified.
  std::vector<Binding> query(std::span<const TriplePattern> patterns) const;

  /// Live-only: no events for triples inserted before subscribing.
  Subscription subscribe(EventConsumer consumer);

 private:
  using TermId = std::uint32_t;
  using IdTriple = std::array<TermId, 3>;

  struct IdTripleHash {
    std::size_t operator()(const IdTriple& t) const noexcept {
      return (static_cast<std::size_t>(t[0]) * 0x9E3779B97F4A7C15ULL) ^
             (static_cast<std::size_t>(t[1]) * 0xC2B2AE3D27D4EB4FULL) ^ t[2];
    }
  };

  std::optional<TermId> lookup(const Term& term) const;
  TermId intern(const Term& term);
  Triple materialize(const IdTriple& t) const;
  const std::vector<std::uint32_t>* postings(int position, TermId id) const;
  void publish(std::vector<EntityAddedEvent> events);

  mutable std::shared_mutex mutex_;
  std::unordered_map<Term, TermId, TermHash> ids_;
  std::vector<Term> terms_;
  std::vector<IdTriple> rows_;
  std::unordered_set<IdTriple, IdTripleHash> row_set_;
  std::array<std::unordered_map<TermId, std::vector<std::uint32_t>>, 3> index_;
  std::uint64_t revision_ = 0;
  TermId type_id_ = 0;

  std::mutex subscribers_mutex_;
  std::vector<std::weak_ptr<detail::Subscriber>> subscribers_;
};

}  // namespace chaingraph::kg
