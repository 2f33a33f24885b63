#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chaingraph/kg/store.hpp"
#include "chaingraph/kg/term.hpp"

namespace chaingraph::resolution {

struct ResolutionConfig {
  double match_threshold = 0.8;
  /// Weight of property similarity; relational similarity gets 1 - weight.
  double property_weight = 0.5;
  double deposit_forward_fraction = 0.99;
  std::size_t block_cap = 256;
};

/// An entity about to enter the graph: its proposed IRI, class, and the
/// triples that mention it (as subject or object).
struct PendingEntity {
  kg::Iri iri;
  kg::Iri entity_class;
  std::vector<kg::Triple> triples;
};

struct CandidateBlock {
  kg::Iri entity;
  kg::Iri entity_class;
  std::vector<kg::Iri> candidates;
};

struct MatchScore {
  kg::Iri entity;
  kg::Iri candidate;
  double property = 0;
  double relational = 0;
  double combined = 0;
  bool is_match = false;
};

/// Feature sets compared during matching. Properties are (predicate,
/// literal) pairs; relations are (predicate, neighbour IRI) pairs, with
/// incoming edges marked by a leading '^' on the predicate.
struct Features {
  std::set<std::pair<std::string, std::string>> properties;
  std::set<std::pair<std::string, std::string>> relations;
};

Features features_of(const kg::Iri& entity, const std::vector<kg::Triple>& triples);
Features features_in_store(const kg::Iri& entity, const kg::Store& store);

/// |a ∩ b| / |a ∪ b|; two empty sets are identical and score 1.
double jaccard(const std::set<std::pair<std::string, std::string>>& a,
               const std::set<std::pair<std::string, std::string>>& b);

/// Blocking key used for XAccounts: first three characters of the
/// lower-cased username.
std::string username_key(const kg::Iri& account);

/// Same-class entities (sharing the username key for XAccounts), excluding
/// the entity itself, truncated to `block_cap` in IRI order.
CandidateBlock block(const PendingEntity& entity, const kg::Store& store,
                     const ResolutionConfig& config = {});

/// Scores sorted by combined similarity descending, then candidate IRI.
std::vector<MatchScore> match_entity(const PendingEntity& entity, const CandidateBlock& candidates,
                                     const kg::Store& store, const ResolutionConfig& config = {});

/// Inserts the entity's triples under its canonical IRI and returns it. A
/// match above threshold links the entity via sameAs to the (canonical of
/// the) best candidate; ties resolve to the lowest IRI and leave an
/// open-review comment.
kg::Iri fuse(const PendingEntity& entity, const std::vector<MatchScore>& matches, kg::Store& store,
             const ResolutionConfig& config = {});

/// block + match + fuse.
kg::Iri resolve(const PendingEntity& entity, kg::Store& store, const ResolutionConfig& config = {});

}  // namespace chaingraph::resolution
