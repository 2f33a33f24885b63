#include "chaingraph/resolution/resolution.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "chaingraph/kg/vocabulary.hpp"

namespace chaingraph::resolution {

namespace {

bool ignored_predicate(const kg::Iri& p) {
  static const kg::Iri type = kg::vocab::rdf_type();
  static const kg::Iri same_as = kg::vocab::pred("sameAs");
  return p == type || p == same_as || p.value.starts_with(kg::vocab::kProv);
}

void add_feature(Features& f, const kg::Iri& entity, const kg::Triple& t) {
  if (ignored_predicate(t.predicate)) return;
  if (t.subject == entity) {
    if (const auto* iri = kg::as_iri(t.object)) {
      f.relations.emplace(t.predicate.value, iri->value);
    } else {
      f.properties.emplace(t.predicate.value, kg::to_ntriples(t.object));
    }
  } else if (const auto* obj = kg::as_iri(t.object); obj && *obj == entity) {
    f.relations.emplace("^" + t.predicate.value, t.subject.value);
  }
}

kg::Iri canonical_of(const kg::Iri& iri, const kg::Store& store) {
  static const kg::Iri same_as = kg::vocab::pred("sameAs");
  kg::Iri current = iri;
  std::set<kg::Iri> seen{current};
  for (;;) {
    auto next = store.match(current, same_as, std::nullopt);
    if (next.empty()) return current;
    const auto* target = kg::as_iri(next.front().object);
    if (!target || !seen.insert(*target).second) return current;
    current = *target;
  }
}

kg::Term rewrite(const kg::Term& term, const kg::Iri& from, const kg::Iri& to) {
  if (const auto* iri = kg::as_iri(term); iri && *iri == from) return to;
  return term;
}

}  // namespace

Features features_of(const kg::Iri& entity, const std::vector<kg::Triple>& triples) {
  Features f;
  for (const auto& t : triples) add_feature(f, entity, t);
  return f;
}

Features features_in_store(const kg::Iri& entity, const kg::Store& store) {
  Features f;
  for (const auto& t : store.match(entity, std::nullopt, std::nullopt)) add_feature(f, entity, t);
  for (const auto& t : store.match(std::nullopt, std::nullopt, kg::Term{entity})) add_feature(f, entity, t);
  return f;
}

double jaccard(const std::set<std::pair<std::string, std::string>>& a,
               const std::set<std::pair<std::string, std::string>>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

std::string username_key(const kg::Iri& account) {
  std::string_view v = account.value;
  auto slash = v.rfind('/');
  std::string name(slash == std::string_view::npos ? v : v.substr(slash + 1));
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return name.substr(0, 3);
}

CandidateBlock block(const PendingEntity& entity, const kg::Store& store, const ResolutionConfig& config) {
  CandidateBlock out{entity.iri, entity.entity_class, {}};
  bool by_username = entity.entity_class == kg::vocab::cls("XAccount");
  std::string key = by_username ? username_key(entity.iri) : std::string{};
  for (const auto& t : store.match(std::nullopt, kg::vocab::rdf_type(), kg::Term{entity.entity_class})) {
    if (t.subject == entity.iri) continue;
    if (by_username && username_key(t.subject) != key) continue;
    out.candidates.push_back(t.subject);
  }
  std::sort(out.candidates.begin(), out.candidates.end());
  out.candidates.erase(std::unique(out.candidates.begin(), out.candidates.end()), out.candidates.end());
  if (out.candidates.size() > config.block_cap) out.candidates.resize(config.block_cap);
  return out;
}

std::vector<MatchScore> match_entity(const PendingEntity& entity, const CandidateBlock& candidates,
                                     const kg::Store& store, const ResolutionConfig& config) {
  Features mine = features_of(entity.iri, entity.triples);
  std::vector<MatchScore> out;
  for (const auto& candidate : candidates.candidates) {
    Features theirs = features_in_store(candidate, store);
    MatchScore score;
    score.entity = entity.iri;
    score.candidate = candidate;
    score.property = jaccard(mine.properties, theirs.properties);
    score.relational = jaccard(mine.relations, theirs.relations);
    score.combined = config.property_weight * score.property + (1.0 - config.property_weight) * score.relational;
    score.is_match = score.combined >= config.match_threshold;
    out.push_back(std::move(score));
  }
  std::sort(out.begin(), out.end(), [](const MatchScore& a, const MatchScore& b) {
    if (a.combined != b.combined) return a.combined > b.combined;
    return a.candidate < b.candidate;
  });
  return out;
}

kg::Iri fuse(const PendingEntity& entity, const std::vector<MatchScore>& matches, kg::Store& store,
             const ResolutionConfig& config) {
  std::vector<kg::Triple> out;
  kg::Iri canonical = entity.iri;

  auto best = std::find_if(matches.begin(), matches.end(),
                           [&](const MatchScore& m) { return m.combined >= config.match_threshold; });
  if (best != matches.end()) {
    // Ties: every candidate scoring the same as the best one.
    std::vector<kg::Iri> tied;
    for (const auto& m : matches) {
      if (m.combined >= config.match_threshold && std::abs(m.combined - best->combined) < 1e-12) {
        tied.push_back(m.candidate);
      }
    }
    std::sort(tied.begin(), tied.end());
    canonical = canonical_of(tied.front(), store);
    if (tied.size() > 1) {
      std::string note = "open-review: tied match candidates";
      for (const auto& t : tied) note += " <" + t.value + ">";
      out.push_back({canonical, kg::vocab::rdfs_comment(), kg::Literal::text(note)});
    }
    if (canonical != entity.iri) {
      const kg::Iri same_as = kg::vocab::pred("sameAs");
      // Never close a sameAs 2-cycle.
      if (!store.contains({canonical, same_as, kg::Term{entity.iri}})) {
        out.push_back({entity.iri, same_as, kg::Term{canonical}});
      }
    }
  }

  for (const auto& t : entity.triples) {
    kg::Iri subject = t.subject == entity.iri ? canonical : t.subject;
    out.push_back({std::move(subject), t.predicate, rewrite(t.object, entity.iri, canonical)});
  }
  store.insert(out);
  return canonical;
}

kg::Iri resolve(const PendingEntity& entity, kg::Store& store, const ResolutionConfig& config) {
  auto candidates = block(entity, store, config);
  auto scores = match_entity(entity, candidates, store, config);
  return fuse(entity, scores, store, config);
}

}  // namespace chaingraph::resolution
