#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaingraph/kg/store.hpp"
#include "chaingraph/kg/term.hpp"
#include "chaingraph/kg/vocabulary.hpp"

namespace chaingraph::text {

struct SocialPost {
  std::string id;
  std::string author_username;
  /// UTC seconds.
  std::int64_t created_at = 0;
  std::string text;

  bool operator==(const SocialPost&) const = default;
};

/// Social fixture line: {id, author_username, created_at (ISO-8601 UTC or
/// unix seconds), text}. Throws ValidationError on an empty id or text.
SocialPost post_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SocialPost& post);

/// Parses "YYYY-MM-DDTHH:MM:SSZ" into unix seconds.
std::int64_t parse_utc(std::string_view text);
std::string format_utc(std::int64_t seconds);

enum class EntityKind { BlockchainAddress, UsernameMention, ProjectName };

std::string_view to_string(EntityKind kind);

struct RecognizedEntity {
  /// Byte offsets into the text, [start, end).
  std::size_t start = 0;
  std::size_t end = 0;
  EntityKind kind = EntityKind::BlockchainAddress;
  std::string value;

  auto operator<=>(const RecognizedEntity&) const = default;
};

/// Case-insensitive project names.
class ProjectDictionary {
 public:
  void add(std::string_view name);
  /// Adds every rdfs:label of a Project in the store.
  void add_from_store(const kg::Store& store);
  /// One name per line; blank lines and '#' comments ignored.
  void load_file(const std::string& path);

  bool empty() const { return names_.empty(); }
  std::size_t size() const { return names_.size(); }
  /// Lower-cased names, longest first.
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

/// Lower-cases an address or username; idempotent.
std::string normalize(EntityKind kind, std::string_view value);

/// Addresses: 0x + 40 hex digits not embedded in a longer word. Mentions:
/// '@' + 1..15 of [A-Za-z0-9_], not preceded by a word character. Project
/// names: dictionary entries on word boundaries, longest match first.
/// Sorted by start offset.
std::vector<RecognizedEntity> recognize_entities(std::string_view text,
                                                 const ProjectDictionary& dictionary = {});

enum class RelationKind { Announces, MentionsAddress, MentionsUser };

std::string_view to_string(RelationKind kind);

struct PostRelation {
  RelationKind kind;
  /// Author username.
  std::string subject;
  /// Address (0x...) or mentioned username.
  std::string object;

  auto operator<=>(const PostRelation&) const = default;
};

struct TextConfig {
  std::vector<std::string> launch_keywords{"mint", "launch", "live", "drop"};
};

bool contains_launch_keyword(std::string_view text, const std::vector<std::string>& keywords);

std::vector<PostRelation> extract_post_relations(const SocialPost& post,
                                                 const std::vector<RecognizedEntity>& entities,
                                                 const TextConfig& config = {});

std::vector<kg::Triple> post_to_triples(const SocialPost& post, const std::vector<PostRelation>& relations,
                                        const kg::vocab::Names& names = kg::vocab::Names{});

}  // namespace chaingraph::text
