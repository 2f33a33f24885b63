#include "chaingraph/text/extract.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>

#include "chaingraph/error.hpp"

namespace chaingraph::text {

namespace {

bool is_word(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool overlaps(const std::vector<RecognizedEntity>& taken, std::size_t start, std::size_t end) {
  return std::any_of(taken.begin(), taken.end(),
                     [&](const RecognizedEntity& e) { return start < e.end && e.start < end; });
}

}  // namespace

std::int64_t parse_utc(std::string_view text) {
  int y, mo, d, h, mi, s;
  char tail = 0;
  std::string buf(text);
  if (std::sscanf(buf.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &s, &tail) != 7 ||
      tail != 'Z' || buf.size() != 20) {
    throw ValidationError("bad UTC timestamp: " + buf);
  }
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) throw ValidationError("bad UTC timestamp: " + buf);
  auto days = sys_days{ymd}.time_since_epoch().count();
  return static_cast<std::int64_t>(days) * 86400 + h * 3600 + mi * 60 + s;
}

std::string format_utc(std::int64_t seconds) { return kg::Literal::timestamp_from_unix(seconds).lexical; }

SocialPost post_from_json(const nlohmann::json& doc) {
  SocialPost post;
  post.id = doc.at("id").is_string() ? doc.at("id").get<std::string>() : doc.at("id").dump();
  post.author_username = doc.at("author_username").get<std::string>();
  const auto& created = doc.at("created_at");
  post.created_at = created.is_string() ? parse_utc(created.get<std::string>()) : created.get<std::int64_t>();
  post.text = doc.at("text").get<std::string>();
  if (post.id.empty()) throw ValidationError("post id is empty");
  if (post.text.empty()) throw ValidationError("post " + post.id + " has empty text");
  if (post.author_username.empty()) throw ValidationError("post " + post.id + " has no author");
  return post;
}

nlohmann::json to_json(const SocialPost& post) {
  return {{"id", post.id},
          {"author_username", post.author_username},
          {"created_at", format_utc(post.created_at)},
          {"text", post.text}};
}

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::BlockchainAddress: return "blockchain_address";
    case EntityKind::UsernameMention: return "username_mention";
    case EntityKind::ProjectName: return "project_name";
  }
  return "unknown";
}

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::Announces: return "ANNOUNCES";
    case RelationKind::MentionsAddress: return "MENTIONS_ADDRESS";
    case RelationKind::MentionsUser: return "MENTIONS_USER";
  }
  return "unknown";
}

void ProjectDictionary::add(std::string_view name) {
  std::string key = lower(name);
  while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
  while (!key.empty() && std::isspace(static_cast<unsigned char>(key.front()))) key.erase(key.begin());
  if (key.empty() || std::find(names_.begin(), names_.end(), key) != names_.end()) return;
  names_.push_back(std::move(key));
  std::stable_sort(names_.begin(), names_.end(), [](const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
}

void ProjectDictionary::add_from_store(const kg::Store& store) {
  for (const auto& t : store.match(std::nullopt, kg::vocab::rdf_type(), kg::Term{kg::vocab::cls("Project")})) {
    for (const auto& label : store.match(t.subject, kg::vocab::rdfs_label(), std::nullopt)) {
      if (const auto* lit = std::get_if<kg::Literal>(&label.object)) add(lit->lexical);
    }
  }
}

void ProjectDictionary::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open project dictionary " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    add(line);
  }
}

std::string normalize(EntityKind kind, std::string_view value) {
  (void)kind;
  return lower(value);
}

std::vector<RecognizedEntity> recognize_entities(std::string_view text, const ProjectDictionary& dictionary) {
  std::vector<RecognizedEntity> out;
  const std::size_t n = text.size();

  for (std::size_t i = 0; i + 42 <= n; ++i) {
    if (text[i] != '0' || (text[i + 1] != 'x' && text[i + 1] != 'X')) continue;
    if (i > 0 && is_word(text[i - 1])) continue;
    std::size_t j = i + 2;
    while (j < n && is_hex(text[j])) ++j;
    if (j - i - 2 != 40 || (j < n && is_word(text[j]))) continue;
    out.push_back({i, j, EntityKind::BlockchainAddress, normalize(EntityKind::BlockchainAddress, text.substr(i, 42))});
    i = j - 1;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (text[i] != '@' || (i > 0 && is_word(text[i - 1]))) continue;
    std::size_t j = i + 1;
    while (j < n && is_word(text[j])) ++j;
    std::size_t len = j - i - 1;
    if (len >= 1 && len <= 15) {
      out.push_back({i, j, EntityKind::UsernameMention,
                     normalize(EntityKind::UsernameMention, text.substr(i + 1, len))});
    }
    i = j - 1;
  }

  if (!dictionary.empty()) {
    const std::string folded = lower(text);
    for (const auto& name : dictionary.names()) {
      std::size_t pos = 0;
      while ((pos = folded.find(name, pos)) != std::string::npos) {
        std::size_t end = pos + name.size();
        bool bounded = (pos == 0 || !is_word(folded[pos - 1])) && (end == n || !is_word(folded[end]));
        if (bounded && !overlaps(out, pos, end)) out.push_back({pos, end, EntityKind::ProjectName, name});
        pos += 1;
      }
    }
  }

  std::sort(out.begin(), out.end());
  return out;
}

bool contains_launch_keyword(std::string_view text, const std::vector<std::string>& keywords) {
  const std::string folded = lower(text);
  for (const auto& kw : keywords) {
    const std::string key = lower(kw);
    if (key.empty()) continue;
    for (std::size_t pos = folded.find(key); pos != std::string::npos; pos = folded.find(key, pos + 1)) {
      // Keywords match at the start of a word ("Minting" counts, "deliver" does not).
      if (pos == 0 || !is_word(folded[pos - 1])) return true;
    }
  }
  return false;
}

std::vector<PostRelation> extract_post_relations(const SocialPost& post,
                                                 const std::vector<RecognizedEntity>& entities,
                                                 const TextConfig& config) {
  const std::string author = normalize(EntityKind::UsernameMention, post.author_username);
  const bool announces = contains_launch_keyword(post.text, config.launch_keywords);
  std::set<PostRelation> out;
  for (const auto& e : entities) {
    switch (e.kind) {
      case EntityKind::BlockchainAddress:
        out.insert({RelationKind::MentionsAddress, author, e.value});
        if (announces) out.insert({RelationKind::Announces, author, e.value});
        break;
      case EntityKind::UsernameMention:
        out.insert({RelationKind::MentionsUser, author, e.value});
        break;
      case EntityKind::ProjectName:
        break;
    }
  }
  return {out.begin(), out.end()};
}

std::vector<kg::Triple> post_to_triples(const SocialPost& post, const std::vector<PostRelation>& relations,
                                        const kg::vocab::Names& names) {
  using namespace kg::vocab;
  const std::string username = normalize(EntityKind::UsernameMention, post.author_username);
  const kg::Iri post_iri = names.x_post(post.id);
  const kg::Iri author = names.x_account(username);
  std::vector<kg::Triple> out{
      {post_iri, rdf_type(), cls("XPost")},
      {post_iri, pred("postedBy"), author},
      {post_iri, prov_generated_at(), kg::Literal::timestamp_from_unix(post.created_at)},
      {post_iri, rdfs_comment(), kg::Literal::text(post.text)},
      {author, rdf_type(), cls("XAccount")},
      {author, rdfs_label(), kg::Literal::text(username)},
  };
  for (const auto& r : relations) {
    switch (r.kind) {
      case RelationKind::MentionsAddress:
        out.push_back({post_iri, pred("mentionsAddress"), names.address(Address::from_hex(r.object))});
        break;
      case RelationKind::Announces:
        out.push_back({names.address(Address::from_hex(r.object)), pred("announcedBy"), author});
        break;
      case RelationKind::MentionsUser: {
        kg::Iri account = names.x_account(r.object);
        out.push_back({post_iri, pred("mentionsUser"), account});
        out.push_back({account, rdf_type(), cls("XAccount")});
        out.push_back({account, rdfs_label(), kg::Literal::text(r.object)});
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace chaingraph::text
