#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "chaingraph/text/extract.hpp"

using namespace chaingraph;
using namespace chaingraph::text;
using namespace chaingraph::kg::vocab;

namespace {

const std::string kMixed = "0xAbCdEf0123456789aBcDeF0123456789AbCdEf01";
const std::string kContract = "0x5b668840d3a70c7312432f4f298b5ca319bce38a";

SocialPost post(std::string text, std::string author = "Homer_eth") {
  return {"1450000000000000001", std::move(author), 1637625600, std::move(text)};
}

ProjectDictionary reapers() {
  ProjectDictionary d;
  d.add("Ether Reapers");
  return d;
}

}  // namespace

TEST(Recognize, AddressNormalizedLowercase) {
  auto e = recognize_entities("Mint now at " + kMixed);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].kind, EntityKind::BlockchainAddress);
  EXPECT_EQ(e[0].value, "0xabcdef0123456789abcdef0123456789abcdef01");
  EXPECT_EQ(e[0].start, 12u);
  EXPECT_EQ(e[0].end, 54u);
}

TEST(Recognize, PlainGreetingIsEmpty) { EXPECT_TRUE(recognize_entities("gm").empty()); }

TEST(Recognize, MentionAndProjectName) {
  auto e = recognize_entities("thanks @Homer_eth for Ether Reapers", reapers());
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].kind, EntityKind::UsernameMention);
  EXPECT_EQ(e[0].value, "homer_eth");
  EXPECT_EQ(e[1].kind, EntityKind::ProjectName);
  EXPECT_EQ(e[1].value, "ether reapers");
}

TEST(Recognize, AddressMustNotBeEmbedded) {
  EXPECT_TRUE(recognize_entities("x" + kContract).empty());
  EXPECT_TRUE(recognize_entities(kContract + "ab").empty());
  EXPECT_TRUE(recognize_entities(kContract.substr(0, 41)).empty());
  EXPECT_EQ(recognize_entities("(" + kContract + ").").size(), 1u);
}

TEST(Recognize, MentionRules) {
  EXPECT_TRUE(recognize_entities("mail me at bob@example").empty());
  EXPECT_TRUE(recognize_entities("@ alone").empty());
  EXPECT_TRUE(recognize_entities("@abcdefghijklmnop").empty());  // 16 characters
  EXPECT_EQ(recognize_entities("@abcdefghijklmno").size(), 1u);  // 15 characters
}

TEST(Recognize, ProjectNamesLongestFirstOnWordBoundaries) {
  ProjectDictionary d;
  d.add("Ether Monkeys");
  d.add("Zombie Monkeys");
  d.add("Monkeys");
  auto e = recognize_entities("Zombie Monkeys beat Ether Monkeys; EtherMonkeys no", d);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].value, "zombie monkeys");
  EXPECT_EQ(e[1].value, "ether monkeys");
}

TEST(Recognize, SpanSoundnessProperty) {
  const std::regex address("0x[0-9a-fA-F]{40}");
  const std::regex mention("@[A-Za-z0-9_]{1,15}");
  const std::vector<std::string> tokens = {"mint", "@Homer_eth", "@b", kMixed, kContract, "Ether Reapers",
                                           "ether reapers!", "0x12", "gm", "@", ",", " ", "  ", "x@y",
                                           "@averyveryverylongname", "\xf0\x9f\x9a\x80"};
  std::mt19937_64 rng(9);
  auto dict = reapers();
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    for (int k = 0, n = 1 + rng() % 12; k < n; ++k) {
      text += tokens[rng() % tokens.size()];
      if (rng() % 2) text += ' ';
    }
    auto first = recognize_entities(text, dict);
    ASSERT_EQ(first, recognize_entities(text, dict));
    ASSERT_TRUE(std::is_sorted(first.begin(), first.end()));
    for (const auto& e : first) {
      ASSERT_LE(e.end, text.size());
      std::string span = text.substr(e.start, e.end - e.start);
      switch (e.kind) {
        case EntityKind::BlockchainAddress:
          ASSERT_TRUE(std::regex_match(span, address)) << span;
          break;
        case EntityKind::UsernameMention:
          ASSERT_TRUE(std::regex_match(span, mention)) << span;
          break;
        case EntityKind::ProjectName:
          ASSERT_EQ(normalize(e.kind, span), "ether reapers");
          break;
      }
      ASSERT_EQ(normalize(e.kind, e.value), e.value);
    }
  }
}

TEST(Normalize, Idempotent) {
  for (auto kind : {EntityKind::BlockchainAddress, EntityKind::UsernameMention, EntityKind::ProjectName}) {
    std::string once = normalize(kind, "Homer_ETH");
    EXPECT_EQ(normalize(kind, once), once);
  }
}

TEST(Relations, AnnouncementWithKeyword) {
  auto p = post("Minting is live! " + kContract);
  auto rels = extract_post_relations(p, recognize_entities(p.text));
  ASSERT_EQ(rels.size(), 2u);
  EXPECT_EQ(rels[0].kind, RelationKind::Announces);
  EXPECT_EQ(rels[0].subject, "homer_eth");
  EXPECT_EQ(rels[0].object, kContract);
  EXPECT_EQ(rels[1].kind, RelationKind::MentionsAddress);
}

TEST(Relations, AddressWithoutKeyword) {
  auto p = post("check out " + kContract);
  auto rels = extract_post_relations(p, recognize_entities(p.text));
  ASSERT_EQ(rels.size(), 1u);
  EXPECT_EQ(rels[0].kind, RelationKind::MentionsAddress);
}

TEST(Relations, NoEntitiesNoRelations) {
  auto p = post("mint mint mint");
  EXPECT_TRUE(extract_post_relations(p, recognize_entities(p.text)).empty());
}

TEST(Relations, KeywordMatchesAtWordStart) {
  const std::vector<std::string> kw = TextConfig{}.launch_keywords;
  EXPECT_TRUE(contains_launch_keyword("MINTING soon", kw));
  EXPECT_TRUE(contains_launch_keyword("we are LIVE", kw));
  EXPECT_FALSE(contains_launch_keyword("we deliver", kw));
  EXPECT_FALSE(contains_launch_keyword("peppermint tea", kw));
  EXPECT_TRUE(contains_launch_keyword("airdrop? no, drop", kw));
  EXPECT_FALSE(contains_launch_keyword("gm", kw));
}

TEST(Relations, EveryRelationReferencesRecognizedEntity) {
  auto p = post("mint @bob_collects " + kContract + " and Ether Reapers");
  auto entities = recognize_entities(p.text, reapers());
  std::set<std::string> values;
  for (const auto& e : entities) values.insert(e.value);
  for (const auto& r : extract_post_relations(p, entities)) EXPECT_TRUE(values.count(r.object)) << r.object;
}

TEST(Triples, AnnouncementLinksContractToAccount) {
  Names names;
  auto p = post("Ether Reapers mint is live " + kContract);
  auto triples = post_to_triples(p, extract_post_relations(p, recognize_entities(p.text)));
  kg::Triple announced{names.address(Address::from_hex(kContract)), pred("announcedBy"), names.x_account("homer_eth")};
  EXPECT_NE(std::find(triples.begin(), triples.end(), announced), triples.end());
  kg::Triple posted{names.x_post(p.id), pred("postedBy"), names.x_account("homer_eth")};
  EXPECT_NE(std::find(triples.begin(), triples.end(), posted), triples.end());
}

TEST(Triples, KeywordlessPostHasNoAnnouncement) {
  auto p = post("thinking about " + kContract);
  for (const auto& t : post_to_triples(p, extract_post_relations(p, recognize_entities(p.text)))) {
    EXPECT_NE(t.predicate, pred("announcedBy"));
  }
}

TEST(Triples, Deterministic) {
  auto p = post("mint @bob_collects " + kContract);
  auto rels = extract_post_relations(p, recognize_entities(p.text));
  EXPECT_EQ(post_to_triples(p, rels), post_to_triples(p, rels));
}

TEST(Post, JsonParsing) {
  auto p = post_from_json(nlohmann::json::parse(
      R"({"id":"7","author_username":"Homer_eth","created_at":"2021-10-07T00:00:00Z","text":"mint"})"));
  EXPECT_EQ(p.created_at, 1633564800);
  EXPECT_EQ(post_from_json(to_json(p)), p);
  auto unix_time = post_from_json(nlohmann::json::parse(R"({"id":"7","author_username":"a","created_at":5,"text":"x"})"));
  EXPECT_EQ(unix_time.created_at, 5);
  EXPECT_THROW(post_from_json(nlohmann::json::parse(R"({"id":"7","author_username":"a","created_at":5,"text":""})")),
               ValidationError);
  EXPECT_THROW(parse_utc("2021-13-01T00:00:00Z"), ValidationError);
  EXPECT_EQ(format_utc(1637625600), "2021-11-23T00:00:00Z");
}

TEST(Dictionary, SeededFromStoreProjects) {
  kg::Store store;
  Names names;
  store.insert(std::vector<kg::Triple>{{names.project("Ether Reapers"), rdf_type(), cls("Project")},
                                       {names.project("Ether Reapers"), rdfs_label(), kg::Literal::text("Ether Reapers")},
                                       {names.x_account("a"), rdfs_label(), kg::Literal::text("not a project")}});
  ProjectDictionary d;
  d.add_from_store(store);
  EXPECT_EQ(d.names(), (std::vector<std::string>{"ether reapers"}));
}
