#include <gtest/gtest.h>

#include <random>

#include "chaingraph/kg/serialize.hpp"
#include "chaingraph/kg/vocabulary.hpp"
#include "support/oracles.hpp"

using namespace chaingraph;
using namespace chaingraph::kg;
using namespace chaingraph::kg::vocab;

namespace {

std::set<Triple> triple_set(const Store& store) {
  auto t = store.triples();
  return {t.begin(), t.end()};
}

void fill_tricky(Store& store) {
  Names names;
  Iri post = names.x_post("1451");
  store.insert(std::vector<Triple>{
      {post, rdf_type(), cls("XPost")},
      {post, rdfs_comment(), Literal::text("line one\nline \"two\"\t\\ end")},
      {post, rdfs_label(), Literal::text("caf\xc3\xa9")},
      {post, prov_generated_at(), Literal::timestamp("2021-10-07T12:00:00Z")},
      {names.project("Ether Monkeys"), pred("estimatedProfit"), Literal::decimal("1770000")},
      {names.tx(Hash32{}), ethon_value(), Literal::integer("1000000000000000000000")},
  });
}

}  // namespace

TEST(Export, EmptyStore) {
  Store store;
  EXPECT_EQ(export_graph(store, Format::NTriples), "");
  std::string ttl = export_graph(store, Format::Turtle);
  EXPECT_NE(ttl.find("@prefix cg: <https://chaingraph.dev/ontology#> ."), std::string::npos);
}

TEST(Export, SingleTripleLine) {
  Store store;
  Names names;
  store.insert(Triple{names.x_account("homer_eth"), rdf_type(), cls("XAccount")});
  std::string nt = export_graph(store, Format::NTriples);
  EXPECT_EQ(std::count(nt.begin(), nt.end(), '\n'), 1);
  EXPECT_TRUE(nt.ends_with(" .\n"));
}

TEST(Export, NTriplesSortedAndStable) {
  std::mt19937_64 rng(5);
  auto g = testsupport::random_graph(rng, 500);
  Store a, b;
  a.insert(g.triples);
  std::shuffle(g.triples.begin(), g.triples.end(), rng);
  b.insert(g.triples);
  std::string nt = export_graph(a, Format::NTriples);
  EXPECT_EQ(nt, export_graph(b, Format::NTriples));
  std::vector<std::string> lines;
  std::istringstream in(nt);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  EXPECT_TRUE(std::is_sorted(lines.begin(), lines.end()));
}

TEST(RoundTrip, NTriplesAndTurtle) {
  Store source;
  fill_tricky(source);
  std::mt19937_64 rng(6);
  source.insert(testsupport::random_graph(rng, 300).triples);
  for (Format f : {Format::NTriples, Format::Turtle}) {
    Store copy;
    std::string doc = export_graph(source, f);
    EXPECT_EQ(import_graph(copy, doc, f), source.size());
    EXPECT_EQ(triple_set(copy), triple_set(source));
    EXPECT_EQ(export_graph(copy, f), doc);
  }
}

TEST(Import, OwnExportAddsNothing) {
  Store store;
  fill_tricky(store);
  auto rev = store.revision();
  EXPECT_EQ(import_graph(store, export_graph(store, Format::NTriples), Format::NTriples), 0u);
  EXPECT_EQ(store.revision(), rev);
}

TEST(Import, CountsLines) {
  std::string doc =
      "<https://x.org/a> <https://chaingraph.dev/ontology#deployed> <https://x.org/b> .\n"
      "\n"
      "# comment\n"
      "<https://x.org/a> <http://www.w3.org/2000/01/rdf-schema#label> \"A\" .\n"
      "<https://x.org/b> <http://www.w3.org/2000/01/rdf-schema#label> \"7\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n";
  Store store;
  EXPECT_EQ(import_graph(store, doc, Format::NTriples), 3u);
}

TEST(Import, MalformedLineNamesLineAndLeavesStoreUntouched) {
  std::string doc =
      "<https://x.org/a> <https://chaingraph.dev/ontology#deployed> <https://x.org/b> .\n"
      "<https://x.org/a> <https://chaingraph.dev/ontology#deployed> .\n";
  Store store;
  try {
    import_graph(store, doc, Format::NTriples);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_EQ(store.size(), 0u);
}

TEST(Import, UnknownPredicateRejected) {
  Store store;
  EXPECT_THROW(import_graph(store, "<https://x.org/a> <https://x.org/p> <https://x.org/b> .\n", Format::NTriples),
               Error);
  EXPECT_EQ(store.size(), 0u);
}

TEST(Turtle, PrefixedNamesAndLists) {
  std::string doc =
      "@prefix cg: <https://chaingraph.dev/ontology#> .\n"
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
      "<https://x.org/a> a cg:Account ;\n"
      "  rdfs:label \"A\", \"B\" .\n";
  auto triples = parse_turtle(doc);
  EXPECT_EQ(triples.size(), 3u);
  EXPECT_THROW(parse_turtle("<https://x.org/a> zz:p <https://x.org/b> .\n"), ParseError);
}

TEST(Patterns, ParsesVariablesIrisAndLiterals) {
  auto patterns = parse_patterns(
      "# who deployed what\n"
      "?a <https://chaingraph.dev/ontology#deployed> ?c .\n"
      "?c <http://www.w3.org/2000/01/rdf-schema#label> \"7\"^^<http://www.w3.org/2001/XMLSchema#integer>\n");
  ASSERT_EQ(patterns.size(), 2u);
  EXPECT_EQ(std::get<Variable>(patterns[0].subject).name, "a");
  EXPECT_EQ(std::get<Term>(patterns[0].predicate), Term{pred("deployed")});
  EXPECT_EQ(std::get<Term>(patterns[1].object), Term{Literal::integer(7)});
}

TEST(Patterns, MalformedLineReported) {
  try {
    parse_patterns("?a <https://chaingraph.dev/ontology#deployed> ?c .\n?a ?b\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_patterns(""), ParseError);
}

TEST(Format, Names) {
  EXPECT_EQ(format_from_string("nt"), Format::NTriples);
  EXPECT_EQ(format_from_string("turtle"), Format::Turtle);
  EXPECT_THROW(format_from_string("rdfxml"), ValidationError);
}
