#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "chaingraph/bytes.hpp"
#include "chaingraph/kg/term.hpp"

namespace chaingraph::kg::vocab {

inline constexpr std::string_view kOntology = "https://chaingraph.dev/ontology#";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kProv = "http://www.w3.org/ns/prov#";
inline constexpr std::string_view kEthon = "http://ethon.consensys.net/";

inline constexpr std::string_view kDefaultBase = "https://chaingraph.dev/id/";

inline constexpr std::array<std::string_view, 9> kClasses = {
    "Account", "ContractAccount", "ExternalAccount", "DeployerAccount", "NftMinterAccount",
    "Project", "NftContract", "XAccount", "XPost"};

inline constexpr std::array<std::string_view, 14> kPredicates = {
    "deployed", "transferredTo", "minted", "proceedsTo", "announcedBy", "postedBy",
    "mentionsAddress", "mentionsUser", "controlledBy", "sameAs", "launchDate",
    "estimatedProfit", "tagged", "hasContract"};

struct Prefix {
  std::string_view name;
  std::string_view iri;
};

/// Prefixes emitted in Turtle headers, in header order.
inline constexpr std::array<Prefix, 6> kPrefixes = {{{"cg", kOntology},
                                                     {"rdf", kRdf},
                                                     {"rdfs", kRdfs},
                                                     {"xsd", kXsd},
                                                     {"prov", kProv},
                                                     {"ethon", kEthon}}};

/// Ontology class; throws ValidationError for names outside kClasses.
Iri cls(std::string_view name);
/// Ontology predicate; throws ValidationError for names outside kPredicates.
Iri pred(std::string_view name);

Iri rdf_type();
Iri rdfs_label();
Iri rdfs_comment();
Iri prov_derived_from();
Iri prov_generated_at();
Iri ethon_tx();
Iri ethon_from();
Iri ethon_to();
Iri ethon_value();

/// Predicates must be a declared ontology term or live in an imported
/// namespace (rdf, rdfs, prov, ethon).
bool is_allowed_predicate(const Iri& predicate);

/// Mints resource IRIs under a configurable base namespace.
class Names {
 public:
  explicit Names(std::string base = std::string(kDefaultBase));

  const std::string& base() const { return base_; }

  Iri address(const Address& a) const;
  Iri tx(const Hash32& h) const;
  Iri project(std::string_view name) const;
  Iri x_account(std::string_view username) const;
  Iri x_post(std::string_view id) const;
  Iri cluster(std::string_view key) const;

  /// Parses an address IRI minted by this factory.
  std::optional<Address> address_of(const Iri& iri) const;

 private:
  std::string base_;
};

/// Lowercase, non-alphanumerics collapsed to '-'.
std::string slug(std::string_view text);

}  // namespace chaingraph::kg::vocab
