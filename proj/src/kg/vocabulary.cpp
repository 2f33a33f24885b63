#include "chaingraph/kg/vocabulary.hpp"

#include <algorithm>
#include <cctype>

#include "chaingraph/error.hpp"

namespace chaingraph::kg::vocab {

namespace {

Iri join(std::string_view ns, std::string_view local) {
  std::string s(ns);
  s += local;
  return Iri(std::move(s));
}

template <std::size_t N>
bool listed(const std::array<std::string_view, N>& names, std::string_view name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

}  // namespace

Iri cls(std::string_view name) {
  if (!listed(kClasses, name)) throw ValidationError("unknown ontology class '" + std::string(name) + "'");
  return join(kOntology, name);
}

Iri pred(std::string_view name) {
  if (!listed(kPredicates, name)) {
    throw ValidationError("unknown ontology predicate '" + std::string(name) + "'");
  }
  return join(kOntology, name);
}

Iri rdf_type() { return join(kRdf, "type"); }
Iri rdfs_label() { return join(kRdfs, "label"); }
Iri rdfs_comment() { return join(kRdfs, "comment"); }
Iri prov_derived_from() { return join(kProv, "wasDerivedFrom"); }
Iri prov_generated_at() { return join(kProv, "generatedAtTime"); }
Iri ethon_tx() { return join(kEthon, "Tx"); }
Iri ethon_from() { return join(kEthon, "from"); }
Iri ethon_to() { return join(kEthon, "to"); }
Iri ethon_value() { return join(kEthon, "value"); }

bool is_allowed_predicate(const Iri& predicate) {
  std::string_view v = predicate.value;
  if (v.starts_with(kOntology)) return listed(kPredicates, v.substr(kOntology.size()));
  for (auto ns : {kRdf, kRdfs, kProv, kEthon}) {
    if (v.starts_with(ns) && v.size() > ns.size()) return true;
  }
  return false;
}

std::string slug(std::string_view text) {
  std::string out;
  bool dash = false;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '_') {
      if (dash && !out.empty()) out.push_back('-');
      dash = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      dash = true;
    }
  }
  return out;
}

Names::Names(std::string base) : base_(std::move(base)) {
  Iri check(base_ + "x");
  (void)check;
}

Iri Names::address(const Address& a) const { return Iri(base_ + "address/" + a.hex_prefixed()); }
Iri Names::tx(const Hash32& h) const { return Iri(base_ + "tx/" + h.hex_prefixed()); }
Iri Names::project(std::string_view name) const { return Iri(base_ + "project/" + slug(name)); }
Iri Names::x_account(std::string_view username) const {
  return Iri(base_ + "x/account/" + slug(username));
}
Iri Names::x_post(std::string_view id) const { return Iri(base_ + "x/post/" + slug(id)); }
Iri Names::cluster(std::string_view key) const { return Iri(base_ + "cluster/" + std::string(key)); }

std::optional<Address> Names::address_of(const Iri& iri) const {
  std::string prefix = base_ + "address/";
  if (!iri.value.starts_with(prefix)) return std::nullopt;
  try {
    return Address::from_hex(std::string_view(iri.value).substr(prefix.size()));
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

}  // namespace chaingraph::kg::vocab
