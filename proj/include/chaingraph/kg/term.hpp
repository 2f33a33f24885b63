#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>

namespace chaingraph::kg {

struct Iri {
  std::string value;

  Iri() = default;
  /// Throws ValidationError if `value` is empty, relative, or contains
  /// whitespace or characters not allowed in an IRIREF.
  explicit Iri(std::string value);

  auto operator<=>(const Iri&) const = default;
};

enum class LiteralType : std::uint8_t { Text, Integer, Decimal, Timestamp };

std::string_view datatype_iri(LiteralType type);

struct Literal {
  std::string lexical;
  LiteralType type = LiteralType::Text;

  static Literal text(std::string value) { return {std::move(value), LiteralType::Text}; }
  static Literal integer(std::int64_t value) { return {std::to_string(value), LiteralType::Integer}; }
  static Literal integer(std::string digits);
  static Literal decimal(std::string value);
  /// `value` must be an xsd:dateTime lexical form, e.g. 2021-10-07T00:00:00Z.
  static Literal timestamp(std::string value);
  static Literal timestamp_from_unix(std::int64_t seconds);

  auto operator<=>(const Literal&) const = default;
};

using Term = std::variant<Iri, Literal>;

bool is_iri(const Term& term);
const Iri* as_iri(const Term& term);

/// N-Triples rendering of a single term.
std::string to_ntriples(const Term& term);
std::string to_ntriples(const Iri& iri);

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
};

std::string to_ntriples(const Triple& triple);

struct TermHash {
  std::size_t operator()(const Term& term) const noexcept;
};

}  // namespace chaingraph::kg
