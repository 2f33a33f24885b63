#include "chaingraph/kg/term.hpp"

#include <cctype>
#include <ctime>

#include "chaingraph/error.hpp"

namespace chaingraph::kg {

namespace {

bool forbidden_iri_char(unsigned char c) {
  return c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
         c == '^' || c == '`' || c == '\\';
}

bool is_decimal_text(std::string_view s) {
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
  bool digits = false, dot = false;
  for (char c : s) {
    if (c == '.') {
      if (dot) return false;
      dot = true;
    } else if (c >= '0' && c <= '9') {
      digits = true;
    } else {
      return false;
    }
  }
  return digits;
}

std::string escape_literal(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

Iri::Iri(std::string v) : value(std::move(v)) {
  if (value.empty()) throw ValidationError("empty IRI");
  for (unsigned char c : value) {
    if (forbidden_iri_char(c)) throw ValidationError("invalid character in IRI '" + value + "'");
  }
  auto colon = value.find(':');
  if (colon == std::string::npos || colon == 0) {
    throw ValidationError("IRI must be absolute: '" + value + "'");
  }
}

std::string_view datatype_iri(LiteralType type) {
  switch (type) {
    case LiteralType::Text: return "http://www.w3.org/2001/XMLSchema#string";
    case LiteralType::Integer: return "http://www.w3.org/2001/XMLSchema#integer";
    case LiteralType::Decimal: return "http://www.w3.org/2001/XMLSchema#decimal";
    case LiteralType::Timestamp: return "http://www.w3.org/2001/XMLSchema#dateTime";
  }
  return "";
}

Literal Literal::integer(std::string digits) {
  std::string_view body = digits;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) body.remove_prefix(1);
  if (body.empty() || body.find_first_not_of("0123456789") != std::string_view::npos) {
    throw ValidationError("invalid integer literal '" + digits + "'");
  }
  return {std::move(digits), LiteralType::Integer};
}

Literal Literal::decimal(std::string value) {
  if (!is_decimal_text(value)) throw ValidationError("invalid decimal literal '" + value + "'");
  return {std::move(value), LiteralType::Decimal};
}

Literal Literal::timestamp(std::string value) {
  // YYYY-MM-DDThh:mm:ss with optional fraction and zone.
  bool ok = value.size() >= 19 && value[4] == '-' && value[7] == '-' && value[10] == 'T' &&
            value[13] == ':' && value[16] == ':';
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9, 11, 12, 14, 15, 17, 18}) {
    if (ok && !std::isdigit(static_cast<unsigned char>(value[i]))) ok = false;
  }
  if (!ok) throw ValidationError("invalid timestamp literal '" + value + "'");
  return {std::move(value), LiteralType::Timestamp};
}

Literal Literal::timestamp_from_unix(std::int64_t seconds) {
  std::time_t t = static_cast<std::time_t>(seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return {buf, LiteralType::Timestamp};
}

bool is_iri(const Term& term) { return std::holds_alternative<Iri>(term); }

const Iri* as_iri(const Term& term) { return std::get_if<Iri>(&term); }

std::string to_ntriples(const Iri& iri) { return "<" + iri.value + ">"; }

std::string to_ntriples(const Term& term) {
  if (const auto* iri = std::get_if<Iri>(&term)) return to_ntriples(*iri);
  const auto& lit = std::get<Literal>(term);
  std::string out = "\"" + escape_literal(lit.lexical) + "\"";
  if (lit.type != LiteralType::Text) {
    out += "^^<";
    out += datatype_iri(lit.type);
    out += ">";
  }
  return out;
}

std::string to_ntriples(const Triple& triple) {
  return to_ntriples(triple.subject) + " " + to_ntriples(triple.predicate) + " " +
         to_ntriples(triple.object) + " .";
}

std::size_t TermHash::operator()(const Term& term) const noexcept {
  if (const auto* iri = std::get_if<Iri>(&term)) return std::hash<std::string>{}(iri->value);
  const auto& lit = std::get<Literal>(term);
  return std::hash<std::string>{}(lit.lexical) * 31 + static_cast<std::size_t>(lit.type) + 1;
}

}  // namespace chaingraph::kg
