#include "chaingraph/kg/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "chaingraph/error.hpp"
#include "chaingraph/kg/vocabulary.hpp"

namespace chaingraph::kg {

Format format_from_string(std::string_view name) {
  if (name == "ntriples" || name == "nt") return Format::NTriples;
  if (name == "turtle" || name == "ttl") return Format::Turtle;
  throw ValidationError("unknown graph format '" + std::string(name) + "' (expected ntriples|turtle)");
}

namespace {

// ---------------------------------------------------------------------------
// Lexer shared by the N-Triples, Turtle and pattern parsers.

enum class Tok { IriRef, PName, String, Caret, Dot, Semicolon, Comma, A, Prefix, Var, Number, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;   // IRI, string body, variable name, number
  std::string local;  // PName local part (text holds the prefix)
  std::size_t line = 1;
};

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool pname_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         static_cast<unsigned char>(c) >= 0x80;
}

class Lexer {
 public:
  Lexer(std::string_view text, std::size_t first_line = 1) : text_(text), line_(first_line) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    if (pos_ >= text_.size()) return tok;
    char c = text_[pos_];
    switch (c) {
      case '<': tok.kind = Tok::IriRef; tok.text = read_iri(); return tok;
      case '"': tok.kind = Tok::String; tok.text = read_string(); return tok;
      case '.': ++pos_; tok.kind = Tok::Dot; return tok;
      case ';': ++pos_; tok.kind = Tok::Semicolon; return tok;
      case ',': ++pos_; tok.kind = Tok::Comma; return tok;
      case '^':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '^') {
          pos_ += 2;
          tok.kind = Tok::Caret;
          return tok;
        }
        fail("stray '^'");
      case '?':
        ++pos_;
        tok.kind = Tok::Var;
        tok.text = read_while(pname_char);
        if (tok.text.empty()) fail("empty variable name");
        return tok;
      case '@': {
        ++pos_;
        std::string word = read_while(pname_char);
        if (word == "prefix") {
          tok.kind = Tok::Prefix;
          return tok;
        }
        fail("unsupported directive or language tag '@" + word + "'");
      }
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
      tok.kind = Tok::Number;
      tok.text = read_while([](char ch) {
        return std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' || ch == '+';
      });
      // A trailing '.' terminates the statement rather than the number.
      if (tok.text.size() > 1 && tok.text.back() == '.') {
        tok.text.pop_back();
        --pos_;
      }
      return tok;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == ':' || c == '_') {
      std::string prefix = read_while(pname_char);
      if (pos_ < text_.size() && text_[pos_] == ':') {
        ++pos_;
        tok.kind = Tok::PName;
        tok.text = prefix;
        tok.local = read_while([](char ch) { return pname_char(ch) || ch == '.'; });
        while (!tok.local.empty() && tok.local.back() == '.') {
          tok.local.pop_back();
          --pos_;
        }
        return tok;
      }
      if (prefix == "a") {
        tok.kind = Tok::A;
        return tok;
      }
      fail("unexpected word '" + prefix + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_); }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  template <typename Pred>
  std::string read_while(Pred pred) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string read_iri() {
    ++pos_;
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '>') {
      if (text_[pos_] == '\n') fail("unterminated IRI");
      ++pos_;
    }
    if (pos_ >= text_.size()) fail("unterminated IRI");
    std::string out(text_.substr(start, pos_ - start));
    ++pos_;
    return out;
  }

  std::uint32_t read_hex(std::size_t digits) {
    if (pos_ + digits > text_.size()) fail("truncated unicode escape");
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char h = text_[pos_++];
      int v = std::isdigit(static_cast<unsigned char>(h)) ? h - '0'
              : (h >= 'a' && h <= 'f')                    ? h - 'a' + 10
              : (h >= 'A' && h <= 'F')                    ? h - 'A' + 10
                                                          : -1;
      if (v < 0) fail("bad unicode escape");
      cp = cp * 16 + static_cast<std::uint32_t>(v);
    }
    return cp;
  }

  std::string read_string() {
    ++pos_;
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_++];
      if (c == '"') return out;
      if (c == '\n') fail("newline in string literal");
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (pos_ >= text_.size()) break;
      char e = text_[pos_++];
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 't': out.push_back('\t'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case '"': out.push_back('"'); break;
        case '\'': out.push_back('\''); break;
        case '\\': out.push_back('\\'); break;
        case 'u': append_utf8(out, read_hex(4)); break;
        case 'U': append_utf8(out, read_hex(8)); break;
        default: fail(std::string("unknown escape '\\") + e + "'");
      }
    }
    fail("unterminated string literal");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

Literal make_literal(std::string lexical, std::string_view datatype, std::size_t line) {
  try {
    if (datatype.empty() || datatype == datatype_iri(LiteralType::Text)) {
      return Literal::text(std::move(lexical));
    }
    if (datatype == datatype_iri(LiteralType::Integer)) return Literal::integer(std::move(lexical));
    if (datatype == datatype_iri(LiteralType::Decimal)) return Literal::decimal(std::move(lexical));
    if (datatype == datatype_iri(LiteralType::Timestamp)) return Literal::timestamp(std::move(lexical));
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), line);
  }
  throw ParseError("unsupported literal datatype <" + std::string(datatype) + ">", line);
}

Iri make_iri(std::string value, std::size_t line) {
  try {
    return Iri(std::move(value));
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), line);
  }
}

using PrefixMap = std::map<std::string, std::string>;

Iri resolve(const Token& tok, const PrefixMap& prefixes) {
  if (tok.kind == Tok::IriRef) return make_iri(tok.text, tok.line);
  if (tok.kind == Tok::A) return vocab::rdf_type();
  if (tok.kind == Tok::PName) {
    auto it = prefixes.find(tok.text);
    if (it == prefixes.end()) throw ParseError("undeclared prefix '" + tok.text + ":'", tok.line);
    return make_iri(it->second + tok.local, tok.line);
  }
  throw ParseError("expected an IRI", tok.line);
}

/// Reads an object term starting at `tok`; may consume a datatype suffix.
/// Returns the token following the term.
Token read_object(Lexer& lex, Token tok, const PrefixMap& prefixes, Term& out) {
  if (tok.kind == Tok::String) {
    Token after = lex.next();
    if (after.kind == Tok::Caret) {
      Token dt = lex.next();
      Iri datatype = resolve(dt, prefixes);
      out = make_literal(std::move(tok.text), datatype.value, tok.line);
      return lex.next();
    }
    out = make_literal(std::move(tok.text), "", tok.line);
    return after;
  }
  if (tok.kind == Tok::Number) {
    bool dot = tok.text.find('.') != std::string::npos;
    out = make_literal(tok.text, datatype_iri(dot ? LiteralType::Decimal : LiteralType::Integer), tok.line);
    return lex.next();
  }
  out = resolve(tok, prefixes);
  return lex.next();
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

// ---------------------------------------------------------------------------
// Turtle rendering.

bool simple_local(std::string_view local) {
  if (local.empty() || !(std::isalpha(static_cast<unsigned char>(local[0])) || local[0] == '_')) return false;
  return std::all_of(local.begin(), local.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::string turtle_iri(const Iri& iri) {
  for (const auto& p : vocab::kPrefixes) {
    std::string_view v = iri.value;
    if (v.starts_with(p.iri) && simple_local(v.substr(p.iri.size()))) {
      return std::string(p.name) + ":" + std::string(v.substr(p.iri.size()));
    }
  }
  return to_ntriples(iri);
}

std::string turtle_term(const Term& term) {
  if (const auto* iri = as_iri(term)) return turtle_iri(*iri);
  const auto& lit = std::get<Literal>(term);
  std::string out = to_ntriples(Term{Literal::text(lit.lexical)});
  if (lit.type != LiteralType::Text) out += "^^" + turtle_iri(Iri(std::string(datatype_iri(lit.type))));
  return out;
}

}  // namespace

std::string export_graph(const Store& store, Format format) {
  auto triples = store.triples();
  std::string out;
  if (format == Format::NTriples) {
    std::vector<std::string> lines;
    lines.reserve(triples.size());
    for (const auto& t : triples) lines.push_back(to_ntriples(t));
    std::sort(lines.begin(), lines.end());
    for (const auto& line : lines) {
      out += line;
      out += '\n';
    }
    return out;
  }

  for (const auto& p : vocab::kPrefixes) {
    out += "@prefix " + std::string(p.name) + ": <" + std::string(p.iri) + "> .\n";
  }
  const Iri type = vocab::rdf_type();
  for (std::size_t i = 0; i < triples.size();) {
    const Iri& subject = triples[i].subject;
    out += "\n" + turtle_iri(subject);
    bool first_pred = true;
    while (i < triples.size() && triples[i].subject == subject) {
      const Iri& predicate = triples[i].predicate;
      out += first_pred ? " " : " ;\n    ";
      out += predicate == type ? "a" : turtle_iri(predicate);
      bool first_obj = true;
      while (i < triples.size() && triples[i].subject == subject && triples[i].predicate == predicate) {
        out += first_obj ? " " : " , ";
        out += turtle_term(triples[i].object);
        first_obj = false;
        ++i;
      }
      first_pred = false;
    }
    out += " .\n";
  }
  return out;
}

std::vector<Triple> parse_ntriples(std::string_view text) {
  std::vector<Triple> out;
  const PrefixMap none;
  auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    Lexer lex(lines[n], n + 1);
    Token s = lex.next();
    if (s.kind == Tok::End) continue;
    if (s.kind != Tok::IriRef) lex.fail("subject must be an <IRI>");
    Token p = lex.next();
    if (p.kind != Tok::IriRef) lex.fail("predicate must be an <IRI>");
    Token o = lex.next();
    if (o.kind != Tok::IriRef && o.kind != Tok::String) lex.fail("object must be an <IRI> or a literal");
    Term object;
    Token end = read_object(lex, o, none, object);
    if (end.kind != Tok::Dot) lex.fail("expected '.' after object");
    if (lex.next().kind != Tok::End) lex.fail("trailing content after '.'");
    out.push_back(Triple{resolve(s, none), resolve(p, none), std::move(object)});
  }
  return out;
}

std::vector<Triple> parse_turtle(std::string_view text) {
  std::vector<Triple> out;
  PrefixMap prefixes;
  Lexer lex(text);
  Token tok = lex.next();
  while (tok.kind != Tok::End) {
    if (tok.kind == Tok::Prefix) {
      Token name = lex.next();
      if (name.kind != Tok::PName || !name.local.empty()) lex.fail("expected 'prefix:' after @prefix");
      Token iri = lex.next();
      if (iri.kind != Tok::IriRef) lex.fail("expected <IRI> in @prefix");
      if (lex.next().kind != Tok::Dot) lex.fail("expected '.' after @prefix");
      prefixes[name.text] = iri.text;
      tok = lex.next();
      continue;
    }
    Iri subject = resolve(tok, prefixes);
    for (;;) {
      Iri predicate = resolve(lex.next(), prefixes);
      for (;;) {
        Term object;
        tok = read_object(lex, lex.next(), prefixes, object);
        out.push_back(Triple{subject, predicate, std::move(object)});
        if (tok.kind != Tok::Comma) break;
      }
      if (tok.kind == Tok::Semicolon) continue;
      if (tok.kind == Tok::Dot) break;
      throw ParseError("expected ',', ';' or '.'", tok.line);
    }
    tok = lex.next();
  }
  return out;
}

std::size_t import_graph(Store& store, std::string_view text, Format format) {
  auto triples = format == Format::NTriples ? parse_ntriples(text) : parse_turtle(text);
  return store.insert(triples);
}

std::vector<TriplePattern> parse_patterns(std::string_view text) {
  std::vector<TriplePattern> out;
  const PrefixMap none;
  auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    Lexer lex(lines[n], n + 1);
    Token first = lex.next();
    if (first.kind == Tok::End) continue;

    auto position = [&](Token tok, bool allow_literal, Token& following) -> PatternTerm {
      if (tok.kind == Tok::Var) {
        following = lex.next();
        return Variable{tok.text};
      }
      if (tok.kind == Tok::IriRef) {
        following = lex.next();
        return Term{make_iri(tok.text, tok.line)};
      }
      if (allow_literal && tok.kind == Tok::String) {
        Term lit;
        following = read_object(lex, tok, none, lit);
        return lit;
      }
      lex.fail(allow_literal ? "expected ?variable, <IRI> or literal" : "expected ?variable or <IRI>");
    };

    TriplePattern pat;
    Token next;
    pat.subject = position(first, false, next);
    pat.predicate = position(next, false, next);
    pat.object = position(next, true, next);
    if (next.kind == Tok::Dot) next = lex.next();
    if (next.kind != Tok::End) lex.fail("expected end of pattern");
    out.push_back(std::move(pat));
  }
  if (out.empty()) throw ParseError("pattern file contains no patterns");
  return out;
}

}  // namespace chaingraph::kg
