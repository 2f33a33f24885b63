#include "chaingraph/abi/signature.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "chaingraph/error.hpp"
#include "chaingraph/keccak.hpp"

namespace chaingraph::abi {

std::string Signature::canonical() const {
  std::string out = name + "(";
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i) out += ",";
    out += types[i];
  }
  return out + ")";
}

Signature parse_signature(std::string_view text) {
  if (text.empty()) throw ValidationError("empty function signature");
  auto open = text.find('(');
  if (open == std::string_view::npos || open == 0 || text.back() != ')') {
    throw ValidationError("malformed function signature '" + std::string(text) + "'");
  }
  Signature sig;
  sig.name = std::string(text.substr(0, open));
  for (char c : sig.name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$')) {
      throw ValidationError("invalid character in function name '" + sig.name + "'");
    }
  }
  if (std::isdigit(static_cast<unsigned char>(sig.name[0]))) {
    throw ValidationError("function name may not start with a digit: '" + sig.name + "'");
  }
  std::string_view params = text.substr(open + 1, text.size() - open - 2);
  int depth = 0;
  std::string current;
  for (char c : params) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      throw ValidationError("whitespace in function signature '" + std::string(text) + "'");
    }
    if (c == '(') ++depth;
    if (c == ')' && --depth < 0) {
      throw ValidationError("unbalanced parentheses in '" + std::string(text) + "'");
    }
    if (c == ',' && depth == 0) {
      if (current.empty()) throw ValidationError("empty parameter type in '" + std::string(text) + "'");
      sig.types.push_back(std::move(current));
      current.clear();
      continue;
    }
    current.push_back(c);
  }
  if (depth != 0) throw ValidationError("unbalanced parentheses in '" + std::string(text) + "'");
  if (!current.empty()) {
    sig.types.push_back(std::move(current));
  } else if (!params.empty()) {
    throw ValidationError("trailing comma in '" + std::string(text) + "'");
  }
  return sig;
}

Selector selector_for_signature(std::string_view signature) {
  parse_signature(signature);
  auto digest = keccak256(signature);
  return Selector::from_span(ByteView{digest.bytes.data(), 4});
}

void SignatureDictionary::add(const Selector& selector, const std::string& signature) {
  Selector expected = selector_for_signature(signature);
  if (expected != selector) {
    throw ValidationError("selector " + selector.hex() + " does not match '" + signature +
                          "' (keccak gives " + expected.hex() + ")");
  }
  auto [it, inserted] = entries_.try_emplace(selector, signature);
  if (!inserted && it->second != signature) {
    throw ValidationError("selector collision on " + selector.hex() + ": '" + it->second +
                          "' vs '" + signature + "'");
  }
}

void SignatureDictionary::add(const std::string& signature) {
  add(selector_for_signature(signature), signature);
}

const std::string* SignatureDictionary::signature(const Selector& selector) const {
  auto it = entries_.find(selector);
  return it == entries_.end() ? nullptr : &it->second;
}

SignatureDictionary SignatureDictionary::load(std::istream& in) {
  SignatureDictionary dict;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string selector_hex, signature, extra;
    if (!(fields >> selector_hex) || selector_hex[0] == '#') continue;
    if (!(fields >> signature) || (fields >> extra)) {
      throw ParseError("expected '<selector> <signature>'", lineno);
    }
    try {
      dict.add(Selector::from_hex(selector_hex), signature);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return dict;
}

SignatureDictionary SignatureDictionary::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open signature dictionary '" + path + "'");
  return load(in);
}

std::optional<std::string> resolve_function_name(const Selector& selector,
                                                 const SignatureDictionary& dict) {
  const std::string* sig = dict.signature(selector);
  if (!sig) return std::nullopt;
  return sig->substr(0, sig->find('('));
}

std::string fallback_label(const Selector& selector) { return "call:" + selector.hex_prefixed(); }

}  // namespace chaingraph::abi
