#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chaingraph/bytes.hpp"

namespace chaingraph::abi {

struct Signature {
  std::string name;
  std::vector<std::string> types;

  std::string canonical() const;
};

/// Parses `name(type,...)` with no whitespace. Nested tuple types are kept
/// as a single type string.
Signature parse_signature(std::string_view text);

/// First four bytes of keccak-256 over the exact signature text.
Selector selector_for_signature(std::string_view signature);

/// Selector -> text signature, validated against keccak on insertion.
class SignatureDictionary {
 public:
  /// Throws ValidationError if the selector does not match the signature or
  /// another signature already occupies the selector.
  void add(const Selector& selector, const std::string& signature);
  void add(const std::string& signature);

  const std::string* signature(const Selector& selector) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// One `selectorhex signature` pair per line; blank lines and `#`
  /// comments are ignored.
  static SignatureDictionary load(std::istream& in);
  static SignatureDictionary load_file(const std::string& path);

 private:
  std::map<Selector, std::string> entries_;
};

/// Name part of the dictionary signature for `selector`, if any.
std::optional<std::string> resolve_function_name(const Selector& selector,
                                                 const SignatureDictionary& dict);

/// "call:0x<selector hex>"
std::string fallback_label(const Selector& selector);

}  // namespace chaingraph::abi
