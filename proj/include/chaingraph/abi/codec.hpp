#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chaingraph/abi/abi.hpp"
#include "chaingraph/abi/signature.hpp"
#include "chaingraph/bytes.hpp"

namespace chaingraph::abi {

using Word = FixedBytes<32>;

/// A decoded argument. Unsupported types stay as their raw head word.
using AbiValue = std::variant<Wei, Address, bool, Word, std::string, Bytes>;

std::string format_value(const AbiValue& value);

struct DecodedArgument {
  std::string type;
  AbiValue value;
};

struct DecodedCall {
  Selector selector;
  std::optional<std::string> name;
  std::vector<DecodedArgument> arguments;

  /// Function name, or the call:0x<selector> fallback.
  std::string label() const;
};

/// Decodes the argument section (input without selector) for the given types.
/// Supported: uint<N>, address, bool, bytes32, string, bytes. Anything else
/// is returned as its raw head word with type "raw".
std::vector<DecodedArgument> decode_arguments(const std::vector<std::string>& types, ByteView data);

/// Encodes static arguments (uint<N>, address, bool, bytes32, raw words).
Bytes encode_arguments(const std::vector<DecodedArgument>& arguments);

/// Decodes call input. Types come from the ABI entry when it is typed, else
/// from the dictionary signature, else the payload is split into raw words.
/// Throws DecodeError when the input is shorter than 4 bytes or the static
/// section.
DecodedCall decode_call(ByteView input, const ContractAbi& abi, const SignatureDictionary& dict);

}  // namespace chaingraph::abi
