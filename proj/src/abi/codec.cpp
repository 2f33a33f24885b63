#include "chaingraph/abi/codec.hpp"

#include <algorithm>

#include "chaingraph/error.hpp"

namespace chaingraph::abi {

namespace {

constexpr std::size_t kWord = 32;

bool is_uint_type(std::string_view type) {
  if (!type.starts_with("uint")) return false;
  auto bits = type.substr(4);
  return bits.empty() || std::all_of(bits.begin(), bits.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_dynamic(std::string_view type) { return type == "string" || type == "bytes"; }

Word word_at(ByteView data, std::size_t offset) {
  if (offset + kWord > data.size()) {
    throw DecodeError("argument data too short: need " + std::to_string(offset + kWord) +
                      " bytes, have " + std::to_string(data.size()));
  }
  return Word::from_span(data.subspan(offset, kWord));
}

Wei word_to_wei(const Word& w) {
  Wei value = 0;
  for (auto b : w.bytes) value = (value << 8) | b;
  return value;
}

std::size_t word_to_size(const Word& w, std::size_t limit) {
  Wei v = word_to_wei(w);
  if (v > limit) throw DecodeError("offset or length out of range");
  return static_cast<std::size_t>(v);
}

Word wei_to_word(Wei value) {
  Word w;
  for (int i = 31; i >= 0; --i) {
    w.bytes[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value & 0xff);
    value >>= 8;
  }
  if (value != 0) throw DecodeError("integer does not fit in 256 bits");
  return w;
}

}  // namespace

std::string format_value(const AbiValue& value) {
  struct Visitor {
    std::string operator()(const Wei& v) const { return to_decimal(v); }
    std::string operator()(const Address& a) const { return a.hex_prefixed(); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const Word& w) const { return w.hex_prefixed(); }
    std::string operator()(const std::string& s) const { return "\"" + s + "\""; }
    std::string operator()(const Bytes& b) const { return to_hex_prefixed(b); }
  };
  return std::visit(Visitor{}, value);
}

std::string DecodedCall::label() const { return name ? *name : fallback_label(selector); }

std::vector<DecodedArgument> decode_arguments(const std::vector<std::string>& types, ByteView data) {
  std::vector<DecodedArgument> out;
  out.reserve(types.size());
  for (std::size_t i = 0; i < types.size(); ++i) {
    const std::string& type = types[i];
    Word head = word_at(data, i * kWord);
    if (is_uint_type(type)) {
      out.push_back({type, word_to_wei(head)});
    } else if (type == "address") {
      out.push_back({type, Address::from_span(ByteView{head.bytes.data() + 12, 20})});
    } else if (type == "bool") {
      out.push_back({type, head != Word{}});
    } else if (type == "bytes32") {
      out.push_back({type, head});
    } else if (is_dynamic(type)) {
      std::size_t offset = word_to_size(head, data.size());
      std::size_t length = word_to_size(word_at(data, offset), data.size());
      std::size_t begin = offset + kWord;
      if (begin + length > data.size()) throw DecodeError("dynamic " + type + " runs past input");
      auto payload = data.subspan(begin, length);
      if (type == "string") {
        out.push_back({type, std::string(payload.begin(), payload.end())});
      } else {
        out.push_back({type, Bytes(payload.begin(), payload.end())});
      }
    } else {
      out.push_back({type, head});
    }
  }
  return out;
}

Bytes encode_arguments(const std::vector<DecodedArgument>& arguments) {
  Bytes out;
  for (const auto& arg : arguments) {
    Word w;
    if (const auto* v = std::get_if<Wei>(&arg.value)) {
      w = wei_to_word(*v);
    } else if (const auto* a = std::get_if<Address>(&arg.value)) {
      std::copy(a->bytes.begin(), a->bytes.end(), w.bytes.begin() + 12);
    } else if (const auto* b = std::get_if<bool>(&arg.value)) {
      w.bytes[31] = *b ? 1 : 0;
    } else if (const auto* raw = std::get_if<Word>(&arg.value)) {
      w = *raw;
    } else {
      throw DecodeError("encode_arguments supports static types only, got " + arg.type);
    }
    out.insert(out.end(), w.bytes.begin(), w.bytes.end());
  }
  return out;
}

DecodedCall decode_call(ByteView input, const ContractAbi& abi, const SignatureDictionary& dict) {
  if (input.size() < 4) {
    throw DecodeError("call input of " + std::to_string(input.size()) +
                      " bytes is shorter than a selector");
  }
  DecodedCall call;
  call.selector = Selector::from_span(input.first(4));
  ByteView data = input.subspan(4);

  const AbiFunction* fn = find_function(abi, call.selector);
  const std::string* sig = dict.signature(call.selector);
  if (fn && fn->name) {
    call.name = fn->name;
  } else if (sig) {
    call.name = resolve_function_name(call.selector, dict);
  }

  bool typed = fn && std::none_of(fn->inputs.begin(), fn->inputs.end(),
                                  [](const ParamSlot& s) { return s.opaque; });
  std::vector<std::string> types;
  if (typed) {
    for (const auto& slot : fn->inputs) types.push_back(slot.type);
  } else if (sig) {
    types = parse_signature(*sig).types;
  } else {
    types.assign(data.size() / kWord, "raw");
  }
  call.arguments = decode_arguments(types, data);
  return call;
}

}  // namespace chaingraph::abi
