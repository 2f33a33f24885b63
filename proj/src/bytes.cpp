#include "chaingraph/bytes.hpp"

namespace chaingraph {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes parse_hex(std::string_view text) {
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
  }
  if (text.size() % 2 != 0) {
    throw ParseError("odd-length hex string");
  }
  Bytes out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2) {
    int hi = hex_digit(text[i]);
    int lo = hex_digit(text[i + 1]);
    if (hi < 0 || lo < 0) {
      throw ParseError("invalid hex digit at position " + std::to_string(hi < 0 ? i : i + 1));
    }
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

std::string to_hex_prefixed(ByteView bytes) { return "0x" + to_hex(bytes); }

Wei parse_wei(std::string_view decimal) {
  if (decimal.empty()) {
    throw ParseError("empty wei amount");
  }
  Wei value = 0;
  for (char c : decimal) {
    if (c < '0' || c > '9') {
      throw ParseError("wei amount must be non-negative decimal text: '" +
                       std::string(decimal) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

std::string to_decimal(const Wei& value) { return value.str(); }

}  // namespace chaingraph
