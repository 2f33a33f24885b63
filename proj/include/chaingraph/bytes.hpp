#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chaingraph/error.hpp"

namespace chaingraph {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Arbitrary-precision non-negative amount of wei.
using Wei = boost::multiprecision::cpp_int;

/// Parses hexadecimal text with an optional 0x/0X prefix. Digits are
/// case-insensitive; odd length or a non-hex digit is a ParseError.
Bytes parse_hex(std::string_view text);

/// Lowercase hex without prefix.
std::string to_hex(ByteView bytes);

/// Lowercase hex with 0x prefix.
std::string to_hex_prefixed(ByteView bytes);

Wei parse_wei(std::string_view decimal);
std::string to_decimal(const Wei& value);

/// Fixed-width byte string used for addresses, selectors and hashes.
template <std::size_t N>
struct FixedBytes {
  std::array<std::uint8_t, N> bytes{};

  static constexpr std::size_t size() { return N; }

  static FixedBytes from_span(ByteView data) {
    if (data.size() != N) {
      throw ParseError("expected " + std::to_string(N) + " bytes, got " +
                       std::to_string(data.size()));
    }
    FixedBytes out;
    std::copy(data.begin(), data.end(), out.bytes.begin());
    return out;
  }

  static FixedBytes from_hex(std::string_view text) {
    return from_span(parse_hex(text));
  }

  ByteView view() const { return {bytes.data(), N}; }
  std::string hex() const { return to_hex(view()); }
  std::string hex_prefixed() const { return to_hex_prefixed(view()); }

  auto operator<=>(const FixedBytes&) const = default;
};

using Address = FixedBytes<20>;
using Selector = FixedBytes<4>;
using Hash32 = FixedBytes<32>;

struct FixedBytesHash {
  template <std::size_t N>
  std::size_t operator()(const FixedBytes<N>& value) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto b : value.bytes) {
      h = (h ^ b) * 1099511628211ULL;
    }
    return h;
  }
};

}  // namespace chaingraph
