#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace chaingraph::evm {

namespace op {
inline constexpr std::uint8_t STOP = 0x00;
inline constexpr std::uint8_t ADD = 0x01;
inline constexpr std::uint8_t MUL = 0x02;
inline constexpr std::uint8_t LT = 0x10;
inline constexpr std::uint8_t EQ = 0x14;
inline constexpr std::uint8_t ISZERO = 0x15;
inline constexpr std::uint8_t SHR = 0x1c;
inline constexpr std::uint8_t CALLVALUE = 0x34;
inline constexpr std::uint8_t CALLDATALOAD = 0x35;
inline constexpr std::uint8_t CALLDATASIZE = 0x36;
inline constexpr std::uint8_t CALLDATACOPY = 0x37;
inline constexpr std::uint8_t POP = 0x50;
inline constexpr std::uint8_t MSTORE = 0x52;
inline constexpr std::uint8_t SLOAD = 0x54;
inline constexpr std::uint8_t SSTORE = 0x55;
inline constexpr std::uint8_t JUMP = 0x56;
inline constexpr std::uint8_t JUMPI = 0x57;
inline constexpr std::uint8_t JUMPDEST = 0x5b;
inline constexpr std::uint8_t PUSH0 = 0x5f;
inline constexpr std::uint8_t PUSH1 = 0x60;
inline constexpr std::uint8_t PUSH4 = 0x63;
inline constexpr std::uint8_t PUSH32 = 0x7f;
inline constexpr std::uint8_t DUP1 = 0x80;
inline constexpr std::uint8_t CREATE = 0xf0;
inline constexpr std::uint8_t RETURN = 0xf3;
inline constexpr std::uint8_t CREATE2 = 0xf5;
inline constexpr std::uint8_t REVERT = 0xfd;
inline constexpr std::uint8_t INVALID = 0xfe;
inline constexpr std::uint8_t SELFDESTRUCT = 0xff;
}  // namespace op

/// Canonical mnemonic, or "INVALID" for bytes with no assigned opcode.
std::string_view mnemonic(std::uint8_t opcode);

/// True when the byte has an assigned opcode (0xfe itself counts as defined).
bool is_defined(std::uint8_t opcode);

std::optional<std::uint8_t> opcode_for(std::string_view mnemonic);

/// Number of immediate bytes following the opcode (0 for non-push).
constexpr std::size_t push_width(std::uint8_t opcode) {
  return opcode >= op::PUSH1 && opcode <= op::PUSH32 ? opcode - op::PUSH1 + 1 : 0;
}

constexpr bool is_push(std::uint8_t opcode) {
  return opcode >= op::PUSH0 && opcode <= op::PUSH32;
}

/// Instructions after which control never falls through.
bool is_terminal(std::uint8_t opcode);

}  // namespace chaingraph::evm
