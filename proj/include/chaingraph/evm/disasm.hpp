#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "chaingraph/bytes.hpp"
#include "chaingraph/evm/opcodes.hpp"

namespace chaingraph::evm {

struct Instruction {
  std::size_t offset = 0;
  std::uint8_t opcode = op::STOP;
  /// Immediate bytes, zero-padded to the full push width.
  Bytes push_data;
  /// Immediate bytes actually present in the code (< width when truncated).
  std::size_t data_length = 0;
  bool truncated = false;

  std::string_view mnemonic() const { return evm::mnemonic(opcode); }
  /// Width of the encoded instruction in the original code.
  std::size_t size() const { return 1 + data_length; }
  /// Immediate interpreted as a big-endian integer, if it fits in 64 bits.
  std::optional<std::uint64_t> push_value() const;
  std::string to_string() const;
};

/// Straight-line region starting at a JUMPDEST. The region ends at a terminal
/// instruction or just before the next JUMPDEST; control leaving it is
/// recorded in `successors` (constant jump targets plus fall-through).
struct FunctionBody {
  std::size_t entry_offset = 0;
  std::set<std::size_t> reachable_offsets;
  /// Opcodes of the region in code order.
  std::vector<std::uint8_t> opcodes;
  std::set<std::size_t> successors;
};

struct Program {
  std::vector<Instruction> instructions;
  std::set<std::size_t> jumpdests;
  std::map<Selector, std::size_t> selectors;
  std::map<std::size_t, FunctionBody> destinations;
  std::map<std::size_t, bool> not_payable;

  /// Index into `instructions` of the instruction starting at `offset`.
  std::optional<std::size_t> index_of(std::size_t offset) const;
};

Program disassemble(ByteView bytecode);

/// Accepts hex text with optional 0x prefix. Throws ParseError on odd length.
Program disassemble_hex(std::string_view hex);

/// Linear sweep honoring push widths; no derived analyses.
std::vector<Instruction> decode_instructions(ByteView bytecode);

/// Re-encodes instructions; truncated pushes are emitted at their original
/// length so the output equals the disassembled input.
Bytes serialize(std::span<const Instruction> instructions);

std::set<std::size_t> find_jumpdests(std::span<const Instruction> instructions);

/// Matches `[DUP1] PUSH4 sel EQ PUSH1..4 dest JUMPI` dispatcher comparisons.
/// The first occurrence of a selector wins.
std::map<Selector, std::size_t> extract_selectors(const Program& program);

/// Window of instructions inspected for a callvalue guard.
inline constexpr std::size_t kNotPayableWindow = 12;
/// Unrelated instructions tolerated between the guard's parts.
inline constexpr std::size_t kNotPayableMaxInterleave = 3;

/// True iff a `CALLVALUE .. ISZERO .. PUSH .. JUMPI` guard lies within the
/// first kNotPayableWindow instructions from `entry_offset` and its
/// fall-through path reverts.
bool detect_not_payable(const Program& program, std::size_t entry_offset);

/// Straight-line regions for every JUMPDEST.
std::map<std::size_t, FunctionBody> build_destinations(const Program& program);

}  // namespace chaingraph::evm
