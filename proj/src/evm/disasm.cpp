#include "chaingraph/evm/disasm.hpp"

#include <algorithm>
#include <sstream>

namespace chaingraph::evm {

std::optional<std::uint64_t> Instruction::push_value() const {
  if (!is_push(opcode)) return std::nullopt;
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < push_data.size(); ++i) {
    if (value >> 56 != 0) return std::nullopt;
    value = (value << 8) | push_data[i];
  }
  return value;
}

std::string Instruction::to_string() const {
  std::ostringstream out;
  out << mnemonic();
  if (!is_defined(opcode)) {
    out << "(0x" << to_hex(ByteView{&opcode, 1}) << ")";
  }
  if (!push_data.empty()) {
    out << " 0x" << to_hex(push_data);
  }
  if (truncated) out << " (truncated)";
  return out.str();
}

std::optional<std::size_t> Program::index_of(std::size_t offset) const {
  auto it = std::lower_bound(instructions.begin(), instructions.end(), offset,
                             [](const Instruction& ins, std::size_t off) { return ins.offset < off; });
  if (it == instructions.end() || it->offset != offset) return std::nullopt;
  return static_cast<std::size_t>(it - instructions.begin());
}

std::vector<Instruction> decode_instructions(ByteView bytecode) {
  std::vector<Instruction> out;
  std::size_t pc = 0;
  while (pc < bytecode.size()) {
    Instruction ins;
    ins.offset = pc;
    ins.opcode = bytecode[pc];
    std::size_t width = push_width(ins.opcode);
    if (width > 0) {
      std::size_t available = std::min(width, bytecode.size() - pc - 1);
      ins.push_data.assign(width, 0);
      std::copy_n(bytecode.begin() + static_cast<std::ptrdiff_t>(pc + 1), available,
                  ins.push_data.begin());
      ins.data_length = available;
      ins.truncated = available < width;
    }
    pc += ins.size();
    out.push_back(std::move(ins));
  }
  return out;
}

Bytes serialize(std::span<const Instruction> instructions) {
  Bytes out;
  for (const auto& ins : instructions) {
    out.push_back(ins.opcode);
    out.insert(out.end(), ins.push_data.begin(),
               ins.push_data.begin() + static_cast<std::ptrdiff_t>(ins.data_length));
  }
  return out;
}

std::set<std::size_t> find_jumpdests(std::span<const Instruction> instructions) {
  std::set<std::size_t> out;
  for (const auto& ins : instructions) {
    if (ins.opcode == op::JUMPDEST) out.insert(ins.offset);
  }
  return out;
}

std::map<Selector, std::size_t> extract_selectors(const Program& program) {
  std::map<Selector, std::size_t> out;
  const auto& code = program.instructions;
  for (std::size_t i = 0; i + 3 < code.size(); ++i) {
    const auto& push_sel = code[i];
    const auto& eq = code[i + 1];
    const auto& push_dest = code[i + 2];
    const auto& jumpi = code[i + 3];
    if (push_sel.opcode != op::PUSH4 || push_sel.truncated) continue;
    if (eq.opcode != op::EQ || jumpi.opcode != op::JUMPI) continue;
    if (push_dest.opcode < op::PUSH1 || push_dest.opcode > op::PUSH4 || push_dest.truncated) continue;
    auto selector = Selector::from_span(push_sel.push_data);
    out.try_emplace(selector, static_cast<std::size_t>(*push_dest.push_value()));
  }
  return out;
}

bool detect_not_payable(const Program& program, std::size_t entry_offset) {
  auto start = program.index_of(entry_offset);
  if (!start) return false;
  const auto& code = program.instructions;
  const std::size_t window_end = std::min(code.size(), *start + kNotPayableWindow);

  for (std::size_t i = *start; i < window_end; ++i) {
    // The guard must sit in the entry block itself.
    if (i > *start && (code[i].opcode == op::JUMPDEST || is_terminal(code[i].opcode))) break;
    if (code[i].opcode != op::CALLVALUE) continue;

    // Walk forward expecting ISZERO, then a PUSH, then JUMPI.
    int stage = 0;
    std::size_t unrelated = 0;
    std::size_t j = i + 1;
    for (; j < window_end && stage < 3; ++j) {
      std::uint8_t opc = code[j].opcode;
      bool advance = (stage == 0 && opc == op::ISZERO) ||
                     (stage == 1 && push_width(opc) > 0) ||
                     (stage == 2 && opc == op::JUMPI);
      if (advance) {
        ++stage;
        continue;
      }
      if (opc == op::JUMPI || opc == op::JUMPDEST || is_terminal(opc)) break;
      if (++unrelated > kNotPayableMaxInterleave) break;
    }
    if (stage != 3) continue;

    // Fall-through of the JUMPI must reach a revert before leaving the block.
    for (std::size_t k = j; k < code.size() && k < j + 4; ++k) {
      std::uint8_t opc = code[k].opcode;
      if (opc == op::REVERT || opc == op::INVALID || !is_defined(opc)) return true;
      if (opc == op::JUMPDEST || opc == op::JUMPI || is_terminal(opc)) break;
    }
  }
  return false;
}

std::map<std::size_t, FunctionBody> build_destinations(const Program& program) {
  std::map<std::size_t, FunctionBody> out;
  const auto& code = program.instructions;
  for (std::size_t dest : program.jumpdests) {
    auto start = program.index_of(dest);
    if (!start) continue;
    FunctionBody body;
    body.entry_offset = dest;
    for (std::size_t i = *start; i < code.size(); ++i) {
      const auto& ins = code[i];
      if (i != *start && ins.opcode == op::JUMPDEST) {
        body.successors.insert(ins.offset);
        break;
      }
      body.reachable_offsets.insert(ins.offset);
      body.opcodes.push_back(ins.opcode);
      if ((ins.opcode == op::JUMP || ins.opcode == op::JUMPI) && i > *start) {
        if (auto target = code[i - 1].push_value();
            target && is_push(code[i - 1].opcode) && program.jumpdests.contains(*target)) {
          body.successors.insert(static_cast<std::size_t>(*target));
        }
      }
      if (is_terminal(ins.opcode)) break;
    }
    out.emplace(dest, std::move(body));
  }
  return out;
}

Program disassemble(ByteView bytecode) {
  Program program;
  program.instructions = decode_instructions(bytecode);
  program.jumpdests = find_jumpdests(program.instructions);
  program.destinations = build_destinations(program);
  program.selectors = extract_selectors(program);
  for (const auto& [selector, offset] : program.selectors) {
    program.not_payable[offset] = detect_not_payable(program, offset);
  }
  return program;
}

Program disassemble_hex(std::string_view hex) { return disassemble(parse_hex(hex)); }

}  // namespace chaingraph::evm
