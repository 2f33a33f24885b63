#include "chaingraph/abi/abi.hpp"

#include <algorithm>
#include <array>
#include <vector>

#include "chaingraph/abi/signature.hpp"
#include "chaingraph/error.hpp"

namespace chaingraph::abi {

std::string_view to_string(Mutability m) {
  switch (m) {
    case Mutability::Payable: return "payable";
    case Mutability::NonPayable: return "nonpayable";
    case Mutability::View: return "view";
    case Mutability::Pure: return "pure";
  }
  return "nonpayable";
}

Mutability mutability_from_string(std::string_view text) {
  if (text == "payable") return Mutability::Payable;
  if (text == "nonpayable") return Mutability::NonPayable;
  if (text == "view") return Mutability::View;
  if (text == "pure") return Mutability::Pure;
  throw ParseError("unknown stateMutability '" + std::string(text) + "'");
}

ParamSlot opaque_slot() { return ParamSlot{"", "bytes32", true}; }

const AbiFunction* find_function(const ContractAbi& abi, const Selector& selector) {
  auto it = std::find_if(abi.begin(), abi.end(),
                         [&](const AbiFunction& f) { return f.selector == selector; });
  return it == abi.end() ? nullptr : &*it;
}

namespace {

nlohmann::json slots_to_json(const std::vector<ParamSlot>& slots) {
  auto out = nlohmann::json::array();
  for (const auto& s : slots) out.push_back({{"name", s.name}, {"type", s.type}});
  return out;
}

std::vector<ParamSlot> slots_from_json(const nlohmann::json& doc) {
  std::vector<ParamSlot> out;
  if (!doc.is_array()) return out;
  for (const auto& item : doc) {
    out.push_back(ParamSlot{item.value("name", ""), item.at("type").get<std::string>(), false});
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const ContractAbi& abi) {
  auto out = nlohmann::json::array();
  for (const auto& fn : abi) {
    nlohmann::json entry = {
        {"type", "function"},
        {"selector", fn.selector.hex_prefixed()},
        {"payable", fn.payable},
        {"stateMutability", to_string(fn.state_mutability)},
        {"inputs", slots_to_json(fn.inputs)},
        {"outputs", slots_to_json(fn.outputs)},
    };
    if (fn.name) entry["name"] = *fn.name;
    out.push_back(std::move(entry));
  }
  return out;
}

ContractAbi abi_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw ParseError("ABI document must be a JSON array");
  ContractAbi out;
  for (const auto& entry : doc) {
    if (entry.value("type", "function") != "function") continue;
    AbiFunction fn;
    fn.inputs = slots_from_json(entry.value("inputs", nlohmann::json::array()));
    fn.outputs = slots_from_json(entry.value("outputs", nlohmann::json::array()));
    if (entry.contains("stateMutability")) {
      fn.state_mutability = mutability_from_string(entry["stateMutability"].get<std::string>());
    } else if (entry.value("payable", false)) {
      fn.state_mutability = Mutability::Payable;
    } else if (entry.value("constant", false)) {
      fn.state_mutability = Mutability::View;
    }
    fn.payable = fn.state_mutability == Mutability::Payable;
    if (entry.contains("name")) {
      fn.name = entry["name"].get<std::string>();
      Signature sig{*fn.name, {}};
      for (const auto& in : fn.inputs) sig.types.push_back(in.type);
      fn.selector = selector_for_signature(sig.canonical());
    } else if (entry.contains("selector")) {
      fn.selector = Selector::from_hex(entry["selector"].get<std::string>());
    } else {
      throw ParseError("ABI function entry needs a name or a selector");
    }
    out.push_back(std::move(fn));
  }
  std::sort(out.begin(), out.end(),
            [](const AbiFunction& a, const AbiFunction& b) { return a.selector < b.selector; });
  return out;
}

TagSet function_tags(const evm::FunctionBody& fn,
                     const std::map<std::size_t, evm::FunctionBody>& destinations) {
  TagSet tags;
  std::set<std::size_t> visited{fn.entry_offset};
  std::vector<const evm::FunctionBody*> stack{&fn};
  while (!stack.empty()) {
    const auto* body = stack.back();
    stack.pop_back();
    for (auto opcode : body->opcodes) tags.insert(evm::mnemonic(opcode));
    for (auto target : body->successors) {
      auto it = destinations.find(target);
      if (it == destinations.end() || !visited.insert(target).second) continue;
      stack.push_back(&it->second);
    }
  }
  return tags;
}

namespace {

constexpr std::array<std::string_view, 3> kStateChanging = {"SSTORE", "CREATE", "CREATE2"};
constexpr std::array<std::string_view, 1> kStateReading = {"SLOAD"};
constexpr std::array<std::string_view, 3> kCalldataReads = {"CALLDATALOAD", "CALLDATASIZE",
                                                            "CALLDATACOPY"};

template <std::size_t N>
bool any_of(const TagSet& tags, const std::array<std::string_view, N>& names) {
  return std::any_of(names.begin(), names.end(),
                     [&](std::string_view n) { return tags.contains(n); });
}

}  // namespace

ContractAbi abi_from_program(const evm::Program& program) {
  ContractAbi abi;
  for (const auto& [selector, offset] : program.selectors) {
    auto dest = program.destinations.find(offset);
    if (dest == program.destinations.end()) continue;

    TagSet tags = function_tags(dest->second, program.destinations);
    AbiFunction fn;
    fn.selector = selector;
    auto np = program.not_payable.find(offset);
    fn.payable = !(np != program.not_payable.end() && np->second);

    Mutability mutability = Mutability::NonPayable;
    if (fn.payable) {
      mutability = Mutability::Payable;
    } else if (!any_of(tags, kStateChanging)) {
      mutability = any_of(tags, kStateReading) ? Mutability::View : Mutability::Pure;
    }
    fn.state_mutability = mutability;

    if (tags.contains("RETURN") || mutability == Mutability::View) {
      fn.outputs.push_back(opaque_slot());
    }
    if (any_of(tags, kCalldataReads)) {
      fn.inputs.push_back(opaque_slot());
    }
    abi.push_back(std::move(fn));
  }
  // program.selectors is a std::map, so `abi` is already selector-ordered.
  return abi;
}

ContractAbi abi_from_bytecode(ByteView bytecode) {
  return abi_from_program(evm::disassemble(bytecode));
}

}  // namespace chaingraph::abi
