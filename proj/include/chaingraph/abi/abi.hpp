#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaingraph/bytes.hpp"
#include "chaingraph/evm/disasm.hpp"

namespace chaingraph::abi {

enum class Mutability { Payable, NonPayable, View, Pure };

std::string_view to_string(Mutability m);
Mutability mutability_from_string(std::string_view text);

struct ParamSlot {
  std::string name;
  std::string type;
  /// Presence-only slot from bytecode reconstruction; its type is a
  /// placeholder and must not drive decoding.
  bool opaque = false;

  bool operator==(const ParamSlot&) const = default;
};

/// Placeholder emitted for reconstructed inputs/outputs.
ParamSlot opaque_slot();

struct AbiFunction {
  Selector selector;
  std::optional<std::string> name;
  bool payable = false;
  Mutability state_mutability = Mutability::NonPayable;
  std::vector<ParamSlot> inputs;
  std::vector<ParamSlot> outputs;

  bool operator==(const AbiFunction&) const = default;
};

using ContractAbi = std::vector<AbiFunction>;

const AbiFunction* find_function(const ContractAbi& abi, const Selector& selector);

/// Standard contract-ABI JSON (array of {"type":"function",...}).
nlohmann::json to_json(const ContractAbi& abi);

/// Parses standard ABI JSON. Non-function entries are skipped; selectors are
/// derived from name and input types.
ContractAbi abi_from_json(const nlohmann::json& doc);

/// Opcode mnemonics seen in a function and everything reachable from it.
class TagSet {
 public:
  void insert(std::string_view mnemonic) { tags_.emplace(mnemonic); }
  bool contains(std::string_view mnemonic) const { return tags_.contains(std::string(mnemonic)); }
  bool empty() const { return tags_.empty(); }
  std::size_t size() const { return tags_.size(); }
  const std::set<std::string>& items() const { return tags_; }

  bool operator==(const TagSet&) const = default;

 private:
  std::set<std::string> tags_;
};

/// Depth-first walk from `fn` over constant jump targets and fall-through
/// edges, each destination visited once.
TagSet function_tags(const evm::FunctionBody& fn,
                     const std::map<std::size_t, evm::FunctionBody>& destinations);

/// Reconstructs the function list of a contract from its runtime bytecode.
/// Output is ordered by selector bytes ascending.
ContractAbi abi_from_program(const evm::Program& program);
ContractAbi abi_from_bytecode(ByteView bytecode);

}  // namespace chaingraph::abi
