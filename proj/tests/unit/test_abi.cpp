#include <gtest/gtest.h>

#include <fstream>

#include "chaingraph/abi/abi.hpp"
#include "chaingraph/evm/disasm.hpp"
#include "support/oracles.hpp"

using namespace chaingraph;
using chaingraph::abi::Mutability;

namespace {

chaingraph::abi::AbiFunction expected(std::string_view selector, Mutability m, bool input, bool output) {
  chaingraph::abi::AbiFunction fn;
  fn.selector = Selector::from_hex(selector);
  fn.state_mutability = m;
  fn.payable = m == Mutability::Payable;
  if (input) fn.inputs.push_back(chaingraph::abi::opaque_slot());
  if (output) fn.outputs.push_back(chaingraph::abi::opaque_slot());
  return fn;
}

std::set<std::string> tag_names(std::string_view hex, std::size_t entry) {
  auto p = evm::disassemble_hex(hex);
  return chaingraph::abi::function_tags(p.destinations.at(entry), p.destinations).items();
}

}  // namespace

TEST(FunctionTags, StraightLineBody) {
  EXPECT_EQ(tag_names("5b54f3", 0), (std::set<std::string>{"JUMPDEST", "SLOAD", "RETURN"}));
}

TEST(FunctionTags, FollowsJumpIntoSharedSubroutine) {
  // 00 JUMPDEST PUSH1 06 JUMP | 04 STOP STOP | 06 JUMPDEST PUSH1 1 PUSH1 0 SSTORE STOP
  auto tags = tag_names("5b600656" "00" "00" "5b600160005500", 0);
  EXPECT_TRUE(tags.count("SSTORE"));
  EXPECT_TRUE(tags.count("JUMP"));
}

TEST(FunctionTags, CyclesVisitedOnce) {
  // 00 JUMPDEST PUSH1 00 JUMP: jumps to itself.
  EXPECT_EQ(tag_names("5b600056", 0), (std::set<std::string>{"JUMPDEST", "PUSH1", "JUMP"}));
}

TEST(FunctionTags, ComputedJumpSkipped) {
  // JUMPDEST CALLDATASIZE JUMP | JUMPDEST SSTORE
  auto tags = tag_names("5b36565b55", 0);
  EXPECT_FALSE(tags.count("SSTORE"));
}

TEST(FunctionTags, EmptyBody) {
  evm::FunctionBody empty;
  EXPECT_TRUE(chaingraph::abi::function_tags(empty, {}).empty());
}

TEST(AbiReconstruct, EmptyBytecode) { EXPECT_TRUE(chaingraph::abi::abi_from_bytecode(Bytes{}).empty()); }

TEST(AbiReconstruct, FourFunctionFixture) {
  chaingraph::abi::ContractAbi want = {
      expected("2e64cec1", Mutability::View, false, true),         // retrieve()
      expected("6057361d", Mutability::NonPayable, true, false),   // store(uint256)
      expected("d0e30db0", Mutability::Payable, false, false),     // deposit()
      expected("eee97206", Mutability::Pure, true, true),          // double(uint256)
  };
  EXPECT_EQ(chaingraph::abi::abi_from_bytecode(testsupport::four_function_bytecode()), want);
}

TEST(AbiReconstruct, FixtureFileMatchesHandAssembly) {
  std::ifstream in(testsupport::kFixtures / "four_function.hex");
  std::string hex((std::istreambuf_iterator<char>(in)), {});
  while (!hex.empty() && std::isspace(static_cast<unsigned char>(hex.back()))) hex.pop_back();
  EXPECT_EQ(parse_hex(hex), testsupport::four_function_bytecode());
}

TEST(AbiReconstruct, PayableIffMutabilityPayable) {
  for (const auto& fn : chaingraph::abi::abi_from_bytecode(testsupport::four_function_bytecode())) {
    EXPECT_EQ(fn.payable, fn.state_mutability == Mutability::Payable);
    EXPECT_FALSE(fn.name.has_value());
    for (const auto& slot : fn.inputs) EXPECT_TRUE(slot.opaque);
  }
}

TEST(AbiReconstruct, ViewAlwaysHasOutputs) {
  // Guarded body that only SLOADs and STOPs: still view, outputs present.
  // dispatcher for 2e64cec1 -> 0x0d ; 0d: guard ; 19: SLOAD STOP
  std::string hex = "8063" "2e64cec1" "14610" "00d57" "00" "00"
                    "5b348015610" "019576000" "80fd" "5b6000545000";
  auto abi = chaingraph::abi::abi_from_bytecode(parse_hex(hex));
  ASSERT_EQ(abi.size(), 1u);
  EXPECT_EQ(abi[0].state_mutability, Mutability::View);
  EXPECT_FALSE(abi[0].outputs.empty());
  EXPECT_TRUE(abi[0].inputs.empty());
}

TEST(AbiJson, ParsesStandardDocument) {
  auto doc = nlohmann::json::parse(R"([
    {"type":"constructor","inputs":[]},
    {"type":"function","name":"transfer","stateMutability":"nonpayable",
     "inputs":[{"name":"to","type":"address"},{"name":"amount","type":"uint256"}],
     "outputs":[{"name":"","type":"bool"}]},
    {"type":"function","name":"mint","stateMutability":"payable","inputs":[],"outputs":[]},
    {"type":"event","name":"Transfer","inputs":[]}
  ])");
  auto abi = chaingraph::abi::abi_from_json(doc);
  ASSERT_EQ(abi.size(), 2u);
  EXPECT_EQ(abi[0].selector.hex(), "1249c58b");
  EXPECT_TRUE(abi[0].payable);
  EXPECT_EQ(abi[1].selector.hex(), "a9059cbb");
  EXPECT_EQ(abi[1].inputs.size(), 2u);
  EXPECT_EQ(chaingraph::abi::abi_from_json(chaingraph::abi::to_json(abi)), abi);
}

TEST(AbiJson, RejectsNonArrayAndBadMutability) {
  EXPECT_THROW(chaingraph::abi::abi_from_json(nlohmann::json::object()), ParseError);
  EXPECT_THROW(chaingraph::abi::abi_from_json(nlohmann::json::parse(R"([{"name":"f","stateMutability":"odd"}])")),
               ParseError);
}
