#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chaingraph/abi/codec.hpp"
#include "chaingraph/abi/signature.hpp"
#include "chaingraph/semantics/registry.hpp"
#include "chaingraph/semantics/transaction.hpp"

namespace chaingraph::semantics {

struct ContractCreation {
  Address contract;
};

struct ValueTransfer {};

struct ContractCall {
  std::string label;
  std::vector<abi::DecodedArgument> arguments;
};

struct UnknownCall {
  /// Up to the first four bytes of input.
  Bytes selector;
};

using TransactionKind = std::variant<ContractCreation, ValueTransfer, ContractCall, UnknownCall>;

std::string describe(const TransactionKind& kind);

struct RelationEdge {
  Address subject;
  std::string predicate;
  Address object;
  Hash32 tx_hash;
  Wei value;
  std::optional<Address> proceeds_recipient;

  bool operator==(const RelationEdge&) const = default;
};

inline constexpr std::string_view kDeployLabel = "Deploy";
inline constexpr std::string_view kTransferLabel = "Transfer";

enum class TagKind { Deployer, NftMinter, Exchange, DepositAddress, Contract, Eoa, KnownEntity };

std::string_view to_string(TagKind kind);
std::optional<TagKind> tag_kind_from_string(std::string_view text);

struct AddressTag {
  Address address;
  TagKind kind;
  /// NFT contract for NftMinter tags.
  std::optional<Address> target;
  Hash32 source_tx;

  bool operator==(const AddressTag&) const = default;
};

struct SemanticsConfig {
  /// Share of tx.value that internal transfers must route to one recipient
  /// for it to count as the proceeds recipient.
  double proceeds_threshold = 0.9;
};

/// Classifies and decodes transactions against a registry snapshot.
class TransactionClassifier {
 public:
  TransactionClassifier(const ContractRegistry& registry, AbiResolver& resolver,
                        const abi::SignatureDictionary& dictionary)
      : registry_(registry), resolver_(resolver), dictionary_(dictionary) {}

  TransactionKind classify(const ChainTransaction& tx) const;

 private:
  const ContractRegistry& registry_;
  AbiResolver& resolver_;
  const abi::SignatureDictionary& dictionary_;
};

std::vector<RelationEdge> extract_relations(const ChainTransaction& tx, const TransactionKind& kind,
                                            const SemanticsConfig& config = {});

/// Recipient receiving at least `threshold` of tx.value from the called
/// contract through internal transfers, if any.
std::optional<Address> proceeds_recipient(const ChainTransaction& tx, double threshold);

/// True when the label names a mint-like function (case-insensitive "mint").
bool is_mint_label(std::string_view label);

std::vector<AddressTag> tag_addresses(const std::vector<RelationEdge>& edges);

}  // namespace chaingraph::semantics
