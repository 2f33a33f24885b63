#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaingraph/bytes.hpp"

namespace chaingraph::semantics {

struct InternalTransfer {
  Address from;
  Address to;
  Wei value;

  bool operator==(const InternalTransfer&) const = default;
};

struct ChainTransaction {
  Hash32 hash;
  std::uint64_t block_number = 0;
  std::int64_t timestamp = 0;
  Address from;
  /// Absent for contract creation.
  std::optional<Address> to;
  Wei value;
  Bytes input;
  std::optional<Address> created_contract;
  std::vector<InternalTransfer> internal_transfers;

  bool is_creation() const { return !to.has_value(); }
  bool operator==(const ChainTransaction&) const = default;
};

/// Throws ValidationError when a creation lacks created_contract.
void validate(const ChainTransaction& tx);

/// Chain fixture line schema: {hash, block_number, timestamp, from, to?,
/// value_wei, input, created_contract?, internal_transfers}.
ChainTransaction transaction_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ChainTransaction& tx);

}  // namespace chaingraph::semantics
