#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "chaingraph/abi/abi.hpp"
#include "chaingraph/bytes.hpp"

namespace chaingraph::semantics {

struct ContractRecord {
  Bytes bytecode;
  std::optional<abi::ContractAbi> abi;
  /// Block at which the code appeared; absent means "always".
  std::optional<std::uint64_t> deployed_block;
};

/// Known contract code, keyed by address. Read-only once loaded.
class ContractRegistry {
 public:
  void add(const Address& address, ContractRecord record);
  const ContractRecord* find(const Address& address) const;

  /// An address is a contract iff bytecode is registered for it at or before
  /// `block`.
  bool is_contract(const Address& address, std::uint64_t block) const;

  std::size_t size() const { return records_.size(); }

  /// JSON object: address -> {"bytecode": hex, "abi"?: [...], "deployed_block"?: n}.
  static ContractRegistry load(const nlohmann::json& doc);
  static ContractRegistry load_file(const std::string& path);

 private:
  std::unordered_map<Address, ContractRecord, FixedBytesHash> records_;
};

/// A source of published ABIs. `lookup` returns nullopt on a miss and throws
/// TransportError when the source cannot be reached.
class AbiProvider {
 public:
  virtual ~AbiProvider() = default;
  virtual std::string name() const = 0;
  virtual std::optional<abi::ContractAbi> lookup(const Address& address) = 0;
};

/// Serves ABIs embedded in the contract registry file.
class RegistryAbiProvider final : public AbiProvider {
 public:
  explicit RegistryAbiProvider(const ContractRegistry& registry) : registry_(registry) {}
  std::string name() const override { return "registry"; }
  std::optional<abi::ContractAbi> lookup(const Address& address) override;

 private:
  const ContractRegistry& registry_;
};

/// Fixture backend for a remote explorer: `<dir>/<0xaddress>.json` holds the
/// standard ABI JSON the service would return. A missing file is a miss.
class DirectoryAbiProvider final : public AbiProvider {
 public:
  DirectoryAbiProvider(std::string name, std::string directory)
      : name_(std::move(name)), directory_(std::move(directory)) {}
  std::string name() const override { return name_; }
  std::optional<abi::ContractAbi> lookup(const Address& address) override;

 private:
  std::string name_;
  std::string directory_;
};

struct FetchedAbi {
  abi::ContractAbi abi;
  /// Provider name, or "bytecode" when reconstructed.
  std::string source;
};

/// Provider chain with bytecode reconstruction as the last resort. Results
/// are cached per address; safe for concurrent use.
class AbiResolver {
 public:
  AbiResolver(const ContractRegistry& registry, std::vector<std::shared_ptr<AbiProvider>> providers);

  /// Throws NotAContractError when no provider knows the address and the
  /// registry holds no bytecode for it.
  FetchedAbi fetch_abi(const Address& address);

  std::size_t cache_size() const;

 private:
  const ContractRegistry& registry_;
  std::vector<std::shared_ptr<AbiProvider>> providers_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<Address, FetchedAbi, FixedBytesHash> cache_;
};

}  // namespace chaingraph::semantics
