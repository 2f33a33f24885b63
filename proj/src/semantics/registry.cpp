#include "chaingraph/semantics/registry.hpp"

#include <filesystem>
#include <fstream>
#include <mutex>

#include <spdlog/spdlog.h>

#include "chaingraph/error.hpp"

namespace chaingraph::semantics {

void ContractRegistry::add(const Address& address, ContractRecord record) {
  records_.insert_or_assign(address, std::move(record));
}

const ContractRecord* ContractRegistry::find(const Address& address) const {
  auto it = records_.find(address);
  return it == records_.end() ? nullptr : &it->second;
}

bool ContractRegistry::is_contract(const Address& address, std::uint64_t block) const {
  const auto* record = find(address);
  if (!record || record->bytecode.empty()) return false;
  return !record->deployed_block || *record->deployed_block <= block;
}

ContractRegistry ContractRegistry::load(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("contract registry must be a JSON object");
  ContractRegistry registry;
  for (const auto& [key, entry] : doc.items()) {
    ContractRecord record;
    try {
      record.bytecode = parse_hex(entry.value("bytecode", std::string{}));
      if (entry.contains("abi") && !entry["abi"].is_null()) {
        record.abi = abi::abi_from_json(entry["abi"]);
      }
      if (entry.contains("deployed_block")) {
        record.deployed_block = entry["deployed_block"].get<std::uint64_t>();
      }
      registry.add(Address::from_hex(key), std::move(record));
    } catch (const Error& e) {
      throw ParseError("registry entry " + key + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("registry entry " + key + ": " + e.what());
    }
  }
  return registry;
}

ContractRegistry ContractRegistry::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open contract registry '" + path + "'");
  try {
    return load(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::optional<abi::ContractAbi> RegistryAbiProvider::lookup(const Address& address) {
  const auto* record = registry_.find(address);
  if (!record || !record->abi) return std::nullopt;
  return record->abi;
}

std::optional<abi::ContractAbi> DirectoryAbiProvider::lookup(const Address& address) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory_)) {
    throw TransportError(name_ + ": source directory '" + directory_ + "' unavailable");
  }
  fs::path file = fs::path(directory_) / (address.hex_prefixed() + ".json");
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    return abi::abi_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
}

AbiResolver::AbiResolver(const ContractRegistry& registry,
                         std::vector<std::shared_ptr<AbiProvider>> providers)
    : registry_(registry), providers_(std::move(providers)) {}

FetchedAbi AbiResolver::fetch_abi(const Address& address) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(address); it != cache_.end()) return it->second;
  }

  std::optional<FetchedAbi> result;
  for (const auto& provider : providers_) {
    try {
      if (auto found = provider->lookup(address)) {
        result = FetchedAbi{std::move(*found), provider->name()};
        break;
      }
    } catch (const TransportError& e) {
      spdlog::warn("ABI provider {} failed for {}: {}", provider->name(), address.hex_prefixed(), e.what());
    }
  }
  if (!result) {
    const auto* record = registry_.find(address);
    if (!record || record->bytecode.empty()) {
      throw NotAContractError(address.hex_prefixed() + " has no bytecode and no published ABI");
    }
    result = FetchedAbi{abi::abi_from_bytecode(record->bytecode), "bytecode"};
  }

  std::unique_lock lock(mutex_);
  auto [it, inserted] = cache_.try_emplace(address, std::move(*result));
  return it->second;
}

std::size_t AbiResolver::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

}  // namespace chaingraph::semantics
