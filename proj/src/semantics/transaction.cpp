#include "chaingraph/semantics/transaction.hpp"

#include "chaingraph/error.hpp"

namespace chaingraph::semantics {

namespace {

std::optional<Address> optional_address(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  auto text = doc[key].get<std::string>();
  if (text.empty()) return std::nullopt;
  return Address::from_hex(text);
}

std::string wei_text(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_unsigned()) return std::to_string(value.get<std::uint64_t>());
  throw ParseError("value_wei must be decimal text or a non-negative integer");
}

}  // namespace

void validate(const ChainTransaction& tx) {
  if (!tx.to && !tx.created_contract) {
    throw ValidationError("transaction " + tx.hash.hex_prefixed() +
                          " has neither a recipient nor a created contract");
  }
}

ChainTransaction transaction_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("transaction must be a JSON object");
  try {
    ChainTransaction tx;
    tx.hash = Hash32::from_hex(doc.at("hash").get<std::string>());
    tx.block_number = doc.at("block_number").get<std::uint64_t>();
    tx.timestamp = doc.value("timestamp", std::int64_t{0});
    tx.from = Address::from_hex(doc.at("from").get<std::string>());
    tx.to = optional_address(doc, "to");
    tx.value = parse_wei(wei_text(doc.value("value_wei", nlohmann::json("0"))));
    tx.input = parse_hex(doc.value("input", std::string{}));
    tx.created_contract = optional_address(doc, "created_contract");
    for (const auto& item : doc.value("internal_transfers", nlohmann::json::array())) {
      tx.internal_transfers.push_back(InternalTransfer{
          Address::from_hex(item.at("from").get<std::string>()),
          Address::from_hex(item.at("to").get<std::string>()),
          parse_wei(wei_text(item.at("value_wei"))),
      });
    }
    validate(tx);
    return tx;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("transaction: ") + e.what());
  }
}

nlohmann::json to_json(const ChainTransaction& tx) {
  nlohmann::json doc = {
      {"hash", tx.hash.hex_prefixed()},
      {"block_number", tx.block_number},
      {"timestamp", tx.timestamp},
      {"from", tx.from.hex_prefixed()},
      {"value_wei", to_decimal(tx.value)},
      {"input", to_hex_prefixed(tx.input)},
  };
  if (tx.to) doc["to"] = tx.to->hex_prefixed();
  if (tx.created_contract) doc["created_contract"] = tx.created_contract->hex_prefixed();
  auto transfers = nlohmann::json::array();
  for (const auto& t : tx.internal_transfers) {
    transfers.push_back({{"from", t.from.hex_prefixed()},
                         {"to", t.to.hex_prefixed()},
                         {"value_wei", to_decimal(t.value)}});
  }
  doc["internal_transfers"] = std::move(transfers);
  return doc;
}

}  // namespace chaingraph::semantics
