#include "chaingraph/semantics/relations.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include <spdlog/spdlog.h>

#include "chaingraph/error.hpp"

namespace chaingraph::semantics {

std::string describe(const TransactionKind& kind) {
  struct Visitor {
    std::string operator()(const ContractCreation& c) const {
      return "ContractCreation " + c.contract.hex_prefixed();
    }
    std::string operator()(const ValueTransfer&) const { return "ValueTransfer"; }
    std::string operator()(const ContractCall& c) const {
      std::string out = "ContractCall " + c.label + "(";
      for (std::size_t i = 0; i < c.arguments.size(); ++i) {
        if (i) out += ", ";
        out += abi::format_value(c.arguments[i].value);
      }
      return out + ")";
    }
    std::string operator()(const UnknownCall& c) const {
      return "UnknownCall " + to_hex_prefixed(c.selector);
    }
  };
  return std::visit(Visitor{}, kind);
}

std::string_view to_string(TagKind kind) {
  switch (kind) {
    case TagKind::Deployer: return "deployer";
    case TagKind::NftMinter: return "nft_minter";
    case TagKind::Exchange: return "exchange";
    case TagKind::DepositAddress: return "deposit_address";
    case TagKind::Contract: return "contract";
    case TagKind::Eoa: return "eoa";
    case TagKind::KnownEntity: return "known_entity";
  }
  return "eoa";
}

std::optional<TagKind> tag_kind_from_string(std::string_view text) {
  for (auto kind : {TagKind::Deployer, TagKind::NftMinter, TagKind::Exchange, TagKind::DepositAddress,
                    TagKind::Contract, TagKind::Eoa, TagKind::KnownEntity}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

TransactionKind TransactionClassifier::classify(const ChainTransaction& tx) const {
  if (!tx.to) {
    return ContractCreation{*tx.created_contract};
  }
  if (tx.input.empty()) {
    return ValueTransfer{};
  }
  Bytes head(tx.input.begin(), tx.input.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(4, tx.input.size())));
  if (tx.input.size() < 4 || !registry_.is_contract(*tx.to, tx.block_number)) {
    return UnknownCall{std::move(head)};
  }

  auto fetched = resolver_.fetch_abi(*tx.to);
  auto selector = Selector::from_span(head);
  const auto* fn = abi::find_function(fetched.abi, selector);
  if (!fn) {
    return UnknownCall{std::move(head)};
  }

  ContractCall call;
  try {
    auto decoded = abi::decode_call(tx.input, fetched.abi, dictionary_);
    call.label = decoded.label();
    call.arguments = std::move(decoded.arguments);
  } catch (const DecodeError& e) {
    spdlog::debug("tx {}: arguments not decodable: {}", tx.hash.hex_prefixed(), e.what());
    auto name = fn->name ? fn->name : abi::resolve_function_name(selector, dictionary_);
    call.label = name ? *name : abi::fallback_label(selector);
  }
  return call;
}

std::optional<Address> proceeds_recipient(const ChainTransaction& tx, double threshold) {
  if (!tx.to || tx.value == 0) return std::nullopt;
  std::map<Address, Wei> received;
  for (const auto& t : tx.internal_transfers) {
    if (t.from == *tx.to && t.to != *tx.to) received[t.to] += t.value;
  }
  if (received.empty()) return std::nullopt;
  auto best = std::max_element(received.begin(), received.end(),
                               [](const auto& a, const auto& b) { return a.second < b.second; });
  constexpr std::int64_t kScale = 1'000'000;
  Wei required = tx.value * Wei(std::llround(threshold * kScale));
  if (best->second * kScale >= required) return best->first;
  return std::nullopt;
}

std::vector<RelationEdge> extract_relations(const ChainTransaction& tx, const TransactionKind& kind,
                                            const SemanticsConfig& config) {
  RelationEdge edge;
  edge.subject = tx.from;
  edge.tx_hash = tx.hash;
  edge.value = tx.value;

  if (const auto* creation = std::get_if<ContractCreation>(&kind)) {
    edge.predicate = kDeployLabel;
    edge.object = creation->contract;
  } else if (std::holds_alternative<ValueTransfer>(kind)) {
    edge.predicate = kTransferLabel;
    edge.object = *tx.to;
  } else if (const auto* call = std::get_if<ContractCall>(&kind)) {
    edge.predicate = call->label;
    edge.object = *tx.to;
    edge.proceeds_recipient = proceeds_recipient(tx, config.proceeds_threshold);
  } else {
    const auto& unknown = std::get<UnknownCall>(kind);
    edge.predicate = "call:" + to_hex_prefixed(unknown.selector);
    edge.object = *tx.to;
  }
  return {std::move(edge)};
}

bool is_mint_label(std::string_view label) {
  if (label.starts_with("call:")) return false;
  std::string lower(label);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower.find("mint") != std::string::npos;
}

std::vector<AddressTag> tag_addresses(const std::vector<RelationEdge>& edges) {
  std::vector<AddressTag> tags;
  for (const auto& edge : edges) {
    if (edge.predicate == kDeployLabel) {
      tags.push_back({edge.subject, TagKind::Deployer, std::nullopt, edge.tx_hash});
    } else if (is_mint_label(edge.predicate) && edge.value > 0) {
      tags.push_back({edge.subject, TagKind::NftMinter, edge.object, edge.tx_hash});
    }
  }
  return tags;
}

}  // namespace chaingraph::semantics
