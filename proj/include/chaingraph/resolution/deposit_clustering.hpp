#pragma once

#include <set>
#include <string>
#include <vector>

#include "chaingraph/bytes.hpp"
#include "chaingraph/semantics/transaction.hpp"

namespace chaingraph::resolution {

/// A value movement: a top-level transaction or an internal transfer.
struct ValueFlow {
  Address from;
  Address to;
  Wei value;
};

/// All positive-value flows in the transactions, in input order.
std::vector<ValueFlow> value_flows(const std::vector<semantics::ChainTransaction>& transactions);

struct EntityCluster {
  /// Smallest member address (0x-hex); names the cluster entity.
  std::string canonical_key;
  std::set<Address> members;
  std::set<Address> deposit_addresses;

  bool operator==(const EntityCluster&) const = default;
};

/// Non-exchange addresses that receive from at least one non-exchange sender
/// and forward at least `forward_fraction` of everything they received to a
/// single exchange (and to no other exchange).
std::set<Address> find_deposit_addresses(const std::vector<ValueFlow>& flows,
                                         const std::set<Address>& exchanges, double forward_fraction);

/// Deposit-address-reuse clustering: each deposit address joins the
/// non-exchange senders that pay into it; clusters sharing a member merge.
/// Sorted by canonical key.
std::vector<EntityCluster> cluster_deposit_reuse(const std::vector<semantics::ChainTransaction>& transactions,
                                                 const std::set<Address>& exchanges,
                                                 double forward_fraction = 0.99);

}  // namespace chaingraph::resolution
