#include "chaingraph/resolution/deposit_clustering.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace chaingraph::resolution {

namespace {

constexpr std::int64_t kScale = 1'000'000;

class DisjointSets {
 public:
  std::size_t add(const Address& a) {
    auto [it, inserted] = ids_.emplace(a, parent_.size());
    if (inserted) parent_.push_back(parent_.size());
    return it->second;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(const Address& a, const Address& b) {
    std::size_t ra = find(add(a));
    std::size_t rb = find(add(b));
    if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
  }
  const std::map<Address, std::size_t>& ids() const { return ids_; }

 private:
  std::map<Address, std::size_t> ids_;
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<ValueFlow> value_flows(const std::vector<semantics::ChainTransaction>& transactions) {
  std::vector<ValueFlow> out;
  for (const auto& tx : transactions) {
    if (tx.to && tx.value > 0) out.push_back({tx.from, *tx.to, tx.value});
    for (const auto& it : tx.internal_transfers) {
      if (it.value > 0) out.push_back({it.from, it.to, it.value});
    }
  }
  return out;
}

std::set<Address> find_deposit_addresses(const std::vector<ValueFlow>& flows,
                                         const std::set<Address>& exchanges, double forward_fraction) {
  struct Stats {
    Wei received;
    bool fed_by_user = false;
    std::map<Address, Wei> to_exchange;
  };
  std::map<Address, Stats> stats;
  for (const auto& f : flows) {
    if (!exchanges.count(f.to)) {
      auto& s = stats[f.to];
      s.received += f.value;
      if (!exchanges.count(f.from)) s.fed_by_user = true;
    }
    if (!exchanges.count(f.from) && exchanges.count(f.to)) {
      stats[f.from].to_exchange[f.to] += f.value;
    }
  }
  const Wei scaled_fraction = static_cast<std::int64_t>(std::llround(forward_fraction * kScale));
  std::set<Address> out;
  for (const auto& [address, s] : stats) {
    if (!s.fed_by_user || s.received == 0 || s.to_exchange.size() != 1) continue;
    const Wei& forwarded = s.to_exchange.begin()->second;
    if (forwarded * kScale >= s.received * scaled_fraction) out.insert(address);
  }
  return out;
}

std::vector<EntityCluster> cluster_deposit_reuse(const std::vector<semantics::ChainTransaction>& transactions,
                                                 const std::set<Address>& exchanges, double forward_fraction) {
  if (exchanges.empty()) return {};
  auto flows = value_flows(transactions);
  auto deposits = find_deposit_addresses(flows, exchanges, forward_fraction);

  DisjointSets sets;
  for (const auto& d : deposits) sets.add(d);
  for (const auto& f : flows) {
    if (deposits.count(f.to) && !exchanges.count(f.from)) sets.unite(f.from, f.to);
  }

  std::map<std::size_t, EntityCluster> by_root;
  for (const auto& [address, id] : sets.ids()) {
    auto& cluster = by_root[sets.find(id)];
    cluster.members.insert(address);
    if (deposits.count(address)) cluster.deposit_addresses.insert(address);
  }
  std::vector<EntityCluster> out;
  for (auto& [root, cluster] : by_root) {
    cluster.canonical_key = cluster.members.begin()->hex_prefixed();
    out.push_back(std::move(cluster));
  }
  std::sort(out.begin(), out.end(),
            [](const EntityCluster& a, const EntityCluster& b) { return a.canonical_key < b.canonical_key; });
  return out;
}

}  // namespace chaingraph::resolution
