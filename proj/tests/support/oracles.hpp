#pragma once

// Independent reference implementations and shared helpers for tests.

#include <array>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "chaingraph/bytes.hpp"
#include "chaingraph/kg/store.hpp"
#include "chaingraph/kg/vocabulary.hpp"
#include "chaingraph/resolution/deposit_clustering.hpp"
#include "chaingraph/semantics/transaction.hpp"

namespace testsupport {

using namespace chaingraph;

inline const std::filesystem::path kFixtures = CHAINGRAPH_FIXTURES_DIR;
inline const std::string kCli = CHAINGRAPH_CLI_PATH;

// Four functions, hand-assembled. Offsets in the comments are byte offsets.
//   deposit()        d0e30db0  no guard, SSTORE               -> payable
//   store(uint256)   6057361d  guard, CALLDATALOAD, SSTORE    -> nonpayable
//   retrieve()       2e64cec1  guard, SLOAD, RETURN           -> view
//   double(uint256)  eee97206  guard, CALLDATALOAD, RETURN    -> pure
inline Bytes four_function_bytecode() {
  return {
      0x60, 0x80, 0x60, 0x40, 0x52,                          // 00 free memory pointer
      0x60, 0x00, 0x35, 0x60, 0xe0, 0x1c,                    // 05 selector = calldata[0] >> 224
      0x80, 0x63, 0xd0, 0xe3, 0x0d, 0xb0, 0x14, 0x61, 0x00, 0x3b, 0x57,  // 0b -> 3b
      0x80, 0x63, 0x60, 0x57, 0x36, 0x1d, 0x14, 0x61, 0x00, 0x41, 0x57,  // 16 -> 41
      0x80, 0x63, 0x2e, 0x64, 0xce, 0xc1, 0x14, 0x61, 0x00, 0x56, 0x57,  // 21 -> 56
      0x80, 0x63, 0xee, 0xe9, 0x72, 0x06, 0x14, 0x61, 0x00, 0x6f, 0x57,  // 2c -> 6f
      0x60, 0x00, 0x80, 0xfd,                                // 37 no match: revert
      // 3b deposit: CALLVALUE PUSH1 0 SSTORE STOP
      0x5b, 0x34, 0x60, 0x00, 0x55, 0x00,
      // 41 store: guard, then slot1 = calldata[4]
      0x5b, 0x34, 0x80, 0x15, 0x61, 0x00, 0x4d, 0x57, 0x60, 0x00, 0x80, 0xfd,
      0x5b, 0x50, 0x60, 0x04, 0x35, 0x60, 0x01, 0x55, 0x00,
      // 56 retrieve: guard, return slot0
      0x5b, 0x34, 0x80, 0x15, 0x61, 0x00, 0x62, 0x57, 0x60, 0x00, 0x80, 0xfd,
      0x5b, 0x50, 0x60, 0x00, 0x54, 0x60, 0x00, 0x52, 0x60, 0x20, 0x60, 0x00, 0xf3,
      // 6f double: guard, return 2 * calldata[4]
      0x5b, 0x34, 0x80, 0x15, 0x61, 0x00, 0x7b, 0x57, 0x60, 0x00, 0x80, 0xfd,
      0x5b, 0x50, 0x60, 0x04, 0x35, 0x80, 0x01, 0x60, 0x00, 0x52, 0x60, 0x20, 0x60, 0x00, 0xf3,
  };
}

struct CliResult {
  int exit_code = -1;
  std::string output;
};

/// Runs the CLI with a shell-quoted argument string; stderr is merged into
/// the output when `merge_stderr` is set.
inline CliResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = "\"" + kCli + "\" " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) result.output.append(buf.data(), n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() / ("chaingraph-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// ---------------------------------------------------------------------------
// Query oracle: nested loops over every triple for every pattern, on
// integer-interned terms.

inline std::set<kg::Binding> brute_force_query(const std::vector<kg::Triple>& triples,
                                               const std::vector<kg::TriplePattern>& patterns) {
  std::map<kg::Term, int> ids;
  std::vector<kg::Term> terms;
  auto id_of = [&](const kg::Term& t) {
    auto [it, inserted] = ids.try_emplace(t, static_cast<int>(terms.size()));
    if (inserted) terms.push_back(t);
    return it->second;
  };
  std::vector<std::array<int, 3>> rows;
  for (const auto& t : triples) rows.push_back({id_of(kg::Term{t.subject}), id_of(kg::Term{t.predicate}), id_of(t.object)});

  // Pattern slots: >= 0 constant id, < 0 variable number -(v + 1). Unknown
  // constants get an id that no row uses.
  std::map<std::string, int> var_index;
  std::vector<std::string> var_names;
  std::vector<std::array<int, 3>> slots;
  for (const auto& p : patterns) {
    std::array<int, 3> slot{};
    const kg::PatternTerm* parts[3] = {&p.subject, &p.predicate, &p.object};
    for (int k = 0; k < 3; ++k) {
      if (const auto* v = std::get_if<kg::Variable>(parts[k])) {
        auto [it, inserted] = var_index.try_emplace(v->name, static_cast<int>(var_names.size()));
        if (inserted) var_names.push_back(v->name);
        slot[k] = -(it->second + 1);
      } else {
        slot[k] = id_of(std::get<kg::Term>(*parts[k]));
      }
    }
    slots.push_back(slot);
  }

  std::set<std::vector<int>> found;
  std::vector<int> binding(var_names.size(), -1);
  std::function<void(std::size_t)> step = [&](std::size_t i) {
    if (i == slots.size()) {
      found.insert(binding);
      return;
    }
    for (const auto& row : rows) {
      std::vector<int> bound_here;
      bool ok = true;
      for (int k = 0; k < 3 && ok; ++k) {
        int s = slots[i][k];
        if (s >= 0) {
          ok = row[k] == s;
        } else {
          int& b = binding[-s - 1];
          if (b < 0) {
            b = row[k];
            bound_here.push_back(-s - 1);
          } else {
            ok = b == row[k];
          }
        }
      }
      if (ok) step(i + 1);
      for (int v : bound_here) binding[v] = -1;
    }
  };
  step(0);

  std::set<kg::Binding> out;
  for (const auto& row : found) {
    kg::Binding b;
    for (std::size_t v = 0; v < row.size(); ++v) b.emplace(var_names[v], terms[row[v]]);
    out.insert(std::move(b));
  }
  return out;
}

/// Random store over small term pools so that joins actually meet.
struct RandomGraph {
  std::vector<kg::Iri> nodes;
  std::vector<kg::Iri> predicates;
  std::vector<kg::Literal> literals;
  std::vector<kg::Triple> triples;
};

inline RandomGraph random_graph(std::mt19937_64& rng, std::size_t max_triples) {
  RandomGraph g;
  std::uniform_int_distribution<std::size_t> count(0, max_triples);
  std::size_t n = count(rng);
  std::uniform_int_distribution<std::size_t> node_count(2, std::max<std::size_t>(40, n / 4));
  std::size_t n_nodes = node_count(rng);
  for (std::size_t i = 0; i < n_nodes; ++i) g.nodes.emplace_back("https://example.org/n" + std::to_string(i));
  for (std::string_view p : {"deployed", "transferredTo", "minted", "announcedBy", "tagged"}) {
    g.predicates.push_back(kg::vocab::pred(p));
  }
  g.predicates.push_back(kg::vocab::rdfs_label());
  for (int i = 0; i < 6; ++i) g.literals.push_back(kg::Literal::text("v" + std::to_string(i)));
  g.literals.push_back(kg::Literal::integer(42));
  g.literals.push_back(kg::Literal::decimal("1.5"));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = g.nodes[rng() % g.nodes.size()];
    const auto& p = g.predicates[rng() % g.predicates.size()];
    kg::Term o = (rng() % 4 == 0) ? kg::Term{g.literals[rng() % g.literals.size()]}
                                  : kg::Term{g.nodes[rng() % g.nodes.size()]};
    g.triples.push_back({s, p, o});
  }
  return g;
}

/// One to three connected patterns. Every pattern has a constant predicate
/// or a constant node, so nested-loop evaluation stays tractable.
inline std::vector<kg::TriplePattern> random_patterns(std::mt19937_64& rng, const RandomGraph& g) {
  static const char* names[] = {"a", "b", "c", "d"};
  std::vector<std::string> node_vars;
  int fresh = 0;
  auto new_var = [&] {
    std::string name = names[fresh++ % 4];
    return kg::PatternTerm{kg::Variable{name}};
  };
  auto node_term = [&](bool allow_constant) {
    if (!node_vars.empty() && rng() % 2 == 0) return kg::PatternTerm{kg::Variable{node_vars[rng() % node_vars.size()]}};
    if (allow_constant && rng() % 4 == 0) return kg::PatternTerm{kg::Term{g.nodes[rng() % g.nodes.size()]}};
    auto v = new_var();
    node_vars.push_back(std::get<kg::Variable>(v).name);
    return v;
  };
  std::vector<kg::TriplePattern> out;
  int n = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < n; ++i) {
    kg::TriplePattern p;
    bool var_predicate = rng() % 5 == 0;
    // Later patterns join on an earlier variable.
    if (i == 0) {
      p.subject = new_var();
      node_vars.push_back(std::get<kg::Variable>(p.subject).name);
    } else if (rng() % 4 == 0) {
      // Constant subject joining through the object instead.
      p.subject = kg::Term{g.nodes[rng() % g.nodes.size()]};
      p.predicate = kg::Term{g.predicates[rng() % g.predicates.size()]};
      p.object = kg::Variable{node_vars[rng() % node_vars.size()]};
      out.push_back(std::move(p));
      continue;
    } else {
      p.subject = kg::Variable{node_vars[rng() % node_vars.size()]};
    }
    if (var_predicate) {
      p.predicate = kg::Variable{"p"};
      p.object = kg::Term{g.nodes[rng() % g.nodes.size()]};
    } else {
      p.predicate = kg::Term{g.predicates[rng() % g.predicates.size()]};
      switch (rng() % 4) {
        case 0: p.object = kg::Term{g.literals[rng() % g.literals.size()]}; break;
        default: p.object = node_term(true);
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clustering oracle: recomputes deposit addresses from raw sums and takes
// connected components of the sender/deposit graph by breadth-first search.

struct ClusterScenario {
  std::vector<semantics::ChainTransaction> transactions;
  std::set<Address> exchanges;
  std::set<Address> universe;
};

inline Address numbered_address(std::uint32_t n) {
  Address a;
  a.bytes[16] = static_cast<std::uint8_t>(n >> 24);
  a.bytes[17] = static_cast<std::uint8_t>(n >> 16);
  a.bytes[18] = static_cast<std::uint8_t>(n >> 8);
  a.bytes[19] = static_cast<std::uint8_t>(n);
  a.bytes[0] = 0xa0;
  return a;
}

inline ClusterScenario random_cluster_scenario(std::mt19937_64& rng, std::size_t max_addresses) {
  ClusterScenario s;
  std::uniform_int_distribution<std::size_t> size(4, max_addresses);
  std::size_t n = size(rng);
  std::vector<Address> all;
  for (std::size_t i = 0; i < n; ++i) all.push_back(numbered_address(static_cast<std::uint32_t>(i + 1)));
  s.universe.insert(all.begin(), all.end());
  std::size_t n_exchanges = 1 + rng() % 3;
  for (std::size_t i = 0; i < n_exchanges; ++i) s.exchanges.insert(all[i]);

  std::uint64_t counter = 0;
  auto tx = [&](const Address& from, const Address& to, std::uint64_t value, bool internal) {
    semantics::ChainTransaction t;
    t.hash.bytes[31] = static_cast<std::uint8_t>(counter);
    t.hash.bytes[30] = static_cast<std::uint8_t>(counter >> 8);
    ++counter;
    t.from = from;
    if (internal) {
      // Value moved as an internal transfer of a zero-value call.
      t.to = to;
      t.internal_transfers.push_back({from, to, Wei(value)});
    } else {
      t.to = to;
      t.value = Wei(value);
    }
    s.transactions.push_back(std::move(t));
  };

  std::uniform_int_distribution<std::uint64_t> amount(1, 1'000'000);
  std::vector<Address> users(all.begin() + static_cast<std::ptrdiff_t>(n_exchanges), all.end());
  std::size_t n_flows = rng() % (3 * n);
  for (std::size_t i = 0; i < n_flows && users.size() >= 2; ++i) {
    const Address& from = users[rng() % users.size()];
    const Address& to = users[rng() % users.size()];
    if (from == to) continue;
    tx(from, to, amount(rng), rng() % 5 == 0);
  }
  // Forwarding behaviour for every user: all, most, some, split or nothing.
  std::vector<Address> exch(s.exchanges.begin(), s.exchanges.end());
  for (const auto& u : users) {
    Wei received = 0;
    for (const auto& t : s.transactions) {
      if (t.to == u && t.value > 0) received += t.value;
      for (const auto& it : t.internal_transfers) {
        if (it.to == u) received += it.value;
      }
    }
    if (received == 0) continue;
    auto r = received.convert_to<std::uint64_t>();
    const Address& x = exch[rng() % exch.size()];
    switch (rng() % 6) {
      case 0: tx(u, x, r, false); break;                     // forwards everything
      case 1: tx(u, x, r - r / 200, rng() % 2 == 0); break;  // 99.5%
      case 2: tx(u, x, r / 2, false); break;                 // half
      case 3:                                                // split across exchanges
        tx(u, x, r / 2 + 1, false);
        tx(u, exch[(rng()) % exch.size()], r / 2, false);
        break;
      default: break;
    }
  }
  // Occasionally an exchange pays a user (exchange senders never join).
  if (!users.empty() && rng() % 2 == 0) tx(exch[0], users[rng() % users.size()], amount(rng), false);
  return s;
}

inline std::vector<std::set<Address>> brute_force_clusters(const ClusterScenario& s, double fraction) {
  if (s.exchanges.empty()) return {};
  struct Flow {
    Address from, to;
    Wei value;
  };
  std::vector<Flow> flows;
  for (const auto& t : s.transactions) {
    if (t.to && t.value > 0) flows.push_back({t.from, *t.to, t.value});
    for (const auto& it : t.internal_transfers) {
      if (it.value > 0) flows.push_back({it.from, it.to, it.value});
    }
  }
  std::set<Address> addresses;
  for (const auto& f : flows) {
    addresses.insert(f.from);
    addresses.insert(f.to);
  }
  const Wei num = static_cast<std::int64_t>(fraction * 1'000'000 + 0.5);
  std::set<Address> deposits;
  for (const auto& a : addresses) {
    if (s.exchanges.count(a)) continue;
    Wei received = 0;
    bool user_sender = false;
    std::set<Address> venues;
    for (const auto& f : flows) {
      if (f.to == a) {
        received += f.value;
        if (!s.exchanges.count(f.from)) user_sender = true;
      }
      if (f.from == a && s.exchanges.count(f.to)) venues.insert(f.to);
    }
    if (!user_sender || received == 0 || venues.size() != 1) continue;
    Wei forwarded = 0;
    for (const auto& f : flows) {
      if (f.from == a && f.to == *venues.begin()) forwarded += f.value;
    }
    if (forwarded * 1'000'000 >= received * num) deposits.insert(a);
  }
  std::map<Address, std::set<Address>> adjacency;
  for (const auto& d : deposits) adjacency[d];
  for (const auto& f : flows) {
    if (deposits.count(f.to) && !s.exchanges.count(f.from)) {
      adjacency[f.to].insert(f.from);
      adjacency[f.from].insert(f.to);
    }
  }
  std::vector<std::set<Address>> out;
  std::set<Address> done;
  for (const auto& [start, _] : adjacency) {
    if (done.count(start)) continue;
    std::set<Address> component{start};
    std::vector<Address> queue{start};
    while (!queue.empty()) {
      Address cur = queue.back();
      queue.pop_back();
      for (const auto& nb : adjacency[cur]) {
        if (component.insert(nb).second) queue.push_back(nb);
      }
    }
    done.insert(component.begin(), component.end());
    out.push_back(std::move(component));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testsupport
