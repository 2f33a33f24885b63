// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "chaingraph/abi/abi.hpp"
#include "chaingraph/abi/signature.hpp"
#include "chaingraph/evm/disasm.hpp"
#include "chaingraph/kg/serialize.hpp"
#include "chaingraph/kg/store.hpp"
#include "chaingraph/kg/vocabulary.hpp"
#include "chaingraph/resolution/deposit_clustering.hpp"
#include "chaingraph/risk/detector.hpp"
#include "support/oracles.hpp"

using namespace chaingraph;
using namespace chaingraph::kg::vocab;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ac1_disassembler_round_trip() {
  Outcome o;
  std::mt19937_64 rng(1001);
  auto start = Clock::now();
  for (int trial = 0; trial < 1000 && o.pass; ++trial) {
    Bytes code(rng() % 1025);
    for (auto& b : code) b = static_cast<std::uint8_t>(rng());
    auto program = evm::disassemble(code);
    o.check(evm::serialize(program.instructions) == code, "re-serialization differs on trial " + std::to_string(trial));
    std::size_t offset = 0;
    for (const auto& ins : program.instructions) {
      o.check(ins.offset == offset, "offset gap on trial " + std::to_string(trial));
      o.check(ins.push_data.size() == evm::push_width(ins.opcode), "push width");
      offset += ins.size();
    }
    o.check(offset == code.size(), "coverage on trial " + std::to_string(trial));
    for (auto dest : program.jumpdests) {
      auto idx = program.index_of(dest);
      o.check(idx && program.instructions[*idx].opcode == evm::op::JUMPDEST, "jumpdest not an instruction");
    }
  }
  double elapsed = seconds_since(start);
  o.check(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s");
  if (o.pass) o.detail = "1000 sequences in " + std::to_string(elapsed) + " s";
  return o;
}

Outcome ac2_four_function_oracle() {
  Outcome o;
  auto slot = chaingraph::abi::opaque_slot();
  auto fn = [&](std::string_view sel, chaingraph::abi::Mutability m, bool in, bool out) {
    chaingraph::abi::AbiFunction f;
    f.selector = Selector::from_hex(sel);
    f.state_mutability = m;
    f.payable = m == chaingraph::abi::Mutability::Payable;
    if (in) f.inputs.push_back(slot);
    if (out) f.outputs.push_back(slot);
    return f;
  };
  chaingraph::abi::ContractAbi want = {fn("2e64cec1", chaingraph::abi::Mutability::View, false, true),
                           fn("6057361d", chaingraph::abi::Mutability::NonPayable, true, false),
                           fn("d0e30db0", chaingraph::abi::Mutability::Payable, false, false),
                           fn("eee97206", chaingraph::abi::Mutability::Pure, true, true)};
  auto got = chaingraph::abi::abi_from_bytecode(testsupport::four_function_bytecode());
  o.check(got == want, "reconstructed ABI differs: " + chaingraph::abi::to_json(got).dump());
  if (o.pass) o.detail = "payable/nonpayable/view/pure with expected input/output slots";
  return o;
}

Outcome ac3_selector_oracle() {
  Outcome o;
  auto transfer = chaingraph::abi::selector_for_signature("transfer(address,uint256)").hex();
  auto mint = chaingraph::abi::selector_for_signature("mint()").hex();
  o.check(transfer == "a9059cbb", "transfer -> " + transfer);
  o.check(mint == "1249c58b", "mint -> " + mint);
  if (o.pass) o.detail = "a9059cbb, 1249c58b";
  return o;
}

Outcome ac4_store_correctness() {
  Outcome o;
  std::mt19937_64 rng(4004);
  std::size_t largest = 0, queries = 0;
  for (int trial = 0; trial < 100 && o.pass; ++trial) {
    auto g = testsupport::random_graph(rng, 10000);
    kg::Store store;
    store.insert(g.triples);
    largest = std::max(largest, store.size());
    auto all = store.triples();
    for (int k = 0; k < 3; ++k) {
      auto patterns = testsupport::random_patterns(rng, g);
      auto rows = store.query(patterns);
      std::set<kg::Binding> got(rows.begin(), rows.end());
      o.check(got.size() == rows.size(), "duplicate bindings on trial " + std::to_string(trial));
      o.check(got == testsupport::brute_force_query(all, patterns), "query mismatch on trial " + std::to_string(trial));
      ++queries;
    }
    for (auto format : {kg::Format::NTriples, kg::Format::Turtle}) {
      kg::Store copy;
      kg::import_graph(copy, kg::export_graph(store, format), format);
      o.check(copy.triples() == all, "round trip changed the triple set on trial " + std::to_string(trial));
    }
  }
  if (o.pass) o.detail = std::to_string(queries) + " queries, largest store " + std::to_string(largest) + " triples";
  return o;
}

Outcome ac5_clustering_oracle() {
  Outcome o;
  std::mt19937_64 rng(5005);
  std::size_t clusters_seen = 0;
  for (int trial = 0; trial < 50 && o.pass; ++trial) {
    auto scenario = testsupport::random_cluster_scenario(rng, 50);
    auto clusters = resolution::cluster_deposit_reuse(scenario.transactions, scenario.exchanges, 0.99);
    std::vector<std::set<Address>> got;
    std::set<Address> covered;
    std::size_t total = 0;
    for (const auto& c : clusters) {
      got.push_back(c.members);
      covered.insert(c.members.begin(), c.members.end());
      total += c.members.size();
      for (const auto& d : c.deposit_addresses) o.check(c.members.count(d) == 1, "deposit outside its cluster");
    }
    std::sort(got.begin(), got.end());
    auto want = testsupport::brute_force_clusters(scenario, 0.99);
    std::set<Address> want_covered;
    for (const auto& c : want) want_covered.insert(c.begin(), c.end());
    o.check(got == want, "cluster mismatch on trial " + std::to_string(trial));
    o.check(total == covered.size(), "clusters overlap on trial " + std::to_string(trial));
    o.check(covered == want_covered, "clusters do not cover the clustered addresses on trial " + std::to_string(trial));
    clusters_seen += clusters.size();
  }
  if (o.pass) o.detail = "50 scenarios, " + std::to_string(clusters_seen) + " clusters";
  return o;
}

struct IngestRun {
  testsupport::CliResult result;
  double seconds = 0;
};

IngestRun ingest(const std::string& fixtures, const std::string& store) {
  auto start = Clock::now();
  IngestRun run;
  run.result = testsupport::run_cli("--fixtures " + fixtures + " --store " + store + " ingest");
  run.seconds = seconds_since(start);
  return run;
}

Outcome ac6_homer_end_to_end(const testsupport::TempDir& dir) {
  Outcome o;
  const std::string store_path = dir.file("homer.nt");
  auto run = ingest((testsupport::kFixtures / "homer").string(), store_path);
  o.check(run.result.exit_code == 0, "ingest failed: " + run.result.output);
  o.check(run.seconds < 10.0, "ingest took " + std::to_string(run.seconds) + " s");
  if (!o.pass) return o;

  kg::Store store;
  kg::import_graph(store, slurp(store_path), kg::Format::NTriples);
  Names names;

  // (a) five projects with their dates and profits.
  const std::map<std::string, std::pair<std::string, std::string>> table = {
      {"Ether Bananas", {"2021-10-07", "125000"}},   {"Ether Monkeys", {"2021-10-11", "1770000"}},
      {"Zombie Monkeys", {"2021-10-15", "413000"}},  {"Ether Reapers", {"2021-10-20", "282000"}},
      {"ETH Banana Chips", {"2021-11-23", "208000"}}};
  auto projects = store.match(std::nullopt, rdf_type(), kg::Term{cls("Project")});
  o.check(projects.size() == 5, std::to_string(projects.size()) + " Project entities");
  std::vector<kg::Iri> contracts;
  for (const auto& [name, facts] : table) {
    kg::Iri p = names.project(name);
    o.check(store.contains({p, rdf_type(), cls("Project")}), name + " missing");
    o.check(store.contains({p, pred("launchDate"), kg::Literal::timestamp(facts.first + "T00:00:00Z")}),
            name + " launch date");
    o.check(store.contains({p, pred("estimatedProfit"), kg::Literal::decimal(facts.second)}), name + " profit");
    for (const auto& t : store.match(p, pred("hasContract"), std::nullopt)) contracts.push_back(std::get<kg::Iri>(t.object));
  }
  o.check(contracts.size() == 5, "project contracts");

  // (b) every contract announced by homer_eth.
  std::vector<kg::TriplePattern> q = {
      {kg::Variable{"c"}, kg::Term{pred("announcedBy")}, kg::Term{names.x_account("homer_eth")}}};
  std::set<kg::Term> announced;
  for (const auto& b : store.query(q)) announced.insert(b.at("c"));
  for (const auto& c : contracts) o.check(announced.count(kg::Term{c}) == 1, c.value + " not announced by homer_eth");

  // (c) the fifth project's contract is high risk with all three findings.
  const std::string chips = "0x5b668840d3a70c7312432f4f298b5ca319bce38a";
  o.check(store.contains({names.project("ETH Banana Chips"), pred("hasContract"), names.address(Address::from_hex(chips))}),
          "ETH Banana Chips contract");
  auto risk = testsupport::run_cli("--store " + store_path + " risk " + chips);
  o.check(risk.exit_code == 0, "risk command failed");
  for (std::string line : {"level: high\n", "finding: F1_proceeds_diversion\n", "finding: F2_serial_deployer\n",
                           "finding: F3_social_history\n"}) {
    o.check(risk.output.find(line) != std::string::npos, "risk output lacks " + line);
  }

  // (d) the control project is not flagged.
  const std::string legit_store = dir.file("legit.nt");
  auto legit = ingest((testsupport::kFixtures / "legit").string(), legit_store);
  o.check(legit.result.exit_code == 0, "legit ingest failed");
  auto control = testsupport::run_cli("--store " + legit_store + " risk 0x1ac7cfecc6d42cf5700b8b89a242297697b238dd");
  o.check(control.exit_code == 0 && control.output == "level: none\n", "control risk: " + control.output);

  if (o.pass) o.detail = "ingest " + std::to_string(run.seconds) + " s; 5 projects; high with F1 F2 F3; control none";
  return o;
}

Outcome ac7_idempotence(const testsupport::TempDir& dir) {
  Outcome o;
  const std::string store_path = dir.file("idem.nt");
  const std::string fixtures = (testsupport::kFixtures / "homer").string();
  auto first = ingest(fixtures, store_path);
  o.check(first.result.exit_code == 0, "first ingest failed");
  std::string before = slurp(store_path);
  auto second = ingest(fixtures, store_path);
  o.check(second.result.exit_code == 0, "second ingest failed");
  o.check(second.result.output.find("new triples: 0\n") != std::string::npos, "second run added triples");
  o.check(slurp(store_path) == before, "export changed after re-ingest");
  auto exported = testsupport::run_cli("--store " + store_path + " export");
  o.check(exported.output == before, "export differs from snapshot");
  if (o.pass) o.detail = "0 new triples, export byte-identical";
  return o;
}

Outcome ac8_level_table() {
  Outcome o;
  auto expected = [](bool f1, bool f2, bool f3) {
    if (f1) return risk::RiskLevel::High;
    if (f2 && f3) return risk::RiskLevel::High;
    if (f2 != f3) return risk::RiskLevel::Medium;
    return risk::RiskLevel::None;
  };
  for (int mask = 0; mask < 8; ++mask) {
    bool f1 = mask & 1, f2 = mask & 2, f3 = mask & 4;
    o.check(risk::level_for(f1, f2, f3) == expected(f1, f2, f3), "subset " + std::to_string(mask));
  }
  if (o.pass) o.detail = "8/8 subsets";
  return o;
}

}  // namespace

int main() {
  testsupport::TempDir dir;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 disassembler round-trip", ac1_disassembler_round_trip},
      {"AC2 four-function ABI oracle", ac2_four_function_oracle},
      {"AC3 selector oracle", ac3_selector_oracle},
      {"AC4 store query and round-trip", ac4_store_correctness},
      {"AC5 deposit clustering oracle", ac5_clustering_oracle},
      {"AC6 Homer_eth end-to-end", [&] { return ac6_homer_end_to_end(dir); }},
      {"AC7 ingest idempotence", [&] { return ac7_idempotence(dir); }},
      {"AC8 risk level table", ac8_level_table},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
