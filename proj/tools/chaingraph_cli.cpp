// chaingraph command-line entry point.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "chaingraph/abi/abi.hpp"
#include "chaingraph/abi/signature.hpp"
#include "chaingraph/config.hpp"
#include "chaingraph/error.hpp"
#include "chaingraph/evm/disasm.hpp"
#include "chaingraph/ingestion/pipeline.hpp"
#include "chaingraph/ingestion/records.hpp"
#include "chaingraph/kg/serialize.hpp"
#include "chaingraph/kg/store.hpp"
#include "chaingraph/risk/detector.hpp"
#include "chaingraph/semantics/relations.hpp"

namespace fs = std::filesystem;
using namespace chaingraph;

namespace {

struct Options {
  std::string fixtures;
  std::string store_path;
  std::string config_path;
  std::string format = "ntriples";
  std::string output;
  std::string signatures;
  bool verbose = false;
  bool json = false;
  std::vector<std::string> overrides;
  std::string argument;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// The argument itself if it is not an existing file, else the file content.
std::string hex_argument(const std::string& arg) {
  std::string text = fs::is_regular_file(arg) ? read_file(arg) : arg;
  text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }), text.end());
  return text;
}

Config load_config(const Options& opt) {
  Config config = opt.config_path.empty() ? Config{} : Config::load_file(opt.config_path);
  for (const auto& kv : opt.overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ValidationError("--set expects key=value, got '" + kv + "'");
    config.set(std::string_view(kv).substr(0, eq), std::string_view(kv).substr(eq + 1));
  }
  config.validate();
  return config;
}

void load_store(kg::Store& store, const Options& opt) {
  if (opt.store_path.empty() || !fs::exists(opt.store_path)) return;
  kg::import_graph(store, read_file(opt.store_path), kg::Format::NTriples);
}

void save_store(const kg::Store& store, const Options& opt) {
  if (opt.store_path.empty()) return;
  std::string tmp = opt.store_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << kg::export_graph(store, kg::Format::NTriples);
  }
  fs::rename(tmp, opt.store_path);
}

void write_output(const std::string& text, const Options& opt) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + opt.output);
  out << text;
}

abi::SignatureDictionary load_signatures(const Options& opt) {
  if (!opt.signatures.empty()) return abi::SignatureDictionary::load_file(opt.signatures);
  if (!opt.fixtures.empty()) {
    ingestion::FixturePaths paths{opt.fixtures};
    if (fs::exists(paths.signatures())) return abi::SignatureDictionary::load_file(paths.signatures().string());
  }
  return {};
}

int cmd_ingest(const Options& opt) {
  if (opt.fixtures.empty()) throw ValidationError("ingest requires --fixtures");
  Config config = load_config(opt);
  kg::Store store;
  load_store(store, opt);
  ingestion::Pipeline pipeline(store, config, ingestion::FixturePaths{opt.fixtures});
  auto report = pipeline.run();
  save_store(store, opt);
  std::cout << "chain: " << report.chain_delivered << "\n"
            << "social: " << report.social_delivered << "\n"
            << "attributions: " << report.attributions_delivered << "\n"
            << "projects: " << report.projects_delivered << "\n"
            << "skipped: " << report.skipped_seen << "\n"
            << "clusters: " << report.clusters << "\n"
            << "enrichment: " << report.enrichment_triples << "\n"
            << "new triples: " << report.triples_added << "\n"
            << "revision: " << report.revision << "\n";
  return 0;
}

int cmd_disasm(const Options& opt) {
  auto program = evm::disassemble_hex(hex_argument(opt.argument));
  std::string out;
  for (const auto& ins : program.instructions) out += ins.to_string() + "\n";
  write_output(out, opt);
  return 0;
}

int cmd_abi(const Options& opt) {
  auto contract = abi::abi_from_bytecode(parse_hex(hex_argument(opt.argument)));
  auto dict = load_signatures(opt);
  for (auto& fn : contract) {
    if (!fn.name) fn.name = abi::resolve_function_name(fn.selector, dict);
  }
  write_output(abi::to_json(contract).dump(2) + "\n", opt);
  return 0;
}

int cmd_decode(const Options& opt) {
  Config config = load_config(opt);
  semantics::ContractRegistry registry;
  std::vector<std::shared_ptr<semantics::AbiProvider>> providers;
  if (!opt.fixtures.empty()) {
    ingestion::FixturePaths paths{opt.fixtures};
    if (fs::exists(paths.contracts())) registry = semantics::ContractRegistry::load_file(paths.contracts().string());
    for (const auto& name : config.abi_providers) {
      if (name == "registry") {
        providers.push_back(std::make_shared<semantics::RegistryAbiProvider>(registry));
      } else if (fs::is_directory(paths.abi_dir(name))) {
        providers.push_back(std::make_shared<semantics::DirectoryAbiProvider>(name, paths.abi_dir(name).string()));
      }
    }
  }
  auto dict = load_signatures(opt);
  semantics::AbiResolver resolver(registry, providers);
  semantics::TransactionClassifier classifier(registry, resolver, dict);
  std::string out;
  for (const auto& tx : ingestion::load_chain(opt.argument)) {
    auto kind = classifier.classify(tx);
    out += tx.hash.hex_prefixed() + " " + semantics::describe(kind) + "\n";
    for (const auto& e : semantics::extract_relations(tx, kind, config.semantics)) {
      out += "  " + e.subject.hex_prefixed() + " " + e.predicate + " " + e.object.hex_prefixed() + " value=" +
             to_decimal(e.value);
      if (e.proceeds_recipient) out += " proceeds=" + e.proceeds_recipient->hex_prefixed();
      out += "\n";
    }
  }
  write_output(out, opt);
  return 0;
}

int cmd_query(const Options& opt) {
  auto patterns = kg::parse_patterns(read_file(opt.argument));
  kg::Store store;
  load_store(store, opt);
  std::vector<std::string> rows;
  for (const auto& binding : store.query(patterns)) {
    std::string row;
    for (const auto& [name, term] : binding) {
      if (!row.empty()) row += " ";
      row += "?" + name + "=" + kg::to_ntriples(term);
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& r : rows) out += r + "\n";
  write_output(out, opt);
  return 0;
}

int cmd_risk(const Options& opt) {
  Config config = load_config(opt);
  kg::Store store;
  load_store(store, opt);
  const kg::vocab::Names names(config.base_namespace);
  kg::Iri subject = opt.argument.starts_with("0x") && opt.argument.size() == 42
                        ? names.address(Address::from_hex(opt.argument))
                        : kg::Iri(opt.argument);
  auto report = risk::assess_address(subject, store, config.risk);
  write_output(opt.json ? risk::to_json(report).dump(2) + "\n" : risk::explain(report), opt);
  return 0;
}

int cmd_export(const Options& opt) {
  kg::Store store;
  load_store(store, opt);
  write_output(kg::export_graph(store, kg::format_from_string(opt.format)), opt);
  return 0;
}

int cmd_import(const Options& opt) {
  if (opt.store_path.empty()) throw ValidationError("import requires --store");
  kg::Store store;
  load_store(store, opt);
  kg::Format format = kg::format_from_string(opt.format);
  if (opt.format == "ntriples" && (opt.argument.ends_with(".ttl") || opt.argument.ends_with(".turtle"))) {
    format = kg::Format::Turtle;
  }
  auto added = kg::import_graph(store, read_file(opt.argument), format);
  save_store(store, opt);
  std::cout << "imported: " << added << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"chaingraph: blockchain and social knowledge graph toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--fixtures", opt.fixtures, "Fixtures directory");
  app.add_option("--store", opt.store_path, "N-Triples store snapshot (loaded, and saved by ingest/import)");
  app.add_option("--config", opt.config_path, "JSON config file");
  app.add_option("--format", opt.format, "Graph format")->check(CLI::IsMember({"ntriples", "nt", "turtle", "ttl"}));
  app.add_option("--set", opt.overrides, "Config override key=value (repeatable)");
  app.add_option("-o,--output", opt.output, "Write output to a file");
  app.add_flag("-v,--verbose", opt.verbose, "Debug logging");

  auto* ingest = app.add_subcommand("ingest", "Run the ingestion pipeline over --fixtures");
  auto* disasm = app.add_subcommand("disasm", "Disassemble bytecode");
  disasm->add_option("bytecode", opt.argument, "Hex string or file")->required();
  auto* abi_cmd = app.add_subcommand("abi", "Reconstruct an ABI from bytecode");
  abi_cmd->add_option("bytecode", opt.argument, "Hex string or file")->required();
  abi_cmd->add_option("--signatures", opt.signatures, "Signature dictionary file");
  auto* decode = app.add_subcommand("decode", "Classify and decode transactions");
  decode->add_option("tx-file", opt.argument, "Transactions, one JSON object per line")->required();
  decode->add_option("--signatures", opt.signatures, "Signature dictionary file");
  auto* query = app.add_subcommand("query", "Evaluate a pattern file against --store");
  query->add_option("pattern-file", opt.argument, "Pattern file")->required();
  auto* risk_cmd = app.add_subcommand("risk", "Assess rug-pull risk");
  risk_cmd->add_option("subject", opt.argument, "IRI or 0x address")->required();
  risk_cmd->add_flag("--json", opt.json, "Structured output");
  auto* export_cmd = app.add_subcommand("export", "Print the --store graph");
  auto* import_cmd = app.add_subcommand("import", "Import a document into --store");
  import_cmd->add_option("file", opt.argument, "Graph document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    if (code == 0) return 0;
    std::cerr << app.help();
    return code;
  }

  auto logger = spdlog::stderr_color_st("chaingraph");
  spdlog::set_default_logger(logger);
  spdlog::set_level(opt.verbose || verbose_from_environment() ? spdlog::level::debug : spdlog::level::warn);

  try {
    if (*ingest) return cmd_ingest(opt);
    if (*disasm) return cmd_disasm(opt);
    if (*abi_cmd) return cmd_abi(opt);
    if (*decode) return cmd_decode(opt);
    if (*query) return cmd_query(opt);
    if (*risk_cmd) return cmd_risk(opt);
    if (*export_cmd) return cmd_export(opt);
    if (*import_cmd) return cmd_import(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
