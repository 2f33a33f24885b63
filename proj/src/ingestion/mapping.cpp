#include "chaingraph/ingestion/mapping.hpp"

#include <algorithm>

namespace chaingraph::ingestion {

using namespace kg::vocab;

namespace {

kg::Literal wei_literal(const Wei& value) { return kg::Literal::integer(to_decimal(value)); }

void sort_unique(std::vector<kg::Triple>& triples) {
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
}

}  // namespace

kg::Literal provenance_key(std::string_view source, std::string_view key) {
  return kg::Literal::text(std::string(source) + "#" + std::string(key));
}

std::vector<kg::Triple> transaction_triples(const semantics::ChainTransaction& tx,
                                            const std::vector<semantics::RelationEdge>& edges,
                                            const semantics::ContractRegistry& registry,
                                            const kg::vocab::Names& names) {
  const kg::Iri node = names.tx(tx.hash);
  const kg::Literal prov = provenance_key("chain", tx.hash.hex_prefixed());
  const kg::Iri from = names.address(tx.from);
  std::vector<kg::Triple> out{
      {node, rdf_type(), ethon_tx()},
      {node, ethon_from(), from},
      {node, ethon_value(), wei_literal(tx.value)},
      {node, prov_generated_at(), kg::Literal::timestamp_from_unix(tx.timestamp)},
      {node, prov_derived_from(), prov},
      {from, rdf_type(), cls("ExternalAccount")},
      {from, prov_derived_from(), prov},
  };
  auto account_type = [&](const Address& a) {
    return registry.is_contract(a, tx.block_number) ? cls("ContractAccount") : cls("ExternalAccount");
  };
  if (tx.to) {
    const kg::Iri to = names.address(*tx.to);
    out.push_back({node, ethon_to(), to});
    out.push_back({to, rdf_type(), account_type(*tx.to)});
    out.push_back({to, prov_derived_from(), prov});
  }
  for (const auto& e : edges) {
    const kg::Iri subject = names.address(e.subject);
    const kg::Iri object = names.address(e.object);
    out.push_back({node, rdfs_label(), kg::Literal::text(e.predicate)});
    if (e.predicate == semantics::kDeployLabel) {
      out.push_back({node, ethon_to(), object});
      out.push_back({subject, pred("deployed"), object});
      out.push_back({object, rdf_type(), cls("ContractAccount")});
      out.push_back({object, prov_derived_from(), prov});
    } else if (e.predicate == semantics::kTransferLabel) {
      out.push_back({subject, pred("transferredTo"), object});
    } else if (semantics::is_mint_label(e.predicate) && e.value > 0) {
      out.push_back({subject, pred("minted"), object});
    }
    if (e.proceeds_recipient) {
      const kg::Iri recipient = names.address(*e.proceeds_recipient);
      out.push_back({node, pred("proceedsTo"), recipient});
      out.push_back({recipient, prov_derived_from(), prov});
    }
  }
  for (const auto& it : tx.internal_transfers) {
    if (it.value == 0) continue;
    const kg::Iri a = names.address(it.from);
    const kg::Iri b = names.address(it.to);
    out.push_back({a, pred("transferredTo"), b});
    out.push_back({b, rdf_type(), account_type(it.to)});
    out.push_back({b, prov_derived_from(), prov});
  }
  sort_unique(out);
  return out;
}

std::vector<kg::Triple> tag_triples(const std::vector<semantics::AddressTag>& tags, const kg::vocab::Names& names) {
  std::vector<kg::Triple> out;
  for (const auto& tag : tags) {
    const kg::Iri subject = names.address(tag.address);
    out.push_back({subject, pred("tagged"), kg::Literal::text(std::string(semantics::to_string(tag.kind)))});
    switch (tag.kind) {
      case semantics::TagKind::Deployer:
        out.push_back({subject, rdf_type(), cls("DeployerAccount")});
        break;
      case semantics::TagKind::NftMinter:
        out.push_back({subject, rdf_type(), cls("NftMinterAccount")});
        if (tag.target) {
          out.push_back({subject, pred("minted"), names.address(*tag.target)});
          out.push_back({names.address(*tag.target), rdf_type(), cls("NftContract")});
        }
        break;
      default:
        break;
    }
  }
  sort_unique(out);
  return out;
}

std::vector<kg::Triple> project_triples(const ProjectRecord& project, const kg::vocab::Names& names) {
  const kg::Iri node = names.project(project.name);
  const kg::Iri contract = names.address(project.contract);
  std::vector<kg::Triple> out{
      {node, rdf_type(), cls("Project")},
      {node, rdfs_label(), kg::Literal::text(project.name)},
      {node, pred("launchDate"), kg::Literal::timestamp(project.launch_date + "T00:00:00Z")},
      {node, pred("estimatedProfit"), kg::Literal::decimal(project.estimated_profit_usd)},
      {node, pred("hasContract"), contract},
      {node, prov_derived_from(), provenance_key("projects", slug(project.name))},
  };
  if (!project.provenance.empty()) out.push_back({node, rdfs_comment(), kg::Literal::text(project.provenance)});
  sort_unique(out);
  return out;
}

std::vector<kg::Triple> attribution_triples(const AttributionRecord& record, const kg::vocab::Names& names) {
  const kg::Iri node = names.address(record.address);
  std::vector<kg::Triple> out{
      {node, pred("tagged"), kg::Literal::text(std::string(semantics::to_string(record.tag)))},
      {node, rdfs_label(), kg::Literal::text(record.label)},
      {node, prov_derived_from(), provenance_key("attributions", content_hash(record).substr(0, 16))},
  };
  if (!record.provenance.empty()) out.push_back({node, rdfs_comment(), kg::Literal::text(record.provenance)});
  sort_unique(out);
  return out;
}

std::vector<kg::Triple> cluster_triples(const resolution::EntityCluster& cluster, const kg::vocab::Names& names) {
  const kg::Iri node = names.cluster(cluster.canonical_key);
  std::string deposits = "deposit addresses:";
  for (const auto& d : cluster.deposit_addresses) deposits += " " + d.hex_prefixed();
  std::vector<kg::Triple> out{
      {node, rdf_type(), cls("Account")},
      {node, rdfs_comment(), kg::Literal::text(deposits)},
      {node, prov_derived_from(), provenance_key("clustering", cluster.canonical_key)},
  };
  for (const auto& m : cluster.members) out.push_back({names.address(m), pred("controlledBy"), node});
  for (const auto& d : cluster.deposit_addresses) {
    out.push_back({names.address(d), pred("tagged"), kg::Literal::text("deposit_address")});
  }
  sort_unique(out);
  return out;
}

}  // namespace chaingraph::ingestion
