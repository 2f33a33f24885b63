#pragma once

#include <string>
#include <vector>

#include "chaingraph/ingestion/records.hpp"
#include "chaingraph/kg/term.hpp"
#include "chaingraph/kg/vocabulary.hpp"
#include "chaingraph/resolution/deposit_clustering.hpp"
#include "chaingraph/semantics/relations.hpp"

// Record -> triple mappings. Every mapped entity carries a
// prov:wasDerivedFrom literal "<source>#<key>".

namespace chaingraph::ingestion {

kg::Literal provenance_key(std::string_view source, std::string_view key);

/// Transaction node, relation edges, internal transfers and account types.
std::vector<kg::Triple> transaction_triples(const semantics::ChainTransaction& tx,
                                            const std::vector<semantics::RelationEdge>& edges,
                                            const semantics::ContractRegistry& registry,
                                            const kg::vocab::Names& names);

std::vector<kg::Triple> tag_triples(const std::vector<semantics::AddressTag>& tags, const kg::vocab::Names& names);

std::vector<kg::Triple> project_triples(const ProjectRecord& project, const kg::vocab::Names& names);

std::vector<kg::Triple> attribution_triples(const AttributionRecord& record, const kg::vocab::Names& names);

/// Members point at a cluster entity via controlledBy; deposit addresses are
/// tagged deposit_address.
std::vector<kg::Triple> cluster_triples(const resolution::EntityCluster& cluster, const kg::vocab::Names& names);

}  // namespace chaingraph::ingestion
