#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chaingraph/kg/store.hpp"
#include "chaingraph/kg/term.hpp"

namespace chaingraph::kg {

enum class Format { NTriples, Turtle };

Format format_from_string(std::string_view name);

/// N-Triples: one line per triple, lines sorted bytewise. Turtle: prefix
/// header, then subjects in sorted order with `;`-grouped predicates.
std::string export_graph(const Store& store, Format format);

std::vector<Triple> parse_ntriples(std::string_view text);
std::vector<Triple> parse_turtle(std::string_view text);

/// Parses and inserts; returns the number of new triples. Parse errors carry
/// the 1-based line number and leave the store untouched.
std::size_t import_graph(Store& store, std::string_view text, Format format);

/// Pattern file: one `subject predicate object` pattern per line, `?name`
/// for variables, `<iri>` for IRIs, quoted literals with optional `^^<dt>`.
/// A trailing " ." is optional. Blank lines and `#` comments are skipped.
std::vector<TriplePattern> parse_patterns(std::string_view text);

}  // namespace chaingraph::kg
