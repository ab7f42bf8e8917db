#pragma once

// JSON documents: codes, surface contexts, lattices and reports. Fractions
// are strings "a/b"; integers too large for int64 are strings as well.
// Errors are InputErrors whose message starts with a JSON path ("$.points[2].index")
// or, for malformed text, "<source>:line:column".

#include <optional>
#include <string>

#include "json.hpp"

#include "adecodes/catalog.hpp"
#include "adecodes/genealogy.hpp"
#include "adecodes/lattice.hpp"

namespace adecodes {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// Parses text; syntax errors become InputError "<source>:L:C: ...".
Json parse_json(const std::string& text, const std::string& source = "<input>");
/// Reads a file ("-" is standard input) and parses it.
Json read_json_file(const std::string& path);

struct CodeDocument {
  LabeledCode code;
  std::optional<Integer> degree;
};

/// Schema:
///   "points": [{"id", "type": "A"|"D"|"E", "index"}]
///   "degree": int (optional)
///   "extended": bool (optional; needs "degree" or "h_modulus")
///   "h_modulus": int (optional, d'; defaults to gcd(d, lcm m_x))
///   exactly one of
///     "dual_generators": [[[gamma-values per vertex] per point] per generator]
///         with optional "h_value": ["a/b" per generator]
///     "kernel_generators": [[[slot residues] per point (+ [h residue])] per generator]
CodeDocument code_from_json(const Json& doc);
/// Always written with dual generators (and h_value for extended codes).
Json code_to_json(const LabeledCode& code, const std::optional<Integer>& degree = std::nullopt);

Json vector_to_json(const CodeVector& v);

/// {"degree"?, "K_dot_H", "K_even", "b2", "chi"}, or {"k3": true, "degree"?}.
SurfaceContext context_from_json(const Json& doc);
Json context_to_json(const SurfaceContext& ctx);

struct LatticeDocument {
  std::vector<SingularPoint> points;
  Integer degree;
  std::vector<RationalVector> generators;  // coefficients on (E_1, ..., H)
  std::optional<Integer> isotropic_order;
};

/// {"points", "degree", "generators": [["a/b", ...]], "isotropic_order"?}
LatticeDocument lattice_from_json(const Json& doc);

Json report_to_json(const CodeCheck& check);
Json b_inequality_to_json(const BInequality& b);
Json catalog_entry_to_json(const CatalogEntry& e);
Json genealogy_counts_to_json(const GenealogyDag& dag);

/// "(Z/3)^2", "Z/2 + Z/6", "0".
std::string group_string(const FinAbGroup& g);

}  // namespace adecodes
