#include "adecodes/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

namespace adecodes {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw InputError(path + ": " + msg); }

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string at(const std::string& path, const char* key) { return path + "." + key; }

const Json& require(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [k, _] : obj.items())
    if (!allowed.count(k)) fail(at(path, k.c_str()), "unknown field");
}

Integer get_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_number_unsigned()) return Integer(j.get<unsigned long long>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos)
      return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  fail(path, "expected an integer, got " + j.dump());
}

Integer get_positive(const Json& j, const std::string& path) {
  Integer v = get_integer(j, path);
  if (v < 1) fail(path, "expected a positive integer, got " + j.dump());
  return v;
}

Rational get_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(get_integer(j, path));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  }
  fail(path, "expected a fraction string \"a/b\" or an integer, got " + j.dump());
}

bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(x));
  return Json(x.str());
}

Json rational_json(const Rational& x) { return Json(format_rational(x)); }

std::vector<SingularPoint> points_from_json(const Json& doc, const std::string& root) {
  const std::string path = at(root, "points");
  const Json& arr = require_array(require(doc, "points", root), path);
  std::vector<SingularPoint> pts;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = at(path, i);
    const Json& e = arr[i];
    require_object(e, p);
    check_keys(e, {"id", "type", "index"}, p);
    const Json& id = require(e, "id", p);
    if (!id.is_string() || id.get<std::string>().empty()) fail(at(p, "id"), "expected a non-empty string");
    if (!seen.insert(id.get<std::string>()).second) fail(at(p, "id"), "duplicate id " + id.dump());
    const Json& type = require(e, "type", p);
    if (!type.is_string()) fail(at(p, "type"), "expected \"A\", \"D\" or \"E\"");
    Integer n = get_positive(require(e, "index", p), at(p, "index"));
    try {
      Family f = DynkinLabel::parse_family(type.get<std::string>());
      if (n > 1000) throw InputError("index too large");
      pts.push_back({id.get<std::string>(), DynkinLabel(f, static_cast<int>(n))});
    } catch (const InputError& err) {
      fail(p, err.what());
    }
  }
  return pts;
}

// Greedy generating set read off the enumerated code: highest order first,
// ties broken lexicographically on slot tuples, skipping vectors already in
// the span. Depends only on K as a set, so emit/parse/emit is byte-stable.
std::vector<CodeVector> canonical_generators(const LabeledCode& code) {
  std::vector<std::vector<Integer>> all;
  try {
    all = code.enumerate_slots();
  } catch (const ResourceError&) {
    return code.dual_generators();
  }
  const auto& mod = code.v_moduli();
  auto order_of = [&](const std::vector<Integer>& s) {
    Integer n = 1;
    for (std::size_t i = 0; i < s.size(); ++i) n = boost::multiprecision::lcm(n, mod[i] / boost::multiprecision::gcd(s[i], mod[i]));
    return n;
  };
  std::vector<std::pair<Integer, std::vector<Integer>>> keyed;
  for (auto& s : all) keyed.emplace_back(order_of(s), std::move(s));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::set<std::vector<Integer>> span{std::vector<Integer>(mod.size(), Integer(0))};
  std::vector<CodeVector> out;
  for (const auto& [n, g] : keyed) {
    if (span.count(g)) continue;
    std::set<std::vector<Integer>> next;
    for (const auto& s : span) {
      std::vector<Integer> x = s;
      for (Integer k = 0; k < n; ++k) {
        next.insert(x);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod_floor(x[i] + g[i], mod[i]);
      }
    }
    span = std::move(next);
    out.push_back(code.to_vector(g));
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

Json read_json_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    return parse_json(text, "<stdin>");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  text.assign(std::istreambuf_iterator<char>(in), {});
  return parse_json(text, path);
}

CodeDocument code_from_json(const Json& doc) {
  const std::string root = "$";
  require_object(doc, root);
  check_keys(doc, {"points", "degree", "extended", "h_modulus", "dual_generators", "h_value", "kernel_generators"},
             root);
  CodeDocument out;
  auto pts = points_from_json(doc, root);
  if (doc.contains("degree")) out.degree = get_positive(doc["degree"], "$.degree");

  std::optional<Integer> h_modulus;
  bool extended = doc.contains("extended") ? get_bool(doc["extended"], "$.extended") : doc.contains("h_modulus");
  if (doc.contains("h_modulus")) {
    if (!extended) fail("$.h_modulus", "given for a code with \"extended\": false");
    h_modulus = get_positive(doc["h_modulus"], "$.h_modulus");
  } else if (extended) {
    if (!out.degree) fail("$.extended", "an extended code needs \"degree\" or \"h_modulus\"");
    h_modulus = extended_modulus(pts, *out.degree);
  }

  const bool dual = doc.contains("dual_generators"), kernel = doc.contains("kernel_generators");
  if (dual == kernel) fail(root, "exactly one of \"dual_generators\" and \"kernel_generators\" is required");
  if (doc.contains("h_value") && !dual) fail("$.h_value", "only allowed with \"dual_generators\"");
  if (doc.contains("h_value") && !extended) fail("$.h_value", "only allowed for extended codes");

  if (dual) {
    const Json& gens = require_array(doc["dual_generators"], "$.dual_generators");
    const Json* hv = nullptr;
    if (doc.contains("h_value")) {
      hv = &require_array(doc["h_value"], "$.h_value");
      if (hv->size() != gens.size())
        fail("$.h_value", "has " + std::to_string(hv->size()) + " entries for " + std::to_string(gens.size()) +
                              " generators");
    }
    std::vector<CodeVector> vectors;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const std::string gp = at("$.dual_generators", g);
      const Json& gen = require_array(gens[g], gp);
      if (gen.size() != pts.size())
        fail(gp, "has " + std::to_string(gen.size()) + " entries for " + std::to_string(pts.size()) + " points");
      CodeVector v;
      for (std::size_t p = 0; p < pts.size(); ++p) {
        const std::string pp = at(gp, p);
        const Json& vals = require_array(gen[p], pp);
        const int n = pts[p].label.index;
        if (vals.size() != static_cast<std::size_t>(n))
          fail(pp, "expected " + std::to_string(n) + " gamma-values for " + pts[p].label.to_string() + ", got " +
                       std::to_string(vals.size()));
        std::vector<Rational> gamma;
        for (std::size_t j = 0; j < vals.size(); ++j) gamma.push_back(frac(get_rational(vals[j], at(pp, j))));
        if (!local_homology(pts[p].label)->is_character(gamma))
          fail(pp, "values violate the relations of " + pts[p].label.to_string());
        v.values.push_back(std::move(gamma));
      }
      if (extended) v.h = hv ? frac(get_rational((*hv)[g], at("$.h_value", g))) : Rational(0);
      vectors.push_back(std::move(v));
    }
    try {
      out.code = LabeledCode::from_dual(std::move(pts), vectors, h_modulus);
    } catch (const InputError& e) {
      fail("$.dual_generators", e.what());
    }
    return out;
  }

  const bool h_slot = h_modulus && *h_modulus > 1;
  const Json& gens = require_array(doc["kernel_generators"], "$.kernel_generators");
  std::vector<std::vector<Integer>> flat;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string gp = at("$.kernel_generators", g);
    const Json& gen = require_array(gens[g], gp);
    const std::size_t want = pts.size() + (h_slot ? 1 : 0);
    if (gen.size() != want)
      fail(gp, "expected " + std::to_string(want) + " entries (one per point" + (h_slot ? ", then the H slot" : "") +
                   "), got " + std::to_string(gen.size()));
    std::vector<Integer> slots;
    for (std::size_t p = 0; p < want; ++p) {
      const std::string pp = at(gp, p);
      const Json& vals = require_array(gen[p], pp);
      const std::size_t n = p < pts.size() ? local_homology(pts[p].label)->group.num_slots() : 1;
      if (vals.size() != n) fail(pp, "expected " + std::to_string(n) + " slot residues, got " + std::to_string(vals.size()));
      for (std::size_t j = 0; j < n; ++j) slots.push_back(get_integer(vals[j], at(pp, j)));
    }
    flat.push_back(std::move(slots));
  }
  try {
    out.code = LabeledCode::from_kernel(std::move(pts), flat, h_modulus);
  } catch (const InputError& e) {
    fail("$.kernel_generators", e.what());
  }
  return out;
}

Json vector_to_json(const CodeVector& v) {
  Json values = Json::array();
  for (const auto& vals : v.values) {
    Json p = Json::array();
    for (const auto& x : vals) p.push_back(rational_json(x));
    values.push_back(std::move(p));
  }
  Json out{{"values", std::move(values)}};
  if (v.h) out["h"] = rational_json(*v.h);
  return out;
}

Json code_to_json(const LabeledCode& code, const std::optional<Integer>& degree) {
  Json pts = Json::array();
  for (const auto& p : code.points()) {
    const std::string fam = p.label.to_string().substr(0, 1);
    pts.push_back({{"id", p.id}, {"type", fam}, {"index", p.label.index}});
  }
  Json out{{"points", std::move(pts)}};
  if (degree) out["degree"] = integer_json(*degree);
  if (code.is_extended()) {
    out["extended"] = true;
    out["h_modulus"] = integer_json(*code.h_modulus());
  }
  Json gens = Json::array(), hv = Json::array();
  for (const auto& g : canonical_generators(code)) {
    gens.push_back(vector_to_json(g)["values"]);
    if (code.is_extended()) hv.push_back(rational_json(g.h.value_or(Rational(0))));
  }
  out["dual_generators"] = std::move(gens);
  if (code.is_extended()) out["h_value"] = std::move(hv);
  return out;
}

SurfaceContext context_from_json(const Json& doc) {
  require_object(doc, "$");
  check_keys(doc, {"k3", "degree", "K_dot_H", "K_even", "b2", "chi"}, "$");
  std::optional<Integer> degree;
  if (doc.contains("degree")) degree = get_positive(doc["degree"], "$.degree");
  SurfaceContext ctx;
  if (doc.contains("k3") && get_bool(doc["k3"], "$.k3")) {
    ctx = SurfaceContext::k3(degree);
  } else if (degree) {
    ctx = SurfaceContext::from_degree(*degree);
  } else if (doc.size() < 4) {
    fail("$", "give \"degree\", \"k3\": true, or all of K_dot_H, K_even, b2, chi");
  }
  if (doc.contains("K_dot_H")) ctx.K_dot_H = get_integer(doc["K_dot_H"], "$.K_dot_H");
  if (doc.contains("K_even")) ctx.K_even = get_bool(doc["K_even"], "$.K_even");
  if (doc.contains("b2")) ctx.b2 = get_integer(doc["b2"], "$.b2");
  if (doc.contains("chi")) ctx.chi = get_integer(doc["chi"], "$.chi");
  return ctx;
}

Json context_to_json(const SurfaceContext& ctx) {
  Json out = Json::object();
  if (ctx.degree) out["degree"] = integer_json(*ctx.degree);
  out["K_dot_H"] = integer_json(ctx.K_dot_H);
  out["K_even"] = ctx.K_even;
  out["b2"] = integer_json(ctx.b2);
  out["chi"] = integer_json(ctx.chi);
  return out;
}

LatticeDocument lattice_from_json(const Json& doc) {
  require_object(doc, "$");
  check_keys(doc, {"points", "degree", "generators", "isotropic_order"}, "$");
  LatticeDocument out;
  out.points = points_from_json(doc, "$");
  out.degree = get_positive(require(doc, "degree", "$"), "$.degree");
  if (doc.contains("isotropic_order")) {
    if (doc.contains("generators")) fail("$", "give either \"generators\" or \"isotropic_order\", not both");
    out.isotropic_order = get_positive(doc["isotropic_order"], "$.isotropic_order");
  }
  std::size_t dim = 1;
  for (const auto& p : out.points) dim += static_cast<std::size_t>(p.label.index);
  if (doc.contains("generators")) {
    const Json& gens = require_array(doc["generators"], "$.generators");
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const std::string gp = at("$.generators", g);
      const Json& c = require_array(gens[g], gp);
      if (c.size() != dim)
        fail(gp, "expected " + std::to_string(dim) + " coefficients (exceptional curves, then H), got " +
                     std::to_string(c.size()));
      RationalVector v;
      for (std::size_t j = 0; j < dim; ++j) v.push_back(get_rational(c[j], at(gp, j)));
      out.generators.push_back(std::move(v));
    }
  }
  return out;
}

Json report_to_json(const CodeCheck& check) {
  Json vectors = Json::array();
  for (std::size_t i = 0; i < check.vectors.size(); ++i) {
    Json results = Json::array();
    for (const auto& r : check.reports[i].results)
      results.push_back({{"rule", r.rule},
                         {"order", integer_json(r.order)},
                         {"outcome", to_string(r.outcome)},
                         {"residue", integer_json(r.residue)},
                         {"modulus", integer_json(r.modulus)},
                         {"detail", r.detail}});
    Json v = vector_to_json(check.vectors[i]);
    v["passed"] = check.reports[i].passed();
    v["results"] = std::move(results);
    vectors.push_back(std::move(v));
  }
  return Json{{"passed", check.passed()}, {"vectors", std::move(vectors)}};
}

Json b_inequality_to_json(const BInequality& b) {
  return Json{{"k2_dim", b.k2_dim}, {"lower_bound", integer_json(b.lower_bound)}, {"pass", b.pass}, {"equality", b.equality}};
}

Json catalog_entry_to_json(const CatalogEntry& e) {
  Json out{{"name", e.name}, {"description", e.description}, {"context", context_to_json(e.context)}};
  out["K"] = group_string(e.code.H1());
  out["code"] = code_to_json(e.code, e.context.degree);
  if (e.extended) {
    out["K_extended"] = group_string(e.extended->H1());
    out["extended_code"] = code_to_json(*e.extended, e.context.degree);
  }
  if (e.covariant_group) out["covariant_group"] = group_string(*e.covariant_group);
  out["notes"] = e.notes;
  return out;
}

Json genealogy_counts_to_json(const GenealogyDag& dag) {
  Json counts = Json::object();
  auto c = dag.counts_by_nu();
  for (auto it = c.rbegin(); it != c.rend(); ++it) counts[std::to_string(it->first)] = it->second;
  return Json{{"nodes", dag.nodes.size()}, {"edges", dag.edges.size()}, {"complete", dag.complete},
              {"counts_by_nu", std::move(counts)}};
}

std::string group_string(const FinAbGroup& g) {
  if (g.is_trivial()) return "0";
  std::vector<std::string> parts;
  if (g.free_rank() > 0) parts.push_back(g.free_rank() == 1 ? "Z" : "Z^" + std::to_string(g.free_rank()));
  const auto& f = g.invariant_factors();
  for (std::size_t i = 0; i < f.size();) {
    std::size_t j = i;
    while (j < f.size() && f[j] == f[i]) ++j;
    std::string z = "Z/" + f[i].str();
    parts.push_back(j - i == 1 ? z : "(" + z + ")^" + std::to_string(j - i));
    i = j;
  }
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " + ") + p;
  return out;
}

}  // namespace adecodes
