#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "adecodes/io.hpp"

namespace adecodes {

namespace {

struct Options {
  bool no_header = false;
  bool json = false;
};

void header(std::ostream& out, const Options& o) {
  if (!o.no_header) out << "// ade-codes " << kVersion << "\n";
}

std::string element_string(const GroupElement& x) {
  const auto& r = x.residues();
  if (r.empty()) return "0";
  if (r.size() == 1) return r[0].str();
  return x.to_string();
}

// Support of a vector as "id=key" items, then the H-value.
std::string vector_string(const LabeledCode& code, const CodeVector& v) {
  std::string s;
  for (std::size_t p = 0; p < code.size(); ++p) {
    const auto& vals = v.values[p];
    if (std::all_of(vals.begin(), vals.end(), [](const Rational& x) { return x == 0; })) continue;
    s += (s.empty() ? "" : " ") + code.points()[p].id + "=" + character_key(code.local(p), vals);
  }
  if (s.empty()) s = "0";
  if (v.h) s += " | h=" + format_rational(*v.h);
  return s;
}

// Writes to a path or, for "-", to out.
void emit(const std::string& target, const std::string& text, std::ostream& out) {
  if (target == "-") {
    out << text;
    return;
  }
  std::ofstream f(target, std::ios::binary);
  if (!f) throw InputError(target + ": cannot open for writing");
  f << text;
}

int local_homology_cmd(const std::string& family, int index, const Options& o, std::ostream& out) {
  DynkinLabel label(DynkinLabel::parse_family(family), index);
  auto lh = local_homology(label);
  if (o.json) {
    Json g = Json::array();
    for (const auto& x : lh->gamma) g.push_back(element_string(x));
    out << Json{{"label", label.to_string()}, {"group", group_string(lh->group)}, {"gamma", g}}.dump(2) << "\n";
    return kExitOk;
  }
  header(out, o);
  out << label.to_string() << ": " << group_string(lh->group) << "\n";
  out << "vertex  gamma\n";
  for (int i = 0; i < lh->size(); ++i) {
    bool dist = std::find(lh->distinguished.begin(), lh->distinguished.end(), i + 1) != lh->distinguished.end();
    out << std::left << std::setw(8) << (i + 1) << element_string(lh->gamma[static_cast<std::size_t>(i)])
        << (dist ? "  *" : "") << "\n";
  }
  return kExitOk;
}

int shorten_cmd(const std::string& file, const std::string& point, const std::vector<int>& vertices,
                std::ostream& out) {
  auto doc = code_from_json(read_json_file(file));
  LabeledCode result = vertices.empty()
                           ? shorten_full(doc.code, point)
                           : shorten_geometric(doc.code, point, std::set<int>(vertices.begin(), vertices.end()));
  out << code_to_json(result, doc.degree).dump(2) << "\n";
  return kExitOk;
}

int weights_cmd(const std::string& file, const Options& o, std::ostream& out) {
  auto doc = code_from_json(read_json_file(file));
  const auto vectors = doc.code.enumerate();
  Json rows = Json::array();
  std::ostringstream table;
  table << "#    order  weight  vector\n";
  for (std::size_t i = 1; i < vectors.size(); ++i) {
    auto w = weights(doc.code, vectors[i]);
    Json refined = Json::array();
    for (const auto& [k, n] : w.refined)
      refined.push_back({{"label", k.first.to_string()}, {"character", k.second}, {"count", n}});
    rows.push_back({{"index", i},
                    {"order", w.order.str()},
                    {"weight", w.hamming},
                    {"almost_simple", w.almost_simple},
                    {"vector", vector_to_json(vectors[i])},
                    {"refined", std::move(refined)}});
    table << std::left << std::setw(5) << i << std::setw(7) << w.order << std::setw(8) << w.hamming
          << vector_string(doc.code, vectors[i]) << "\n";
  }
  if (o.json) {
    out << Json{{"K", group_string(doc.code.H1())}, {"vectors", std::move(rows)}}.dump(2) << "\n";
  } else {
    header(out, o);
    out << "K = " << group_string(doc.code.H1()) << ", " << vectors.size() - 1 << " nonzero vectors\n"
        << table.str();
  }
  return kExitOk;
}

int check_cmd(const std::string& file, const std::optional<long long>& degree, const std::string& ctx_file,
              bool strict, const Options& o, std::ostream& out) {
  auto doc = code_from_json(read_json_file(file));
  SurfaceContext ctx;
  if (!ctx_file.empty()) {
    ctx = context_from_json(read_json_file(ctx_file));
  } else if (degree) {
    ctx = SurfaceContext::from_degree(*degree);
  } else if (doc.degree) {
    ctx = SurfaceContext::from_degree(*doc.degree);
  } else {
    throw InputError("no surface context: pass --degree or --ctx, or set \"degree\" in the document");
  }
  auto check = check_code(doc.code, ctx);
  auto b = b_inequality(doc.code.is_extended() ? doc.code.strict_part() : doc.code, ctx);
  const bool ok = check.passed() && b.pass;

  if (o.json) {
    Json j = report_to_json(check);
    j["context"] = context_to_json(ctx);
    j["b_inequality"] = b_inequality_to_json(b);
    j["passed"] = ok;
    out << j.dump(2) << "\n";
  } else {
    header(out, o);
    out << "context: " << context_to_json(ctx).dump() << "\n";
    out << "#    rule    order  outcome       residue  vector\n";
    std::size_t failures = 0;
    for (std::size_t i = 0; i < check.vectors.size(); ++i) {
      failures += !check.reports[i].passed();
      for (const auto& r : check.reports[i].results) {
        std::ostringstream res;
        if (r.outcome == Outcome::Pass || r.outcome == Outcome::Fail) res << r.residue << " mod " << r.modulus;
        out << std::left << std::setw(5) << (i + 1) << std::setw(8) << r.rule << std::setw(7) << r.order
            << std::setw(14) << to_string(r.outcome) << std::setw(9) << res.str()
            << vector_string(doc.code, check.vectors[i]) << "\n";
      }
    }
    out << "B-inequality: dim K_2 = " << b.k2_dim << " >= " << b.lower_bound << ": "
        << (b.pass ? (b.equality ? "pass (equality)" : "pass") : "FAIL") << "\n";
    out << "summary: " << check.vectors.size() << " nonzero vectors, " << failures << " failing\n";
  }
  return strict && !ok ? kExitCheckFailed : kExitOk;
}

int saturate_cmd(const std::string& file, std::ostream& out, std::ostream& err) {
  auto doc = lattice_from_json(read_json_file(file));
  PolarizedLattice L(doc.points, doc.degree);
  if (doc.isotropic_order) {
    auto form = discriminant_form(L);
    Json subs = Json::array();
    for (const auto& U : isotropic_subgroups(form, *doc.isotropic_order)) {
      Json gens = Json::array();
      for (const auto& g : U.basis()) {
        Json c = Json::array();
        for (const auto& x : form.lift(g)) c.push_back(format_rational(x));
        gens.push_back(std::move(c));
      }
      auto code = code_from_subgroup(L, form, U);
      subs.push_back({{"generators", std::move(gens)},
                      {"K_extended", group_string(code.H1())},
                      {"K", group_string(code.strict_part().H1())},
                      {"code", code_to_json(code, doc.degree)}});
    }
    out << Json{{"discriminant", group_string(form.group())}, {"subgroups", std::move(subs)}}.dump(2) << "\n";
    return kExitOk;
  }
  auto sat = saturation(L, doc.generators);
  const bool integral = saturation_is_integral(L, doc.generators);
  if (!integral) err << "warning: the generators do not span an integral overlattice\n";
  auto code = code_from_saturation(L, doc.generators);
  out << Json{{"quotient", group_string(sat.quotient)},
              {"integral", integral},
              {"K_extended", group_string(code.H1())},
              {"K", group_string(code.strict_part().H1())},
              {"code", code_to_json(code, doc.degree)}}
             .dump(2)
      << "\n";
  return kExitOk;
}

void genealogy_summary(const std::string& name, const LabeledCode& ancestor, const GenealogyDag& dag,
                       const Options& o, std::ostream& out) {
  if (o.json) {
    Json j = genealogy_counts_to_json(dag);
    j["ancestor"] = name;
    j["extended"] = ancestor.is_extended();
    out << j.dump(2) << "\n";
    return;
  }
  header(out, o);
  out << "ancestor: " << name << " (" << (ancestor.is_extended() ? "extended" : "strict") << " code, K = "
      << group_string(ancestor.H1()) << ")\n";
  out << "nu  classes\n";
  auto counts = dag.counts_by_nu();
  for (auto it = counts.rbegin(); it != counts.rend(); ++it)
    out << std::left << std::setw(4) << it->first << it->second << "\n";
  out << "total " << dag.nodes.size() << " classes, " << dag.edges.size() << " edges"
      << (dag.complete ? "" : " (incomplete)") << "\n";
}

int genealogy_cmd(const std::string& source, const std::string& dot, const std::string& csv,
                  const std::optional<int>& max_depth, bool strict, const Options& o, std::ostream& out,
                  std::ostream& err) {
  if (dot == "-" && csv == "-") throw InputError("--dot and --csv cannot both write to standard output");
  LabeledCode ancestor;
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), source) != names.end()) {
    auto e = catalog_get(source);
    ancestor = e.extended ? *e.extended : e.code;
  } else if (source == "-" || std::filesystem::exists(source)) {
    ancestor = code_from_json(read_json_file(source)).code;
  } else {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw InputError("'" + source + "' is neither a file nor a catalog entry (" + list + ")");
  }
  if (strict && ancestor.is_extended()) ancestor = ancestor.strict_part();
  if (max_depth && *max_depth < 0) throw InputError("--max-depth must be nonnegative");

  auto write = [&](const GenealogyDag& dag) {
    if (!dot.empty()) {
      std::string text = to_dot(dag);
      if (!o.no_header) text = "// ade-codes " + std::string(kVersion) + "\n" + text;
      emit(dot, text, out);
    }
    if (!csv.empty()) emit(csv, to_csv(dag), out);
    if (dot != "-" && csv != "-") genealogy_summary(source, ancestor, dag, o, out);
  };
  try {
    write(build_dag(ancestor, max_depth));
  } catch (const GenealogyCapExceeded& e) {
    write(e.partial());
    err << "error: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitOk;
}

int catalog_list_cmd(const Options& o, std::ostream& out) {
  if (o.json) {
    Json j = Json::array();
    for (const auto& n : catalog_names()) j.push_back({{"name", n}, {"description", catalog_get(n).description}});
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  header(out, o);
  for (const auto& n : catalog_names()) out << std::left << std::setw(18) << n << catalog_get(n).description << "\n";
  return kExitOk;
}

int catalog_show_cmd(const std::string& name, const Options& o, std::ostream& out) {
  auto e = catalog_get(name);
  if (o.json) {
    out << catalog_entry_to_json(e).dump(2) << "\n";
    return kExitOk;
  }
  header(out, o);
  out << e.name << ": " << e.description << "\n";
  out << "points: " << label_multiset(e.code.points()) << "\n";
  out << "context: " << context_to_json(e.context).dump() << "\n";
  out << "K  = " << group_string(e.code.H1()) << "\n";
  if (e.extended) out << "K' = " << group_string(e.extended->H1()) << "\n";
  if (e.covariant_group) out << "G + Lambda_G = " << group_string(*e.covariant_group) << "\n";
  const auto& shown = e.extended ? *e.extended : e.code;
  out << "generators:\n";
  for (const auto& g : shown.dual_generators()) out << "  " << vector_string(shown, g) << "\n";
  out << "notes: " << e.notes << "\n";
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized labeled codes of ADE singularities", "ade-codes"};
  app.set_version_flag("--version", std::string("ade-codes ") + kVersion);
  app.require_subcommand(1);
  Options o;
  app.add_flag("--no-header", o.no_header, "Omit the version line from text and DOT output");

  std::string family, file, point, ctx_file, dot, csv, source, name;
  int index = 0;
  std::vector<int> vertices;
  std::optional<long long> degree;
  std::optional<int> max_depth;
  bool strict = false;

  auto* lh = app.add_subcommand("local-homology", "Local homology group and gamma classes of an ADE label");
  lh->add_option("family", family, "A, D or E")->required();
  lh->add_option("index", index, "Diagram index")->required();
  lh->add_flag("--json", o.json);

  auto* sh = app.add_subcommand("shorten", "Shorten a code at one point");
  sh->add_option("file", file, "Code document (- for stdin)")->required();
  sh->add_option("--point", point, "Point id")->required();
  sh->add_option("--vertices", vertices, "Vertices to delete (comma separated); omit for the full shortening")
      ->delimiter(',');

  auto* wt = app.add_subcommand("weights", "Weights of every nonzero code vector");
  wt->add_option("file", file, "Code document (- for stdin)")->required();
  wt->add_flag("--json", o.json);

  auto* ck = app.add_subcommand("check", "Check the restrictions on every code vector");
  ck->add_option("file", file, "Code document (- for stdin)")->required();
  auto* deg = ck->add_option("--degree", degree, "Degree of a surface in P^3");
  ck->add_option("--ctx", ctx_file, "Surface context document")->excludes(deg);
  ck->add_flag("--strict", strict, "Exit with status 2 when a check fails");
  ck->add_flag("--json", o.json);

  auto* sat = app.add_subcommand("saturate", "Code of a saturation of the exceptional lattice");
  sat->add_option("file", file, "Lattice document (- for stdin)")->required();

  auto* gen = app.add_subcommand("genealogy", "All codes reachable by shortening, up to equivalence");
  gen->add_option("ancestor", source, "Catalog name or code document")->required();
  gen->add_option("--dot", dot, "Write the DAG as DOT (- for stdout)");
  gen->add_option("--csv", csv, "Write one CSV row per class (- for stdout)");
  gen->add_option("--max-depth", max_depth, "Stop after this many shortening steps");
  gen->add_flag("--strict", strict, "Use the strict part of an extended ancestor");
  gen->add_flag("--json", o.json);

  auto* cat = app.add_subcommand("catalog", "Named ancestor surfaces");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "List the entries");
  cat_list->add_flag("--json", o.json);
  auto* cat_show = cat->add_subcommand("show", "Show one entry");
  cat_show->add_option("name", name)->required();
  cat_show->add_flag("--json", o.json);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "ade-codes " << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (lh->parsed()) return local_homology_cmd(family, index, o, out);
    if (sh->parsed()) return shorten_cmd(file, point, vertices, out);
    if (wt->parsed()) return weights_cmd(file, o, out);
    if (ck->parsed()) return check_cmd(file, degree, ctx_file, strict, o, out);
    if (sat->parsed()) return saturate_cmd(file, out, err);
    if (gen->parsed()) return genealogy_cmd(source, dot, csv, max_depth, strict, o, out, err);
    if (cat_list->parsed()) return catalog_list_cmd(o, out);
    if (cat_show->parsed()) return catalog_show_cmd(name, o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace adecodes
