// Python bindings. Structured results cross the boundary as JSON text and are
// decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adecodes/io.hpp"

namespace py = pybind11;
using namespace adecodes;

namespace {

struct Code {
  LabeledCode code;
  std::optional<Integer> degree;
};

Code code_from_text(const std::string& text) {
  auto doc = code_from_json(parse_json(text));
  return {std::move(doc.code), std::move(doc.degree)};
}

std::string to_text(const Json& j) { return j.dump(); }

SurfaceContext context_for(const Code& c, std::optional<long long> degree, bool k3) {
  if (k3) return SurfaceContext::k3(degree ? std::optional<Integer>(*degree) : std::nullopt);
  if (degree) return SurfaceContext::from_degree(*degree);
  if (c.degree) return SurfaceContext::from_degree(*c.degree);
  throw InputError("no surface context: pass degree= or k3=True, or set \"degree\" in the document");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generalized labeled codes of ADE singularities";
  m.attr("__version__") = kVersion;

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::class_<Code>(m, "Code")
      .def_static("from_json", &code_from_text, py::arg("text"))
      .def("to_json", [](const Code& c) { return to_text(code_to_json(c.code, c.degree)); })
      .def_property_readonly("order", [](const Code& c) { return c.code.order().str(); })
      .def_property_readonly("group", [](const Code& c) { return group_string(c.code.H1()); })
      .def_property_readonly("labels", [](const Code& c) { return label_multiset(c.code.points()); })
      .def_property_readonly("point_ids",
                             [](const Code& c) {
                               std::vector<std::string> ids;
                               for (const auto& p : c.code.points()) ids.push_back(p.id);
                               return ids;
                             })
      .def_property_readonly("is_extended", [](const Code& c) { return c.code.is_extended(); })
      .def_property_readonly("rank", [](const Code& c) { return c.code.rank(); })
      .def("vectors",
           [](const Code& c) {
             Json out = Json::array();
             for (const auto& v : c.code.enumerate()) out.push_back(vector_to_json(v));
             return to_text(out);
           })
      .def("strict_part", [](const Code& c) { return Code{c.code.strict_part(), c.degree}; })
      .def(
          "shorten",
          [](const Code& c, const std::string& point, std::optional<std::vector<int>> vertices) {
            if (!vertices) return Code{shorten_full(c.code, point), c.degree};
            return Code{shorten_geometric(c.code, point, std::set<int>(vertices->begin(), vertices->end())), c.degree};
          },
          py::arg("point"), py::arg("vertices") = py::none())
      .def("equivalent", [](const Code& a, const Code& b) { return equivalent(a.code, b.code).has_value(); })
      .def(
          "check",
          [](const Code& c, std::optional<long long> degree, bool k3) {
            auto ctx = context_for(c, degree, k3);
            Json j = report_to_json(check_code(c.code, ctx));
            j["b_inequality"] = b_inequality_to_json(b_inequality(c.code.is_extended() ? c.code.strict_part() : c.code, ctx));
            return to_text(j);
          },
          py::arg("degree") = py::none(), py::arg("k3") = false)
      .def(
          "genealogy",
          [](const Code& c, std::optional<int> max_depth) {
            GenealogyDag dag;
            {
              py::gil_scoped_release release;
              dag = build_dag(c.code, max_depth);
            }
            Json j = genealogy_counts_to_json(dag);
            j["dot"] = to_dot(dag);
            j["csv"] = to_csv(dag);
            return to_text(j);
          },
          py::arg("max_depth") = py::none());

  m.def("local_homology", [](const std::string& family, int index) {
    DynkinLabel label(DynkinLabel::parse_family(family), index);
    auto lh = local_homology(label);
    Json gamma = Json::array();
    for (const auto& g : lh->gamma) {
      Json r = Json::array();
      for (const auto& x : g.residues()) r.push_back(x.str());
      gamma.push_back(std::move(r));
    }
    return to_text(Json{{"label", label.to_string()}, {"group", group_string(lh->group)}, {"gamma", gamma}});
  });
  m.def("catalog_names", &catalog_names);
  m.def("catalog_entry", [](const std::string& name) { return to_text(catalog_entry_to_json(catalog_get(name))); });
}
