#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "fisheco/dsl.hpp"
#include "fisheco/graph_export.hpp"
#include "fisheco/query.hpp"
#include "fisheco/spread.hpp"

namespace py = pybind11;
using namespace fisheco;

namespace {

std::map<std::string, AttrValue> attrs_from_dict(const py::dict& attrs) {
  std::map<std::string, AttrValue> out;
  for (const auto& item : attrs) {
    const std::string name = py::cast<std::string>(item.first);
    if (py::isinstance<py::bool_>(item.second)) {
      out[name] = py::cast<bool>(item.second);
    } else if (py::isinstance<py::str>(item.second)) {
      out[name] = py::cast<std::string>(item.second);
    } else {
      throw py::type_error("attribute '" + name + "' must be bool or str");
    }
  }
  return out;
}

py::dict attrs_to_dict(const std::map<std::string, AttrValue>& attrs) {
  py::dict out;
  for (const auto& [name, value] : attrs) {
    if (const bool* b = std::get_if<bool>(&value)) {
      out[py::str(name)] = *b;
    } else {
      out[py::str(name)] = std::get<std::string>(value);
    }
  }
  return out;
}

std::optional<Tense> tense_from_opt(const std::optional<std::string>& tense) {
  if (!tense) return {};
  auto parsed = tense_from_string(*tense);
  if (!parsed) throw py::value_error("tense must be 'past' or 'ongoing'");
  return parsed;
}

std::optional<Date> date_from_opt(const std::optional<std::string>& date) {
  if (!date) return {};
  auto parsed = Date::parse(*date);
  if (!parsed) throw py::value_error("date must be YYYY-MM-DD");
  return parsed;
}

py::list report_to_list(const ValidationReport& report) {
  py::list out;
  for (const Violation& v : report.violations) {
    py::dict row;
    row["severity"] =
        v.severity == Violation::Severity::error ? "error" : "warning";
    row["code"] = v.code;
    row["message"] = v.message;
    row["location"] = v.location ? py::object(py::str(*v.location))
                                 : py::object(py::none());
    out.append(std::move(row));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_fisheco, m) {
  m.doc() = "Ontology engine for false-information and fact-checking ecosystems";

  py::register_exception<Error>(m, "Error");

  py::class_<Schema>(m, "Schema")
      .def_property_readonly("id", &Schema::id)
      .def("entity_codes",
           [](const Schema& s) {
             std::vector<std::string> codes;
             for (const auto& et : s.entity_types()) codes.push_back(et.code);
             return codes;
           })
      .def("entity_name",
           [](const Schema& s, const std::string& code) {
             const EntityTypeDef* et = s.find_entity_type(code);
             if (!et) throw Error(Errc::unknown_type, "unknown entity type " + code);
             return et->name;
           })
      .def("attributes",
           [](const Schema& s, const std::string& code) {
             const EntityTypeDef* et = s.find_entity_type(code);
             if (!et) throw Error(Errc::unknown_type, "unknown entity type " + code);
             py::dict out;
             for (const auto& a : et->attributes) {
               out[py::str(a.name)] = attr_kind_name(a.kind);
             }
             return out;
           })
      .def("relation_triples",
           [](const Schema& s) {
             std::vector<std::tuple<std::string, std::string, std::string>> out;
             for (const auto& r : s.relation_types()) {
               out.emplace_back(r.verb, r.source_type, r.target_type);
             }
             return out;
           })
      .def("__eq__",
           [](const Schema& a, const Schema& b) { return schema_equivalent(a, b); })
      .def("__len__", [](const Schema& s) { return s.entity_types().size(); })
      .def("__repr__", [](const Schema& s) {
        return "<Schema " + s.id() + ": " +
               std::to_string(s.entity_types().size()) + " entity types, " +
               std::to_string(s.relation_types().size()) + " relation types>";
      });

  m.def("builtin_schema", [](const std::string& model) {
    auto parsed = model_from_string(model);
    if (!parsed) throw py::value_error("model must be 'A' or 'B'");
    return builtin_schema(*parsed);
  });
  m.def("builtin_merged", &builtin_merged,
        py::return_value_policy::reference);
  m.def("merge_schemas", &merge_schemas);
  m.def("validate_schema",
        [](const Schema& s) { return report_to_list(validate_schema(s)); });
  m.def("lookup_relation",
        [](const Schema& s, const std::string& verb, const std::string& src,
           const std::string& dst) {
          const RelationTypeDef& def = lookup_relation(s, verb, src, dst);
          py::dict out;
          out["verb"] = def.verb;
          out["source"] = def.source_type;
          out["target"] = def.target_type;
          out["edge_class"] = edge_class_name(def.edge_class);
          out["guard"] = def.guard ? py::object(py::str(*def.guard))
                                   : py::object(py::none());
          return out;
        });

  py::class_<ScenarioGraph>(m, "ScenarioGraph")
      .def(py::init([](const std::string& name, const Schema& schema) {
        return ScenarioGraph(name, schema);
      }))
      .def_property_readonly("name", &ScenarioGraph::name)
      .def_property_readonly(
          "schema", [](const ScenarioGraph& g) { return g.schema(); })
      .def("entity_ids",
           [](const ScenarioGraph& g) {
             std::vector<std::string> ids;
             for (const auto& [id, e] : g.entities()) ids.push_back(id);
             return ids;
           })
      .def("entity_type",
           [](const ScenarioGraph& g, const std::string& id) {
             return g.entity(id).type_code;
           })
      .def("entity_attrs",
           [](const ScenarioGraph& g, const std::string& id) {
             return attrs_to_dict(g.entity(id).attrs);
           })
      .def("relations",
           [](const ScenarioGraph& g) {
             py::list out;
             for (const Relation& r : g.relations()) {
               py::dict row;
               row["src"] = r.source_id;
               row["verb"] = r.verb;
               row["dst"] = r.target_id;
               row["tense"] = tense_name(r.tense);
               row["date"] = r.date ? py::object(py::str(r.date->to_string()))
                                    : py::object(py::none());
               out.append(std::move(row));
             }
             return out;
           })
      .def(
          "add_entity",
          [](ScenarioGraph& g, const std::string& type_code,
             const std::string& id, const py::dict& attrs) {
            g.add_entity(type_code, id, attrs_from_dict(attrs));
          },
          py::arg("type_code"), py::arg("id"), py::arg("attrs") = py::dict())
      .def(
          "add_relation",
          [](ScenarioGraph& g, const std::string& src, const std::string& verb,
             const std::string& dst, const std::optional<std::string>& tense,
             const std::optional<std::string>& date) {
            g.add_relation(src, verb, dst, tense_from_opt(tense),
                           date_from_opt(date));
          },
          py::arg("source_id"), py::arg("verb"), py::arg("target_id"),
          py::arg("tense") = py::none(), py::arg("date") = py::none())
      .def("validate",
           [](const ScenarioGraph& g) { return report_to_list(g.validate()); })
      .def("__eq__", [](const ScenarioGraph& a,
                        const ScenarioGraph& b) { return a == b; })
      .def("__len__",
           [](const ScenarioGraph& g) { return g.entities().size(); })
      .def("__repr__", [](const ScenarioGraph& g) {
        return "<ScenarioGraph \"" + g.name() + "\": " +
               std::to_string(g.entities().size()) + " entities, " +
               std::to_string(g.relations().size()) + " relations>";
      });

  m.def("parse", [](const std::string& text) { return parse(text); });
  m.def("serialize", &serialize);
  m.def("fixture_names", &fixture_names);
  m.def("fixture_text",
        [](const std::string& name) { return fixture_text(name); });
  m.def("load_fixture",
        [](const std::string& name) { return load_fixture(name); });
  m.def("to_json", &to_json);
  m.def("from_json", [](const std::string& text, const Schema& schema) {
    return from_json(text, schema);
  });

  m.def(
      "match_pattern",
      [](const ScenarioGraph& g, const std::string& pattern_text) {
        Pattern pattern = parse_pattern(pattern_text, g.schema());
        py::list out;
        for (const Binding& binding : match_pattern(g, pattern)) {
          py::dict row;
          for (const auto& [var, id] : binding) row[py::str(var)] = id;
          out.append(std::move(row));
        }
        return out;
      },
      py::arg("graph"), py::arg("pattern"));
  m.def("fact_check_events",
        [](const ScenarioGraph& g, const std::string& target) {
          py::list out;
          for (const FactCheckEvent& e : fact_check_events(g, target)) {
            py::dict row;
            row["checker"] = e.checker_id;
            row["checker_type"] = e.checker_type;
            row["tense"] = tense_name(e.tense);
            row["date"] = e.date ? py::object(py::str(e.date->to_string()))
                                 : py::object(py::none());
            row["report"] = e.report_id ? py::object(py::str(*e.report_id))
                                        : py::object(py::none());
            out.append(std::move(row));
          }
          return out;
        });
  m.def("co_fact_checkers",
        [](const ScenarioGraph& g, const std::string& target) {
          return co_fact_checkers(g, target);
        });
  m.def("uncovered_items",
        [](const ScenarioGraph& g) { return uncovered_items(g); });
  m.def(
      "shared_backer",
      [](const ScenarioGraph& g, const std::string& a, const std::string& b,
         int depth) {
        py::list out;
        for (const BackerPaths& paths : shared_backer(g, a, b, depth)) {
          py::dict row;
          row["backer"] = paths.backer_id;
          row["path_a"] = paths.path_from_a;
          row["path_b"] = paths.path_from_b;
          out.append(std::move(row));
        }
        return out;
      },
      py::arg("graph"), py::arg("a"), py::arg("b"), py::arg("max_depth") = 4);
  m.def("regulation_chain",
        [](const ScenarioGraph& g, const std::string& id) {
          py::list out;
          for (const RegulationEntry& e : regulation_chain(g, id)) {
            py::dict row;
            row["regulator"] = e.regulator_id;
            row["tense"] = tense_name(e.tense);
            row["instruments"] = e.instruments;
            out.append(std::move(row));
          }
          return out;
        });

  m.def(
      "to_dot",
      [](const ScenarioGraph& g, bool attrs_as_nodes) {
        StyleMap style;
        style.attrs_as_nodes = attrs_as_nodes;
        return to_dot(g, style);
      },
      py::arg("graph"), py::arg("attrs_as_nodes") = false);
  m.def("to_graphml", &to_graphml);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("exposed_per_step", &Trajectory::exposed_per_step)
      .def_readonly("final_exposed", &Trajectory::final_exposed)
      .def_readonly("newly_exposed_per_step", &Trajectory::newly_exposed_per_step)
      .def("__repr__", [](const Trajectory& t) {
        return "<Trajectory " + std::to_string(t.exposed_per_step.size() - 1) +
               " steps, " + std::to_string(t.final_exposed.size()) +
               " exposed>";
      });

  m.def("build_exposure_network",
        [](const ScenarioGraph& g) { return build_exposure_network(g); });
  m.def(
      "simulate",
      [](const ScenarioGraph& g, const std::string& item, double p_share,
         double damp, int steps, std::uint64_t seed) {
        SpreadParams params;
        params.p_share = p_share;
        params.damp = damp;
        params.steps = steps;
        params.seed = seed;
        return simulate(g, item, params);
      },
      py::arg("graph"), py::arg("item"), py::arg("p_share") = 0.5,
      py::arg("damp") = 0.0, py::arg("steps") = 10, py::arg("seed") = 0);
  m.attr("SPREAD_PRNG") = kSpreadPrngName;
}
