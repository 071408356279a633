#include "fisheco/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fisheco/dsl.hpp"
#include "fisheco/graph_export.hpp"
#include "fisheco/query.hpp"
#include "fisheco/spread.hpp"

namespace fisheco {

namespace {

constexpr int kOk = 0;
constexpr int kValidationErrors = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct CliFailure {
  int exit_code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{kIo, "cannot open " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw CliFailure{kIo, "cannot read " + path};
  return buffer.str();
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// .fis files go through the DSL; .json documents through from_json with the
// builtin schema the document names.
ScenarioGraph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  if (!has_suffix(path, ".json")) {
    try {
      return parse(text);
    } catch (const ParseError& e) {
      throw CliFailure{kUsage, path + ":" + std::to_string(e.line()) + ":" +
                                   std::to_string(e.column()) + ": " +
                                   e.detail() + "\n  | " + e.snippet()};
    }
  }
  std::string schema_id;
  try {
    auto doc = nlohmann::json::parse(text);
    schema_id = doc.is_object() ? doc.value("schema", "") : "";
  } catch (const nlohmann::json::parse_error& e) {
    throw CliFailure{kUsage, path + ": invalid JSON: " + e.what()};
  }
  const Schema* schema = find_builtin(schema_id);
  if (!schema) {
    throw CliFailure{kUsage, path + ": document schema '" + schema_id +
                                 "' is not one of A, B, merged"};
  }
  try {
    return from_json(text, *schema);
  } catch (const Error& e) {
    throw CliFailure{kUsage, path + ": " + e.what()};
  }
}

std::string attr_value_text(const AttrValue& value) {
  if (const bool* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  return std::get<std::string>(value);
}

void print_schema(const Schema& schema, std::ostream& out) {
  out << "# schema " << schema.id() << ": " << schema.entity_types().size()
      << " entity types, " << schema.relation_types().size()
      << " relation types\n";
  out << "# entity types (code, name, colour, attributes)\n";
  for (const EntityTypeDef& et : schema.entity_types()) {
    out << et.code << "\t" << et.name << "\t" << colour_class_name(et.colour)
        << "\t";
    if (et.attributes.empty()) {
      out << "-";
    } else {
      for (std::size_t i = 0; i < et.attributes.size(); ++i) {
        if (i) out << " ";
        out << et.attributes[i].name << ":"
            << attr_kind_name(et.attributes[i].kind);
      }
    }
    out << "\n";
  }
  out << "# relation types (verb, source, target, class, guard)\n";
  for (const RelationTypeDef& r : schema.relation_types()) {
    out << r.verb << "\t" << r.source_type << "\t" << r.target_type << "\t"
        << edge_class_name(r.edge_class) << "\t" << (r.guard ? *r.guard : "-")
        << "\n";
  }
}

int cmd_validate(const std::string& path, std::ostream& out) {
  ScenarioGraph graph = load_graph(path);
  ValidationReport report = validate_graph(graph);
  for (const Violation& v : report.violations) {
    out << (v.severity == Violation::Severity::error ? "error" : "warning")
        << "\t" << v.code << "\t" << (v.location ? *v.location : "-") << "\t"
        << v.message << "\n";
  }
  out << report.error_count() << " errors, " << report.warning_count()
      << " warnings\n";
  return report.valid() ? kOk : kValidationErrors;
}

std::string json_date(const std::optional<Date>& date) {
  return date ? date->to_string() : "";
}

int cmd_query(const std::string& path, const std::string& name,
              const std::vector<std::string>& args, bool as_json, int depth,
              std::ostream& out) {
  ScenarioGraph graph = load_graph(path);
  auto need_args = [&](std::size_t count, const std::string& usage) {
    if (args.size() != count) {
      throw CliFailure{kUsage, "query " + name + " expects " + usage};
    }
  };
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();

  try {
    if (name == "fact-check-events") {
      need_args(1, "one target entity id");
      for (const FactCheckEvent& e : fact_check_events(graph, args[0])) {
        if (as_json) {
          nlohmann::ordered_json row;
          row["checker"] = e.checker_id;
          row["checker_type"] = e.checker_type;
          row["tense"] = tense_name(e.tense);
          if (e.date) row["date"] = e.date->to_string();
          if (e.report_id) row["report"] = *e.report_id;
          doc.push_back(std::move(row));
        } else {
          out << e.checker_id << "\t" << e.checker_type << "\t"
              << tense_name(e.tense) << "\t" << json_date(e.date) << "\t"
              << (e.report_id ? *e.report_id : "") << "\n";
        }
      }
    } else if (name == "co-fact-checkers") {
      need_args(1, "one target entity id");
      for (const std::string& id : co_fact_checkers(graph, args[0])) {
        if (as_json) doc.push_back(id);
        else out << id << "\n";
      }
    } else if (name == "uncovered") {
      need_args(0, "no arguments");
      for (const std::string& id : uncovered_items(graph)) {
        if (as_json) doc.push_back(id);
        else out << id << "\n";
      }
    } else if (name == "shared-backer") {
      need_args(2, "two entity ids");
      for (const BackerPaths& b : shared_backer(graph, args[0], args[1], depth)) {
        if (as_json) {
          nlohmann::ordered_json row;
          row["backer"] = b.backer_id;
          row["path_a"] = b.path_from_a;
          row["path_b"] = b.path_from_b;
          doc.push_back(std::move(row));
        } else {
          auto join = [](const std::vector<std::string>& path) {
            std::string s;
            for (std::size_t i = 0; i < path.size(); ++i) {
              if (i) s += " -> ";
              s += path[i];
            }
            return s;
          };
          out << b.backer_id << "\t" << join(b.path_from_a) << "\t"
              << join(b.path_from_b) << "\n";
        }
      }
    } else if (name == "regulation-chain") {
      need_args(1, "one entity id");
      for (const RegulationEntry& e : regulation_chain(graph, args[0])) {
        if (as_json) {
          nlohmann::ordered_json row;
          row["regulator"] = e.regulator_id;
          row["tense"] = tense_name(e.tense);
          row["instruments"] = e.instruments;
          doc.push_back(std::move(row));
        } else {
          std::string instruments;
          for (std::size_t i = 0; i < e.instruments.size(); ++i) {
            if (i) instruments += ", ";
            instruments += e.instruments[i];
          }
          out << e.regulator_id << "\t" << tense_name(e.tense) << "\t"
              << instruments << "\n";
        }
      }
    } else if (name == "match") {
      need_args(1, "one pattern expression");
      Pattern pattern = parse_pattern(args[0], graph.schema());
      for (const Binding& binding : match_pattern(graph, pattern)) {
        if (as_json) {
          nlohmann::ordered_json row = nlohmann::ordered_json::object();
          for (const NodeVar& var : pattern.node_vars) {
            row[var.name] = binding.at(var.name);
          }
          doc.push_back(std::move(row));
        } else {
          bool first = true;
          for (const NodeVar& var : pattern.node_vars) {
            if (!first) out << "\t";
            first = false;
            out << var.name << "=" << binding.at(var.name);
          }
          out << "\n";
        }
      }
    } else {
      throw CliFailure{kUsage,
                       "unknown query '" + name +
                           "'; names: fact-check-events, co-fact-checkers, "
                           "uncovered, shared-backer, regulation-chain, match"};
    }
  } catch (const Error& e) {
    throw CliFailure{kUsage, e.what()};
  }

  if (as_json) out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_export(const std::string& path, const std::string& format,
               bool attrs_as_nodes, const std::string& output,
               std::ostream& out) {
  ScenarioGraph graph = load_graph(path);
  std::string rendered;
  if (format == "dot") {
    StyleMap style;
    style.attrs_as_nodes = attrs_as_nodes;
    rendered = to_dot(graph, style);
  } else if (format == "graphml") {
    rendered = to_graphml(graph);
  } else if (format == "json") {
    rendered = to_json(graph);
  } else if (format == "fis") {
    rendered = serialize(graph);
  } else {
    throw CliFailure{kUsage, "format must be dot, graphml, json or fis"};
  }
  if (output.empty()) {
    out << rendered;
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) throw CliFailure{kIo, "cannot open " + output + " for writing"};
    file << rendered;
    if (!file.good()) throw CliFailure{kIo, "cannot write " + output};
  }
  return kOk;
}

int cmd_simulate(const std::string& path, const std::string& item,
                 const SpreadParams& params, std::ostream& out) {
  ScenarioGraph graph = load_graph(path);
  Trajectory trajectory;
  try {
    trajectory = simulate(graph, item, params);
  } catch (const Error& e) {
    throw CliFailure{kUsage, e.what()};
  }
  nlohmann::ordered_json meta;
  meta["item"] = item;
  meta["p_share"] = params.p_share;
  meta["damp"] = params.damp;
  meta["steps"] = params.steps;
  meta["seed"] = params.seed;
  meta["prng"] = kSpreadPrngName;
  out << meta.dump() << "\n";
  out << "step,exposed\n";
  for (std::size_t i = 0; i < trajectory.exposed_per_step.size(); ++i) {
    out << i << "," << trajectory.exposed_per_step[i] << "\n";
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Schema-driven ontology engine for false-information and "
               "fact-checking ecosystems"};
  app.require_subcommand(1);

  // schema show <A|B|merged>
  auto* schema_cmd = app.add_subcommand("schema", "Inspect builtin schemas");
  schema_cmd->require_subcommand(1);
  auto* schema_show = schema_cmd->add_subcommand("show", "Print a schema catalog");
  std::string schema_name;
  schema_show->add_option("model", schema_name, "A, B or merged")->required();

  // validate <file>
  auto* validate_cmd =
      app.add_subcommand("validate", "Parse a scenario and report violations");
  std::string validate_path;
  validate_cmd->add_option("file", validate_path, "scenario file (.fis or .json)")
      ->required();

  // query <file> <name> [args...]
  auto* query_cmd = app.add_subcommand("query", "Run an ecosystem analysis");
  std::string query_path, query_name;
  std::vector<std::string> query_args;
  bool query_json = false;
  int query_depth = 4;
  query_cmd->add_option("file", query_path, "scenario file")->required();
  query_cmd
      ->add_option("name", query_name,
                   "fact-check-events, co-fact-checkers, uncovered, "
                   "shared-backer, regulation-chain, match")
      ->required();
  query_cmd->add_option("args", query_args,
                        "query arguments (entity ids, or a pattern such as "
                        "'x:FO, y:N; x-fact_checked->y')");
  query_cmd->add_flag("--json", query_json, "emit a JSON array instead of rows");
  query_cmd->add_option("--depth", query_depth,
                        "belongs_to search depth for shared-backer");

  // export <file> --format ...
  auto* export_cmd = app.add_subcommand("export", "Render a scenario graph");
  std::string export_path, export_format, export_output;
  bool export_attr_nodes = false;
  export_cmd->add_option("file", export_path, "scenario file")->required();
  export_cmd
      ->add_option("--format", export_format,
                   "dot, graphml, json or fis (canonical scenario text)")
      ->required();
  export_cmd->add_flag("--attrs-as-nodes", export_attr_nodes,
                       "render true boolean attributes as ellipse nodes (dot)");
  export_cmd->add_option("-o,--output", export_output,
                         "output path (default stdout)");

  // simulate <file> --item ...
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Run a spread simulation over a scenario");
  std::string simulate_path, simulate_item;
  SpreadParams params;
  simulate_cmd->add_option("file", simulate_path, "scenario file")->required();
  simulate_cmd->add_option("--item", simulate_item, "N or UGC entity id")
      ->required();
  simulate_cmd->add_option("--p", params.p_share, "share probability in [0,1]");
  simulate_cmd->add_option("--damp", params.damp, "awareness damping in [0,1]");
  simulate_cmd->add_option("--steps", params.steps, "number of steps");
  simulate_cmd->add_option("--seed", params.seed, "PRNG seed");

  // fixtures list | dump <name>
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Shipped example scenarios");
  fixtures_cmd->require_subcommand(1);
  auto* fixtures_list = fixtures_cmd->add_subcommand("list", "List fixture names");
  auto* fixtures_dump = fixtures_cmd->add_subcommand("dump", "Print fixture text");
  std::string fixture_name;
  fixtures_dump->add_option("name", fixture_name, "fixture name")->required();

  std::vector<const char*> argv;
  argv.push_back("fisheco");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    err << app.help();
    return kUsage;
  }

  try {
    if (*schema_show) {
      const Schema* schema = find_builtin(schema_name);
      if (!schema) {
        throw CliFailure{kUsage, "unknown schema '" + schema_name +
                                     "'; expected A, B or merged"};
      }
      print_schema(*schema, out);
      return kOk;
    }
    if (*validate_cmd) return cmd_validate(validate_path, out);
    if (*query_cmd) {
      return cmd_query(query_path, query_name, query_args, query_json,
                       query_depth, out);
    }
    if (*export_cmd) {
      return cmd_export(export_path, export_format, export_attr_nodes,
                        export_output, out);
    }
    if (*simulate_cmd) {
      return cmd_simulate(simulate_path, simulate_item, params, out);
    }
    if (*fixtures_list) {
      for (const std::string& name : fixture_names()) {
        ScenarioGraph g = load_fixture(name);
        out << name << "\t" << g.entities().size() << " entities\t"
            << g.relations().size() << " relations\n";
      }
      return kOk;
    }
    if (*fixtures_dump) {
      try {
        out << fixture_text(fixture_name);
      } catch (const Error& e) {
        throw CliFailure{kUsage, e.what()};
      }
      return kOk;
    }
  } catch (const CliFailure& failure) {
    err << failure.message << "\n";
    return failure.exit_code;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  err << app.help();
  return kUsage;
}

}  // namespace fisheco
