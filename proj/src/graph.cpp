#include "fisheco/graph.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace fisheco {

namespace {

using ordered_json = nlohmann::ordered_json;

bool id_is_wellformed(std::string_view id) {
  // Ids are free-form labels but must fit on one DSL line.
  return !id.empty() && id.find('\n') == std::string_view::npos &&
         id.find('\r') == std::string_view::npos;
}

bool value_is_wellformed(const AttrValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) {
    return s->find('\n') == std::string::npos &&
           s->find('\r') == std::string::npos;
  }
  return true;
}

std::string relation_label(const Relation& r) {
  return "\"" + r.source_id + "\" -" + r.verb + "-> \"" + r.target_id + "\"";
}

ordered_json attr_value_to_json(const AttrValue& value) {
  if (const auto* b = std::get_if<bool>(&value)) return *b;
  return std::get<std::string>(value);
}

}  // namespace

const char* tense_name(Tense t) { return t == Tense::past ? "past" : "ongoing"; }

std::optional<Tense> tense_from_string(std::string_view name) {
  if (name == "past") return Tense::past;
  if (name == "ongoing") return Tense::ongoing;
  return {};
}

ScenarioGraph::ScenarioGraph(std::string name, Schema schema)
    : name_(std::move(name)), schema_(std::move(schema)) {
  ValidationReport report = validate_schema(schema_);
  if (!report.valid()) {
    std::ostringstream msg;
    msg << "schema " << schema_.id() << " does not validate:";
    for (const auto& v : report.violations) msg << " [" << v.code << "] " << v.message << ";";
    throw Error(Errc::invalid_schema, msg.str());
  }
}

const Entity* ScenarioGraph::find_entity(std::string_view id) const {
  auto it = entities_.find(std::string(id));
  return it == entities_.end() ? nullptr : &it->second;
}

const Entity& ScenarioGraph::entity(std::string_view id) const {
  if (const Entity* e = find_entity(id)) return *e;
  throw Error(Errc::unknown_entity, "no entity with id \"" + std::string(id) + "\"");
}

std::optional<AttrValue> ScenarioGraph::attr_or_default(
    const Entity& e, std::string_view attr_name) const {
  auto it = e.attrs.find(std::string(attr_name));
  if (it != e.attrs.end()) return it->second;
  const EntityTypeDef* type = schema_.find_entity_type(e.type_code);
  if (!type) return {};
  const AttributeDef* def = type->find_attribute(attr_name);
  if (!def) return {};
  if (def->default_value) return def->default_value;
  if (def->kind == AttrKind::boolean) return AttrValue{false};
  return {};
}

bool ScenarioGraph::attr_bool(const Entity& e, std::string_view attr_name) const {
  auto value = attr_or_default(e, attr_name);
  if (!value) return false;
  const bool* b = std::get_if<bool>(&*value);
  return b && *b;
}

const Entity& ScenarioGraph::add_entity(const std::string& type_code,
                                        const std::string& id,
                                        std::map<std::string, AttrValue> attrs) {
  if (!id_is_wellformed(id)) {
    throw Error(Errc::invalid_id,
                "entity id must be non-empty and single-line: \"" + id + "\"");
  }
  if (entities_.count(id)) {
    throw Error(Errc::duplicate_id, "entity id \"" + id + "\" already in use");
  }
  const EntityTypeDef* type = schema_.find_entity_type(type_code);
  if (!type) {
    throw Error(Errc::unknown_type,
                "entity type " + type_code + " is not declared in schema " +
                    schema_.id());
  }
  for (const auto& [name, value] : attrs) {
    const AttributeDef* def = type->find_attribute(name);
    if (!def) {
      throw Error(Errc::unknown_attribute,
                  "entity type " + type_code + " declares no attribute '" +
                      name + "'");
    }
    const bool is_bool = std::holds_alternative<bool>(value);
    if (is_bool != (def->kind == AttrKind::boolean)) {
      throw Error(Errc::attribute_kind_mismatch,
                  "attribute '" + name + "' of " + type_code + " is " +
                      attr_kind_name(def->kind) + ", got " +
                      (is_bool ? "boolean" : "string"));
    }
    if (!value_is_wellformed(value)) {
      throw Error(Errc::invalid_id,
                  "attribute '" + name + "' value must be single-line");
    }
  }
  auto [it, inserted] = entities_.emplace(id, Entity{id, type_code, std::move(attrs)});
  (void)inserted;
  return it->second;
}

const Relation& ScenarioGraph::add_relation(const std::string& source_id,
                                            const std::string& verb,
                                            const std::string& target_id,
                                            std::optional<Tense> tense,
                                            std::optional<Date> date) {
  const Entity* src = find_entity(source_id);
  if (!src) {
    throw Error(Errc::unknown_entity,
                "no entity with id \"" + source_id + "\"");
  }
  const Entity* dst = find_entity(target_id);
  if (!dst) {
    throw Error(Errc::unknown_entity,
                "no entity with id \"" + target_id + "\"");
  }
  const RelationTypeDef* def = nullptr;
  try {
    def = &lookup_relation(schema_, verb, src->type_code, dst->type_code);
  } catch (const Error& e) {
    throw Error(Errc::unknown_relation, e.what());
  }
  if (def->guard && !attr_bool(*src, *def->guard)) {
    throw Error(Errc::guard_violation,
                "relation '" + verb + "' requires attribute " + *def->guard +
                    " to be true on source \"" + source_id + "\"");
  }
  const Tense effective = tense.value_or(date ? Tense::past : Tense::ongoing);
  if (date && effective == Tense::ongoing) {
    throw Error(Errc::tense_date_conflict,
                "a dated relation must use past tense: " + verb + " at " +
                    date->to_string());
  }
  Relation candidate{source_id, verb, target_id, effective, date};
  if (std::find(relations_.begin(), relations_.end(), candidate) !=
      relations_.end()) {
    throw Error(Errc::duplicate_relation,
                "duplicate relation " + relation_label(candidate));
  }
  relations_.push_back(std::move(candidate));
  return relations_.back();
}

ValidationReport ScenarioGraph::validate() const { return validate_graph(*this); }

bool ScenarioGraph::operator==(const ScenarioGraph& other) const {
  return name_ == other.name_ && schema_.id() == other.schema_.id() &&
         schema_equivalent(schema_, other.schema_) &&
         entities_ == other.entities_ && relations_ == other.relations_;
}

ValidationReport validate_graph(const ScenarioGraph& g) {
  ValidationReport report;
  auto add = [&](Violation::Severity sev, std::string code, std::string message,
                 std::string location) {
    report.violations.push_back(Violation{sev, std::move(code),
                                          std::move(message),
                                          std::move(location)});
  };
  auto error = [&](std::string code, std::string message, std::string location) {
    add(Violation::Severity::error, std::move(code), std::move(message),
        std::move(location));
  };

  const Schema& schema = g.schema();

  for (const auto& [id, entity] : g.entities()) {
    if (!id_is_wellformed(id)) {
      error("invalid-id", "entity id must be non-empty and single-line", id);
    }
    const EntityTypeDef* type = schema.find_entity_type(entity.type_code);
    if (!type) {
      error("unknown-type",
            "entity type " + entity.type_code + " is not declared", id);
      continue;
    }
    for (const auto& [name, value] : entity.attrs) {
      const AttributeDef* def = type->find_attribute(name);
      if (!def) {
        error("unknown-attribute",
              "entity type " + entity.type_code + " declares no attribute '" +
                  name + "'",
              id);
        continue;
      }
      const bool is_bool = std::holds_alternative<bool>(value);
      if (is_bool != (def->kind == AttrKind::boolean)) {
        error("attribute-kind-mismatch",
              "attribute '" + name + "' has kind " + attr_kind_name(def->kind),
              id);
      }
      if (!value_is_wellformed(value)) {
        error("invalid-id", "attribute '" + name + "' value must be single-line", id);
      }
    }
  }

  for (std::size_t i = 0; i < g.relations().size(); ++i) {
    const Relation& r = g.relations()[i];
    const std::string where = relation_label(r);
    const Entity* src = g.find_entity(r.source_id);
    const Entity* dst = g.find_entity(r.target_id);
    if (!src) error("unknown-entity", "source entity does not exist", where);
    if (!dst) error("unknown-entity", "target entity does not exist", where);
    if (!src || !dst) continue;
    const RelationTypeDef* def =
        schema.find_relation(r.verb, src->type_code, dst->type_code);
    if (!def) {
      error("unknown-relation",
            "no catalog entry " + r.verb + ": " + src->type_code + " -> " +
                dst->type_code,
            where);
      continue;
    }
    if (def->guard && !g.attr_bool(*src, *def->guard)) {
      error("guard-violation",
            "guard " + *def->guard + " is false on source \"" + r.source_id + "\"",
            where);
    }
    if (r.date && r.tense == Tense::ongoing) {
      error("tense-date-conflict", "a dated relation must use past tense", where);
    }
    for (std::size_t j = i + 1; j < g.relations().size(); ++j) {
      if (g.relations()[j] == r) {
        error("duplicate-relation", "relation appears more than once", where);
        break;
      }
    }
  }

  // Ecosystem smells are warnings, not errors: an unchecked news item is a
  // phenomenon worth surfacing, not invalid data.
  for (const auto& [id, entity] : g.entities()) {
    if (entity.type_code == "N" || entity.type_code == "UGC") {
      const bool checked = std::any_of(
          g.relations().begin(), g.relations().end(), [&](const Relation& r) {
            return r.verb == "fact_checked" && r.target_id == id;
          });
      if (!checked) {
        add(Violation::Severity::warning, "uncovered-item",
            "no incoming fact_checked relation", id);
      }
    }
    if (entity.type_code == "AC" && g.attr_bool(entity, "is_false")) {
      const bool created_content = std::any_of(
          g.relations().begin(), g.relations().end(), [&](const Relation& r) {
            if (r.verb != "created" || r.source_id != id) return false;
            const Entity* target = g.find_entity(r.target_id);
            return target && target->type_code == "UGC";
          });
      if (created_content) {
        add(Violation::Severity::warning, "fake-account-content",
            "content created by an account flagged is_false", id);
      }
    }
  }

  return report;
}

std::string to_json(const ScenarioGraph& g) {
  ordered_json doc;
  doc["format"] = "fisheco-graph/1";
  doc["name"] = g.name();
  doc["schema"] = g.schema().id();
  doc["entities"] = ordered_json::array();
  for (const auto& [id, entity] : g.entities()) {
    ordered_json e;
    e["id"] = id;
    e["type"] = entity.type_code;
    e["attrs"] = ordered_json::object();
    for (const auto& [name, value] : entity.attrs) {
      e["attrs"][name] = attr_value_to_json(value);
    }
    doc["entities"].push_back(std::move(e));
  }
  doc["relations"] = ordered_json::array();
  for (const Relation& r : g.relations()) {
    ordered_json e;
    e["src"] = r.source_id;
    e["verb"] = r.verb;
    e["dst"] = r.target_id;
    e["tense"] = tense_name(r.tense);
    if (r.date) e["date"] = r.date->to_string();
    doc["relations"].push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

ScenarioGraph from_json(std::string_view text, const Schema& schema) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::malformed_document, std::string("invalid JSON: ") + e.what());
  }
  auto require = [&](bool ok, const std::string& message) {
    if (!ok) throw Error(Errc::malformed_document, message);
  };
  require(doc.is_object(), "document root must be an object");
  require(doc.value("format", "") == "fisheco-graph/1",
          "unsupported format marker (want fisheco-graph/1)");
  require(doc.contains("name") && doc["name"].is_string(), "missing name");
  require(doc.contains("schema") && doc["schema"].is_string(), "missing schema");
  require(doc.contains("entities") && doc["entities"].is_array(),
          "missing entities array");
  require(doc.contains("relations") && doc["relations"].is_array(),
          "missing relations array");

  if (doc["schema"].get<std::string>() != schema.id()) {
    throw Error(Errc::schema_mismatch,
                "document targets schema " + doc["schema"].get<std::string>() +
                    ", not " + schema.id());
  }

  ScenarioGraph g(doc["name"].get<std::string>(), schema);
  for (const auto& e : doc["entities"]) {
    require(e.is_object() && e.contains("id") && e["id"].is_string() &&
                e.contains("type") && e["type"].is_string(),
            "entity entries need string id and type");
    Entity entity;
    entity.id = e["id"].get<std::string>();
    entity.type_code = e["type"].get<std::string>();
    require(!entity.id.empty(), "entity id must be non-empty");
    if (!schema.find_entity_type(entity.type_code)) {
      throw Error(Errc::schema_mismatch, "unknown entity type code " +
                                             entity.type_code + " for \"" +
                                             entity.id + "\"");
    }
    if (e.contains("attrs")) {
      require(e["attrs"].is_object(), "attrs must be an object");
      for (const auto& [name, value] : e["attrs"].items()) {
        if (value.is_boolean()) {
          entity.attrs[name] = value.get<bool>();
        } else if (value.is_string()) {
          entity.attrs[name] = value.get<std::string>();
        } else {
          throw Error(Errc::malformed_document,
                      "attribute '" + name + "' must be boolean or string");
        }
      }
    }
    if (g.entities_.count(entity.id)) {
      throw Error(Errc::duplicate_id,
                  "entity id \"" + entity.id + "\" appears twice");
    }
    g.entities_.emplace(entity.id, std::move(entity));
  }

  for (const auto& e : doc["relations"]) {
    require(e.is_object() && e.contains("src") && e["src"].is_string() &&
                e.contains("verb") && e["verb"].is_string() &&
                e.contains("dst") && e["dst"].is_string(),
            "relation entries need string src, verb and dst");
    Relation r;
    r.source_id = e["src"].get<std::string>();
    r.verb = e["verb"].get<std::string>();
    r.target_id = e["dst"].get<std::string>();
    if (!schema.has_verb(r.verb)) {
      throw Error(Errc::schema_mismatch, "unknown verb '" + r.verb + "'");
    }
    if (!g.entities_.count(r.source_id)) {
      throw Error(Errc::unknown_entity,
                  "relation source \"" + r.source_id + "\" is not declared");
    }
    if (!g.entities_.count(r.target_id)) {
      throw Error(Errc::unknown_entity,
                  "relation target \"" + r.target_id + "\" is not declared");
    }
    std::string tense = e.value("tense", "ongoing");
    auto parsed_tense = tense_from_string(tense);
    require(parsed_tense.has_value(), "tense must be past or ongoing");
    r.tense = *parsed_tense;
    if (e.contains("date")) {
      require(e["date"].is_string(), "date must be a string");
      auto date = Date::parse(e["date"].get<std::string>());
      require(date.has_value(), "date must be a valid YYYY-MM-DD");
      r.date = *date;
    }
    g.relations_.push_back(std::move(r));
  }

  return g;
}

}  // namespace fisheco
