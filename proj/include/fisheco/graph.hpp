#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fisheco/date.hpp"
#include "fisheco/schema.hpp"

namespace fisheco {

enum class Tense { past, ongoing };

const char* tense_name(Tense t);
std::optional<Tense> tense_from_string(std::string_view name);

struct Entity {
  std::string id;         // user-chosen label, unique within the graph
  std::string type_code;  // entity type from the schema
  std::map<std::string, AttrValue> attrs;  // explicitly set values only

  bool operator==(const Entity&) const = default;
};

struct Relation {
  std::string source_id;
  std::string verb;
  std::string target_id;
  Tense tense = Tense::ongoing;
  std::optional<Date> date;

  bool operator==(const Relation&) const = default;
};

// A concrete scenario instantiated against a schema. Mutators validate fully
// before committing, so a graph built through them always revalidates clean.
// Single writer at a time; concurrent readers are fine between mutations.
class ScenarioGraph {
 public:
  // Requires a schema that validates clean (Errc::invalid_schema otherwise).
  ScenarioGraph(std::string name, Schema schema);

  const std::string& name() const { return name_; }
  const Schema& schema() const { return schema_; }
  const std::map<std::string, Entity>& entities() const { return entities_; }
  const std::vector<Relation>& relations() const { return relations_; }

  const Entity* find_entity(std::string_view id) const;
  // Entity lookup that throws Errc::unknown_entity.
  const Entity& entity(std::string_view id) const;

  // Explicit value if set, else the schema default for that attribute.
  std::optional<AttrValue> attr_or_default(const Entity& e,
                                           std::string_view attr_name) const;
  // Boolean attributes fall back to false when unset and no default exists.
  bool attr_bool(const Entity& e, std::string_view attr_name) const;

  const Entity& add_entity(const std::string& type_code, const std::string& id,
                           std::map<std::string, AttrValue> attrs = {});

  // Tense defaults to past when a date is given, ongoing otherwise. A dated
  // relation must be past tense.
  const Relation& add_relation(const std::string& source_id,
                               const std::string& verb,
                               const std::string& target_id,
                               std::optional<Tense> tense = {},
                               std::optional<Date> date = {});

  // Re-checks every entity/relation invariant (defense against deserialized
  // input) and reports ecosystem smells as warnings.
  ValidationReport validate() const;

  bool operator==(const ScenarioGraph&) const;

 private:
  friend ScenarioGraph from_json(std::string_view, const Schema&);

  std::string name_;
  Schema schema_;
  std::map<std::string, Entity> entities_;  // keyed by id
  std::vector<Relation> relations_;         // insertion order
};

ValidationReport validate_graph(const ScenarioGraph& g);

// Deterministic "fisheco-graph/1" document: entities sorted by id, relations
// in insertion order, fixed key order, UTF-8.
std::string to_json(const ScenarioGraph& g);

// Accepts any structurally sound document whose vocabulary resolves against
// the given schema; semantic breaches (guards, duplicate relations, bad
// attribute values) are left for validate_graph to report.
ScenarioGraph from_json(std::string_view text, const Schema& schema);

}  // namespace fisheco
