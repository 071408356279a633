#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fisheco/error.hpp"

namespace fisheco {

// Colour classes of the two ecosystem models: yellow information items,
// green document/resource items, light-green anchor types shared by both
// models, white for everything else.
enum class ColourClass { information, document_resource, anchor, plain };

enum class AttrKind { boolean, string };

enum class EdgeClass { fact_check, regulate, plain };

using AttrValue = std::variant<bool, std::string>;

const char* colour_class_name(ColourClass c);
const char* attr_kind_name(AttrKind k);
const char* edge_class_name(EdgeClass e);

bool is_type_code(std::string_view s);   // [A-Z][A-Z_]*
bool is_identifier(std::string_view s);  // [a-z][a-z_]*

struct AttributeDef {
  std::string name;  // [a-z][a-z_]*
  AttrKind kind = AttrKind::boolean;
  std::optional<AttrValue> default_value;

  bool operator==(const AttributeDef&) const = default;
};

struct EntityTypeDef {
  std::string code;  // [A-Z][A-Z_]*, unique within a schema
  std::string name;
  ColourClass colour = ColourClass::plain;
  std::vector<AttributeDef> attributes;  // sorted by name

  const AttributeDef* find_attribute(std::string_view attr_name) const;

  bool operator==(const EntityTypeDef&) const = default;
};

struct RelationTypeDef {
  std::string verb;  // lower_snake
  std::string source_type;
  std::string target_type;
  EdgeClass edge_class = EdgeClass::plain;
  // Boolean attribute on the source type that must be true on instances.
  std::optional<std::string> guard;

  bool operator==(const RelationTypeDef&) const = default;
};

// edge_class is a function of the verb: fact_checked and regulates are the
// only non-plain classes.
EdgeClass edge_class_for_verb(std::string_view verb);

RelationTypeDef make_relation(std::string verb, std::string source_type,
                              std::string target_type,
                              std::optional<std::string> guard = {});

struct Violation {
  enum class Severity { error, warning };
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  std::optional<std::string> location;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const;  // no error-severity violations
  std::size_t error_count() const;
  std::size_t warning_count() const;
};

enum class Model { A, B };

std::optional<Model> model_from_string(std::string_view name);

// The typed vocabulary: entity types plus the relation catalog. Immutable by
// convention once constructed; safe to share read-only across threads.
class Schema {
 public:
  Schema() = default;
  Schema(std::string id, std::vector<EntityTypeDef> entity_types,
         std::vector<RelationTypeDef> relation_types);

  const std::string& id() const { return id_; }
  const std::vector<EntityTypeDef>& entity_types() const {
    return entity_types_;
  }
  const std::vector<RelationTypeDef>& relation_types() const {
    return relation_types_;
  }

  const EntityTypeDef* find_entity_type(std::string_view code) const;
  const RelationTypeDef* find_relation(std::string_view verb,
                                       std::string_view source_code,
                                       std::string_view target_code) const;
  // All catalog entries with the given verb, in (source, target) order.
  std::vector<const RelationTypeDef*> relations_with_verb(
      std::string_view verb) const;
  bool has_verb(std::string_view verb) const;

 private:
  std::string id_ = "custom";  // "A" | "B" | "merged" | "custom"
  std::vector<EntityTypeDef> entity_types_;    // sorted by code
  std::vector<RelationTypeDef> relation_types_;  // sorted by (verb, src, dst)
};

// True when both schemas declare the same entity-type and relation sets.
// The id label is not part of the comparison.
bool schema_equivalent(const Schema& a, const Schema& b);

// Canonical built-in schemas. A covers traditional media outlets (17 entity
// types), B covers user-generated content (12 entity types, 6 shared with A).
const Schema& builtin_schema(Model model);

// The merged model: union of A and B over the six anchor types, plus the
// handful of cross-model relations only expressible once both vocabularies
// are present (suspended, created SP->STD, reports_on FCR->UGC).
const Schema& builtin_merged();

// Resolves "A" | "B" | "merged" to the corresponding builtin.
const Schema* find_builtin(std::string_view name);

// Union of entity types and relation catalogs; entity types with equal code
// are identified and their attribute sets unioned. Throws Errc::merge_conflict
// when one code carries incompatible definitions.
Schema merge_schemas(const Schema& a, const Schema& b);

// Reports dangling endpoints, duplicate codes, malformed identifiers, guard
// problems and colour/cardinality rule breaches. Never throws.
ValidationReport validate_schema(const Schema& schema);

// Returns the unique catalog entry or throws Errc::not_found with the
// same-verb near misses listed in the message.
const RelationTypeDef& lookup_relation(const Schema& schema,
                                       std::string_view verb,
                                       std::string_view source_code,
                                       std::string_view target_code);

}  // namespace fisheco
