#include "fisheco/schema.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace fisheco {

namespace {

bool is_upper_snake(std::string_view s) {
  if (s.empty() || s[0] < 'A' || s[0] > 'Z') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || c == '_';
  });
}

bool is_lower_snake(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || c == '_';
  });
}

bool value_matches_kind(const AttrValue& value, AttrKind kind) {
  return (kind == AttrKind::boolean) == std::holds_alternative<bool>(value);
}

auto relation_key(const RelationTypeDef& r) {
  return std::tie(r.verb, r.source_type, r.target_type);
}

}  // namespace

bool is_type_code(std::string_view s) { return is_upper_snake(s); }
bool is_identifier(std::string_view s) { return is_lower_snake(s); }

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::usage: return "usage";
    case Errc::not_found: return "not-found";
    case Errc::merge_conflict: return "merge-conflict";
    case Errc::invalid_schema: return "invalid-schema";
    case Errc::invalid_id: return "invalid-id";
    case Errc::duplicate_id: return "duplicate-id";
    case Errc::unknown_type: return "unknown-type";
    case Errc::unknown_attribute: return "unknown-attribute";
    case Errc::attribute_kind_mismatch: return "attribute-kind-mismatch";
    case Errc::unknown_entity: return "unknown-entity";
    case Errc::unknown_relation: return "unknown-relation";
    case Errc::guard_violation: return "guard-violation";
    case Errc::duplicate_relation: return "duplicate-relation";
    case Errc::tense_date_conflict: return "tense-date-conflict";
    case Errc::malformed_document: return "malformed-document";
    case Errc::schema_mismatch: return "schema-mismatch";
    case Errc::unknown_fixture: return "unknown-fixture";
    case Errc::invalid_pattern: return "invalid-pattern";
    case Errc::bad_params: return "bad-params";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

const char* colour_class_name(ColourClass c) {
  switch (c) {
    case ColourClass::information: return "information";
    case ColourClass::document_resource: return "document_resource";
    case ColourClass::anchor: return "anchor";
    case ColourClass::plain: return "plain";
  }
  return "plain";
}

const char* attr_kind_name(AttrKind k) {
  return k == AttrKind::boolean ? "boolean" : "string";
}

const char* edge_class_name(EdgeClass e) {
  switch (e) {
    case EdgeClass::fact_check: return "fact_check";
    case EdgeClass::regulate: return "regulate";
    case EdgeClass::plain: return "plain";
  }
  return "plain";
}

EdgeClass edge_class_for_verb(std::string_view verb) {
  if (verb == "fact_checked") return EdgeClass::fact_check;
  if (verb == "regulates") return EdgeClass::regulate;
  return EdgeClass::plain;
}

RelationTypeDef make_relation(std::string verb, std::string source_type,
                              std::string target_type,
                              std::optional<std::string> guard) {
  RelationTypeDef def;
  def.edge_class = edge_class_for_verb(verb);
  def.verb = std::move(verb);
  def.source_type = std::move(source_type);
  def.target_type = std::move(target_type);
  def.guard = std::move(guard);
  return def;
}

const AttributeDef* EntityTypeDef::find_attribute(
    std::string_view attr_name) const {
  for (const auto& a : attributes) {
    if (a.name == attr_name) return &a;
  }
  return nullptr;
}

bool ValidationReport::valid() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [](const Violation& v) {
        return v.severity == Violation::Severity::error;
      }));
}

std::size_t ValidationReport::warning_count() const {
  return violations.size() - error_count();
}

std::optional<Model> model_from_string(std::string_view name) {
  if (name == "A") return Model::A;
  if (name == "B") return Model::B;
  return {};
}

Schema::Schema(std::string id, std::vector<EntityTypeDef> entity_types,
               std::vector<RelationTypeDef> relation_types)
    : id_(std::move(id)),
      entity_types_(std::move(entity_types)),
      relation_types_(std::move(relation_types)) {
  std::stable_sort(entity_types_.begin(), entity_types_.end(),
                   [](const auto& a, const auto& b) { return a.code < b.code; });
  for (auto& et : entity_types_) {
    std::stable_sort(et.attributes.begin(), et.attributes.end(),
                     [](const auto& a, const auto& b) { return a.name < b.name; });
  }
  std::stable_sort(relation_types_.begin(), relation_types_.end(),
                   [](const auto& a, const auto& b) {
                     return relation_key(a) < relation_key(b);
                   });
}

const EntityTypeDef* Schema::find_entity_type(std::string_view code) const {
  for (const auto& et : entity_types_) {
    if (et.code == code) return &et;
  }
  return nullptr;
}

const RelationTypeDef* Schema::find_relation(std::string_view verb,
                                             std::string_view source_code,
                                             std::string_view target_code) const {
  for (const auto& r : relation_types_) {
    if (r.verb == verb && r.source_type == source_code &&
        r.target_type == target_code) {
      return &r;
    }
  }
  return nullptr;
}

std::vector<const RelationTypeDef*> Schema::relations_with_verb(
    std::string_view verb) const {
  std::vector<const RelationTypeDef*> out;
  for (const auto& r : relation_types_) {
    if (r.verb == verb) out.push_back(&r);
  }
  return out;
}

bool Schema::has_verb(std::string_view verb) const {
  return std::any_of(relation_types_.begin(), relation_types_.end(),
                     [&](const auto& r) { return r.verb == verb; });
}

bool schema_equivalent(const Schema& a, const Schema& b) {
  return a.entity_types() == b.entity_types() &&
         a.relation_types() == b.relation_types();
}

namespace {

using Attrs = std::vector<AttributeDef>;

AttributeDef battr(std::string name) {
  return AttributeDef{std::move(name), AttrKind::boolean, {}};
}

EntityTypeDef etype(std::string code, std::string name, ColourClass colour,
                    Attrs attrs = {}) {
  return EntityTypeDef{std::move(code), std::move(name), colour,
                       std::move(attrs)};
}

// Model A: the traditional media outlet ecosystem. 17 entity types.
Schema build_schema_a() {
  std::vector<EntityTypeDef> types = {
      etype("L", "Law", ColourClass::document_resource),
      etype("RL", "Regulation", ColourClass::document_resource),
      etype("C", "Comments", ColourClass::information),
      etype("FCR", "Fact-check report", ColourClass::information),
      etype("P", "Person", ColourClass::anchor,
            {battr("is_journalist"), battr("fact_checking")}),
      etype("JA", "Journalist association", ColourClass::plain),
      etype("ND", "News draft", ColourClass::information),
      etype("N", "News", ColourClass::information),
      etype("MO", "Media outlet", ColourClass::plain),
      etype("MOA", "Media outlet association", ColourClass::plain),
      etype("FO", "Fact-checking outlet", ColourClass::anchor),
      etype("FA", "Fact-checking association", ColourClass::anchor),
      etype("O", "Organisation", ColourClass::anchor, {battr("news_reporting")}),
      etype("RCL", "Region/Country/Local", ColourClass::anchor),
      etype("R", "Regulator", ColourClass::anchor, {battr("fact_checking")}),
      etype("STD", "Standards/Guidelines", ColourClass::document_resource),
      etype("SR", "Services & Resources", ColourClass::document_resource),
  };

  std::vector<RelationTypeDef> rels;
  auto rel = [&](std::string verb, std::string src, std::string dst,
                 std::optional<std::string> guard = {}) {
    rels.push_back(make_relation(std::move(verb), std::move(src),
                                 std::move(dst), std::move(guard)));
  };

  // Membership, funding and control.
  rel("belongs_to", "P", "JA");
  rel("belongs_to", "P", "FO");
  rel("belongs_to", "P", "FA");
  rel("belongs_to", "P", "MO");
  rel("belongs_to", "FO", "FA");
  rel("belongs_to", "JA", "FA");
  rel("belongs_to", "MO", "MOA");
  rel("belongs_to", "JA", "O");
  rel("belongs_to", "JA", "RCL");
  rel("belongs_to", "FO", "O");
  rel("belongs_to", "FO", "RCL");
  rel("belongs_to", "MO", "O");
  rel("belongs_to", "MO", "RCL");
  rel("belongs_to", "R", "O");
  rel("belongs_to", "O", "O");
  // Information generation.
  rel("created", "P", "ND");
  rel("reviewed", "MO", "ND");
  rel("published", "MO", "N");
  rel("published", "P", "N");
  rel("published", "O", "N", "news_reporting");
  rel("published", "P", "C");
  rel("revised", "MO", "N");
  rel("revised", "P", "N");
  rel("consumed", "P", "N");
  rel("consumed", "P", "C");
  rel("about", "C", "N");
  // Fact-checking.
  rel("fact_checked", "P", "N", "fact_checking");
  rel("fact_checked", "FO", "N");
  rel("fact_checked", "MO", "N");
  rel("fact_checked", "R", "N", "fact_checking");
  rel("published", "P", "FCR");
  rel("published", "FO", "FCR");
  rel("reports_on", "FCR", "N");
  rel("consumed", "P", "FCR");
  // Services and resources.
  rel("created", "FA", "SR");
  rel("created", "FO", "SR");
  rel("created", "R", "SR");
  rel("created", "JA", "SR");
  rel("consumed", "P", "SR");
  rel("consumed", "MO", "SR");
  rel("consumed", "FO", "SR");
  rel("consumed", "FA", "SR");
  // Standards and guidelines.
  rel("created", "JA", "STD");
  rel("created", "FA", "STD");
  rel("created", "MOA", "STD");
  rel("created", "O", "STD");
  rel("created", "R", "STD");
  rel("created", "MO", "STD");
  rel("follows", "P", "STD");
  rel("follows", "JA", "STD");
  rel("follows", "MO", "STD");
  rel("follows", "FO", "STD");
  rel("follows", "FA", "STD");
  rel("follows", "MOA", "STD");
  rel("follows", "O", "STD");
  // Regulation.
  rel("implements", "R", "RL");
  rel("implements", "R", "L");
  rel("implements", "R", "STD");
  rel("implements", "RL", "L");
  rel("regulates", "R", "MOA");
  rel("regulates", "R", "MO");
  rel("regulates", "R", "O");
  rel("regulates", "R", "FO");
  rel("regulates", "R", "JA");

  return Schema("A", std::move(types), std::move(rels));
}

// Model B: the user-generated content ecosystem. 12 entity types, six of
// them (RCL, R, O, P, FO, FA) shared with model A as anchors.
Schema build_schema_b() {
  std::vector<EntityTypeDef> types = {
      etype("RCL", "Region/Country/Local", ColourClass::anchor),
      etype("R", "Regulator", ColourClass::anchor),
      etype("O", "Organisation", ColourClass::anchor),
      etype("P", "Person", ColourClass::anchor, {battr("fact_checking")}),
      etype("FO", "Fact-checking outlet", ColourClass::anchor),
      etype("FA", "Fact-checking association", ColourClass::anchor),
      etype("UGC", "User generated content", ColourClass::information),
      etype("AC", "Account", ColourClass::plain,
            {battr("fact_checking"), battr("is_false")}),
      etype("S", "Service", ColourClass::plain),
      etype("SP", "Service provider", ColourClass::plain),
      etype("SOC", "Social group", ColourClass::plain),
      etype("OG", "Online group", ColourClass::plain),
  };

  std::vector<RelationTypeDef> rels;
  auto rel = [&](std::string verb, std::string src, std::string dst,
                 std::optional<std::string> guard = {}) {
    rels.push_back(make_relation(std::move(verb), std::move(src),
                                 std::move(dst), std::move(guard)));
  };

  rel("owns", "P", "AC");
  rel("uses", "P", "AC");
  rel("created", "AC", "UGC");
  rel("created", "AC", "OG");
  rel("manages", "AC", "OG");
  rel("belongs_to", "AC", "S");
  rel("belongs_to", "AC", "OG");
  rel("belongs_to", "P", "SOC");
  rel("belongs_to", "P", "O");
  rel("belongs_to", "FO", "RCL");
  rel("belongs_to", "FO", "O");
  rel("consumed", "AC", "UGC");
  rel("comments", "AC", "UGC");
  rel("provides", "SP", "S");
  rel("fact_checked", "AC", "UGC", "fact_checking");
  rel("fact_checked", "P", "UGC", "fact_checking");
  rel("fact_checked", "FO", "UGC");
  rel("regulates", "R", "SP");
  rel("regulates", "R", "O");
  rel("regulates", "R", "FO");

  return Schema("B", std::move(types), std::move(rels));
}

Schema build_merged() {
  Schema merged = merge_schemas(builtin_schema(Model::A), builtin_schema(Model::B));
  std::vector<EntityTypeDef> types = merged.entity_types();
  std::vector<RelationTypeDef> rels = merged.relation_types();
  // Cross-model relations that need both vocabularies in scope.
  rels.push_back(make_relation("suspended", "SP", "AC"));
  rels.push_back(make_relation("created", "SP", "STD"));
  rels.push_back(make_relation("reports_on", "FCR", "UGC"));
  return Schema("merged", std::move(types), std::move(rels));
}

}  // namespace

const Schema& builtin_schema(Model model) {
  static const Schema a = build_schema_a();
  static const Schema b = build_schema_b();
  return model == Model::A ? a : b;
}

const Schema& builtin_merged() {
  static const Schema merged = build_merged();
  return merged;
}

const Schema* find_builtin(std::string_view name) {
  if (name == "A") return &builtin_schema(Model::A);
  if (name == "B") return &builtin_schema(Model::B);
  if (name == "merged") return &builtin_merged();
  return nullptr;
}

Schema merge_schemas(const Schema& a, const Schema& b) {
  if (!validate_schema(a).valid() || !validate_schema(b).valid()) {
    throw Error(Errc::invalid_schema,
                "merge_schemas requires individually valid schemas");
  }

  std::vector<EntityTypeDef> types = a.entity_types();
  for (const auto& bt : b.entity_types()) {
    auto it = std::find_if(types.begin(), types.end(),
                           [&](const auto& t) { return t.code == bt.code; });
    if (it == types.end()) {
      types.push_back(bt);
      continue;
    }
    if (it->colour != bt.colour) {
      throw Error(Errc::merge_conflict,
                  "merge conflict on entity type " + bt.code +
                      ": colour classes differ");
    }
    if (it->name != bt.name) it->name = std::min(it->name, bt.name);
    for (const auto& attr : bt.attributes) {
      const AttributeDef* existing = it->find_attribute(attr.name);
      if (!existing) {
        it->attributes.push_back(attr);
      } else if (existing->kind != attr.kind) {
        throw Error(Errc::merge_conflict,
                    "merge conflict on entity type " + bt.code +
                        ": attribute " + attr.name + " has conflicting kinds");
      } else if (existing->default_value != attr.default_value) {
        throw Error(Errc::merge_conflict,
                    "merge conflict on entity type " + bt.code +
                        ": attribute " + attr.name +
                        " has conflicting defaults");
      }
    }
  }

  std::vector<RelationTypeDef> rels = a.relation_types();
  for (const auto& br : b.relation_types()) {
    auto it = std::find_if(rels.begin(), rels.end(), [&](const auto& r) {
      return relation_key(r) == relation_key(br);
    });
    if (it == rels.end()) {
      rels.push_back(br);
    } else if (it->guard != br.guard) {
      throw Error(Errc::merge_conflict,
                  "merge conflict on relation " + br.verb + ": " +
                      br.source_type + " -> " + br.target_type +
                      ": guards differ");
    }
  }

  return Schema("custom", std::move(types), std::move(rels));
}

ValidationReport validate_schema(const Schema& schema) {
  ValidationReport report;
  auto error = [&](std::string code, std::string message,
                   std::optional<std::string> location = {}) {
    report.violations.push_back(Violation{Violation::Severity::error,
                                          std::move(code), std::move(message),
                                          std::move(location)});
  };

  static const std::set<std::string, std::less<>> kInformation = {
      "N", "ND", "C", "FCR", "UGC"};
  static const std::set<std::string, std::less<>> kDocuments = {"L", "RL",
                                                                "STD", "SR"};
  static const std::set<std::string, std::less<>> kAnchors = {
      "RCL", "R", "O", "P", "FO", "FA"};

  std::set<std::string> seen_codes;
  for (const auto& et : schema.entity_types()) {
    if (!is_upper_snake(et.code)) {
      error("bad-code", "entity type code '" + et.code +
                            "' must match [A-Z][A-Z_]*", et.code);
    }
    if (!seen_codes.insert(et.code).second) {
      error("duplicate-code", "duplicate entity type code " + et.code, et.code);
    }
    if (et.colour == ColourClass::information && !kInformation.count(et.code)) {
      error("bad-colour",
            "colour class information is reserved for N, ND, C, FCR, UGC",
            et.code);
    }
    if (et.colour == ColourClass::document_resource && !kDocuments.count(et.code)) {
      error("bad-colour",
            "colour class document_resource is reserved for L, RL, STD, SR",
            et.code);
    }
    if (et.colour == ColourClass::anchor && !kAnchors.count(et.code)) {
      error("bad-colour",
            "colour class anchor is reserved for the six shared types",
            et.code);
    }
    std::set<std::string> seen_attrs;
    for (const auto& attr : et.attributes) {
      if (!is_lower_snake(attr.name)) {
        error("bad-attribute-name", "attribute name '" + attr.name +
                                        "' must match [a-z][a-z_]*", et.code);
      }
      if (!seen_attrs.insert(attr.name).second) {
        error("duplicate-attribute",
              "attribute " + attr.name + " declared twice on " + et.code,
              et.code);
      }
      if (attr.default_value && !value_matches_kind(*attr.default_value, attr.kind)) {
        error("bad-default", "default of attribute " + attr.name + " on " +
                                 et.code + " does not match its kind", et.code);
      }
    }
  }

  std::set<std::tuple<std::string, std::string, std::string>> seen_triples;
  for (const auto& r : schema.relation_types()) {
    const std::string where = r.verb + ": " + r.source_type + " -> " + r.target_type;
    if (!is_lower_snake(r.verb)) {
      error("bad-verb", "verb '" + r.verb + "' must match [a-z][a-z_]*", where);
    }
    if (!seen_triples.insert({r.verb, r.source_type, r.target_type}).second) {
      error("duplicate-relation-type", "duplicate relation " + where, where);
    }
    const EntityTypeDef* src = schema.find_entity_type(r.source_type);
    const EntityTypeDef* dst = schema.find_entity_type(r.target_type);
    if (!src) {
      error("dangling-endpoint",
            "relation " + where + " names undeclared source type " + r.source_type,
            where);
    }
    if (!dst) {
      error("dangling-endpoint",
            "relation " + where + " names undeclared target type " + r.target_type,
            where);
    }
    if (r.edge_class != edge_class_for_verb(r.verb)) {
      error("bad-edge-class",
            "edge class of " + where + " must be " +
                edge_class_name(edge_class_for_verb(r.verb)),
            where);
    }
    if (r.guard) {
      const AttributeDef* attr = src ? src->find_attribute(*r.guard) : nullptr;
      if (src && !attr) {
        error("guard-undeclared", "guard " + *r.guard + " of " + where +
                                      " is not declared on " + r.source_type,
              where);
      } else if (attr && attr->kind != AttrKind::boolean) {
        error("guard-not-boolean", "guard must be boolean: " + *r.guard +
                                       " on " + where + " is a string attribute",
              where);
      }
    }
  }

  struct Expected { const char* id; std::size_t count; };
  for (const Expected& e : {Expected{"A", 17}, Expected{"B", 12}, Expected{"merged", 23}}) {
    if (schema.id() == e.id && schema.entity_types().size() != e.count) {
      error("bad-cardinality",
            "schema " + schema.id() + " must declare exactly " +
                std::to_string(e.count) + " entity types, found " +
                std::to_string(schema.entity_types().size()));
    }
  }

  return report;
}

const RelationTypeDef& lookup_relation(const Schema& schema,
                                       std::string_view verb,
                                       std::string_view source_code,
                                       std::string_view target_code) {
  if (const RelationTypeDef* def =
          schema.find_relation(verb, source_code, target_code)) {
    return *def;
  }
  std::ostringstream msg;
  msg << "no relation '" << verb << "' from " << source_code << " to "
      << target_code << " in schema " << schema.id();
  auto near = schema.relations_with_verb(verb);
  if (near.empty()) {
    msg << "; verb is not in the catalog";
  } else {
    msg << "; near misses with the same verb:";
    for (const auto* r : near) {
      msg << " (" << r->source_type << " -> " << r->target_type << ")";
    }
  }
  throw Error(Errc::not_found, msg.str());
}

}  // namespace fisheco
