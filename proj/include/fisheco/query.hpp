#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fisheco/graph.hpp"

namespace fisheco {

struct NodeVar {
  std::string name;
  std::optional<std::string> type_code;
  std::map<std::string, AttrValue> attr_constraints;

  bool operator==(const NodeVar&) const = default;
};

struct EdgeConstraint {
  std::string source_var;
  std::string verb;  // "*" matches any verb
  std::string target_var;
  std::optional<Tense> tense;

  bool operator==(const EdgeConstraint&) const = default;
};

struct Pattern {
  std::vector<NodeVar> node_vars;
  std::vector<EdgeConstraint> edge_constraints;
};

// Total assignment of pattern variables to entity ids.
using Binding = std::map<std::string, std::string>;

// Inline pattern expression, e.g. "x:FO, y:N; x-fact_checked->y@past".
// Nodes are VAR[:TYPE[{attr=value,...}]]; edges VAR-(VERB|*)->VAR[@tense].
Pattern parse_pattern(std::string_view text, const Schema& schema);

// Exactly the injective bindings satisfying every node and edge constraint,
// ordered lexicographically by bound ids in variable order.
std::vector<Binding> match_pattern(const ScenarioGraph& g, const Pattern& p);

struct FactCheckEvent {
  std::string checker_id;
  std::string checker_type;
  Tense tense = Tense::past;
  std::optional<Date> date;
  std::optional<std::string> report_id;

  bool operator==(const FactCheckEvent&) const = default;
};

// One row per incoming fact_checked edge, sorted by (date, checker id) with
// undated rows last. A row gains a report when some FCR reports_on the target
// and that report was published by the checker or by an organisation the
// checker belongs_to.
std::vector<FactCheckEvent> fact_check_events(const ScenarioGraph& g,
                                              std::string_view target_id);

// Distinct checker ids with a fact_checked edge into the target, sorted.
std::vector<std::string> co_fact_checkers(const ScenarioGraph& g,
                                          std::string_view target_id);

// All N and UGC entities without any incoming fact_checked edge, sorted.
std::vector<std::string> uncovered_items(const ScenarioGraph& g);

struct BackerPaths {
  std::string backer_id;
  std::vector<std::string> path_from_a;  // a ... backer, inclusive
  std::vector<std::string> path_from_b;

  bool operator==(const BackerPaths&) const = default;
};

// Pairs of belongs_to paths (1..max_depth edges, no repeated node within a
// path) from a and b that end at a common O or RCL entity.
std::vector<BackerPaths> shared_backer(const ScenarioGraph& g,
                                       std::string_view a_id,
                                       std::string_view b_id, int max_depth);

struct RegulationEntry {
  std::string regulator_id;
  Tense tense = Tense::ongoing;
  std::vector<std::string> instruments;  // L/RL entities the regulator implements

  bool operator==(const RegulationEntry&) const = default;
};

// One entry per regulates edge into the entity, sorted by (regulator, tense).
std::vector<RegulationEntry> regulation_chain(const ScenarioGraph& g,
                                              std::string_view entity_id);

}  // namespace fisheco
