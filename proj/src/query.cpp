#include "fisheco/query.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace fisheco {

namespace {

void check_pattern(const Pattern& p, const Schema& schema) {
  std::set<std::string> vars;
  for (const NodeVar& v : p.node_vars) {
    if (v.name.empty()) {
      throw Error(Errc::invalid_pattern, "pattern variable names must be non-empty");
    }
    if (!vars.insert(v.name).second) {
      throw Error(Errc::invalid_pattern,
                  "pattern variable '" + v.name + "' declared twice");
    }
    if (v.type_code && !schema.find_entity_type(*v.type_code)) {
      throw Error(Errc::invalid_pattern,
                  "pattern names unknown entity type " + *v.type_code);
    }
  }
  for (const EdgeConstraint& e : p.edge_constraints) {
    if (!vars.count(e.source_var) || !vars.count(e.target_var)) {
      throw Error(Errc::invalid_pattern,
                  "edge constraint references undeclared variable '" +
                      (vars.count(e.source_var) ? e.target_var : e.source_var) +
                      "'");
    }
    if (e.verb != "*" && !schema.has_verb(e.verb)) {
      throw Error(Errc::invalid_pattern,
                  "pattern names unknown verb '" + e.verb + "'");
    }
  }
}

bool node_matches(const ScenarioGraph& g, const Entity& entity, const NodeVar& var) {
  if (var.type_code && entity.type_code != *var.type_code) return false;
  for (const auto& [name, want] : var.attr_constraints) {
    auto have = g.attr_or_default(entity, name);
    if (!have || *have != want) return false;
  }
  return true;
}

bool edge_matches(const ScenarioGraph& g, const std::string& source_id,
                  const EdgeConstraint& constraint, const std::string& target_id) {
  return std::any_of(g.relations().begin(), g.relations().end(),
                     [&](const Relation& r) {
                       return r.source_id == source_id && r.target_id == target_id &&
                              (constraint.verb == "*" || r.verb == constraint.verb) &&
                              (!constraint.tense || r.tense == *constraint.tense);
                     });
}

}  // namespace

Pattern parse_pattern(std::string_view text, const Schema& schema) {
  // nodes ';' edges, e.g. "x:FO, y:N; x-fact_checked->y@past".
  auto bad = [](const std::string& message) -> Error {
    return Error(Errc::invalid_pattern, "bad pattern: " + message);
  };
  auto trim = [](std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
  };
  // Split on a separator, but never inside quotes or braces.
  auto split = [&](std::string_view part, char sep) {
    std::vector<std::string> out;
    std::string current;
    bool quoted = false;
    int depth = 0;
    for (char c : part) {
      if (c == '"') quoted = !quoted;
      if (!quoted) {
        if (c == '{') ++depth;
        if (c == '}') --depth;
        if (c == sep && depth == 0) {
          out.push_back(trim(current));
          current.clear();
          continue;
        }
      }
      current.push_back(c);
    }
    out.push_back(trim(current));
    return out;
  };

  Pattern pattern;
  auto sections = split(text, ';');
  if (sections.empty() || sections.size() > 2) {
    throw bad("expected 'nodes' or 'nodes; edges'");
  }

  for (const std::string& node_text : split(sections[0], ',')) {
    if (node_text.empty()) throw bad("empty node declaration");
    NodeVar var;
    std::string rest = node_text;
    auto colon = rest.find(':');
    if (colon == std::string::npos) {
      var.name = trim(rest);
    } else {
      var.name = trim(rest.substr(0, colon));
      rest = trim(rest.substr(colon + 1));
      auto brace = rest.find('{');
      std::string type = trim(brace == std::string::npos ? rest : rest.substr(0, brace));
      if (type.empty()) throw bad("missing type code after ':'");
      var.type_code = type;
      if (brace != std::string::npos) {
        if (rest.back() != '}') throw bad("missing '}' in attribute constraints");
        std::string attrs = rest.substr(brace + 1, rest.size() - brace - 2);
        for (const std::string& item : split(attrs, ',')) {
          auto eq = item.find('=');
          if (eq == std::string::npos) throw bad("attribute constraints need name=value");
          std::string name = trim(item.substr(0, eq));
          std::string value = trim(item.substr(eq + 1));
          if (name.empty()) throw bad("attribute constraints need name=value");
          if (value == "true") {
            var.attr_constraints[name] = true;
          } else if (value == "false") {
            var.attr_constraints[name] = false;
          } else if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            var.attr_constraints[name] = value.substr(1, value.size() - 2);
          } else {
            throw bad("attribute value must be true, false or \"quoted\"");
          }
        }
      }
    }
    if (var.name.empty()) throw bad("missing variable name");
    pattern.node_vars.push_back(std::move(var));
  }

  if (sections.size() == 2 && !sections[1].empty()) {
    for (const std::string& edge_text : split(sections[1], ',')) {
      // VAR-(VERB|*)->VAR[@tense]
      auto dash = edge_text.find('-');
      auto arrow = edge_text.find("->", dash == std::string::npos ? 0 : dash + 1);
      if (dash == std::string::npos || arrow == std::string::npos || arrow <= dash) {
        throw bad("edges look like src-verb->dst: '" + edge_text + "'");
      }
      EdgeConstraint edge;
      edge.source_var = trim(edge_text.substr(0, dash));
      edge.verb = trim(edge_text.substr(dash + 1, arrow - dash - 1));
      std::string rest = trim(edge_text.substr(arrow + 2));
      auto at = rest.find('@');
      if (at != std::string::npos) {
        auto tense = tense_from_string(trim(rest.substr(at + 1)));
        if (!tense) throw bad("tense after '@' must be past or ongoing");
        edge.tense = tense;
        rest = trim(rest.substr(0, at));
      }
      edge.target_var = rest;
      if (edge.source_var.empty() || edge.verb.empty() || edge.target_var.empty()) {
        throw bad("edges look like src-verb->dst: '" + edge_text + "'");
      }
      pattern.edge_constraints.push_back(std::move(edge));
    }
  }

  check_pattern(pattern, schema);
  return pattern;
}

std::vector<Binding> match_pattern(const ScenarioGraph& g, const Pattern& p) {
  check_pattern(p, g.schema());

  std::vector<std::string> ids;
  ids.reserve(g.entities().size());
  for (const auto& [id, entity] : g.entities()) ids.push_back(id);

  std::vector<Binding> results;
  std::vector<std::string> assigned(p.node_vars.size());
  std::set<std::string> used;

  // Variables are bound in declaration order over ids in sorted order, so
  // results come out lexicographic by bound ids without a final sort.
  auto extend = [&](auto&& self, std::size_t var_index) -> void {
    if (var_index == p.node_vars.size()) {
      Binding binding;
      for (std::size_t i = 0; i < p.node_vars.size(); ++i) {
        binding[p.node_vars[i].name] = assigned[i];
      }
      results.push_back(std::move(binding));
      return;
    }
    const NodeVar& var = p.node_vars[var_index];
    for (const std::string& id : ids) {
      if (used.count(id)) continue;
      const Entity& entity = *g.find_entity(id);
      if (!node_matches(g, entity, var)) continue;
      // Check every edge constraint whose endpoints are both bound.
      assigned[var_index] = id;
      bool ok = true;
      for (const EdgeConstraint& e : p.edge_constraints) {
        const std::string *src = nullptr, *dst = nullptr;
        for (std::size_t i = 0; i <= var_index && (!src || !dst); ++i) {
          if (p.node_vars[i].name == e.source_var) src = &assigned[i];
          if (p.node_vars[i].name == e.target_var) dst = &assigned[i];
        }
        if (src && dst && !edge_matches(g, *src, e, *dst)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used.insert(id);
      self(self, var_index + 1);
      used.erase(id);
    }
  };
  extend(extend, 0);
  return results;
}

std::vector<FactCheckEvent> fact_check_events(const ScenarioGraph& g,
                                              std::string_view target_id) {
  const Entity& target = g.entity(target_id);

  // Candidate reports: FCRs with a reports_on edge into the target, keyed by
  // their publishers.
  struct Report {
    std::string id;
    std::vector<std::string> publishers;
  };
  std::vector<Report> reports;
  for (const Relation& r : g.relations()) {
    if (r.verb != "reports_on" || r.target_id != target.id) continue;
    Report report{r.source_id, {}};
    for (const Relation& pub : g.relations()) {
      if (pub.verb == "published" && pub.target_id == report.id) {
        report.publishers.push_back(pub.source_id);
      }
    }
    reports.push_back(std::move(report));
  }
  std::sort(reports.begin(), reports.end(),
            [](const Report& a, const Report& b) { return a.id < b.id; });

  auto find_report = [&](const std::string& checker) -> std::optional<std::string> {
    for (const Report& report : reports) {
      for (const std::string& publisher : report.publishers) {
        if (publisher == checker) return report.id;
        const bool member = std::any_of(
            g.relations().begin(), g.relations().end(), [&](const Relation& r) {
              return r.verb == "belongs_to" && r.source_id == checker &&
                     r.target_id == publisher;
            });
        if (member) return report.id;
      }
    }
    return {};
  };

  std::vector<FactCheckEvent> events;
  for (const Relation& r : g.relations()) {
    if (r.verb != "fact_checked" || r.target_id != target.id) continue;
    FactCheckEvent event;
    event.checker_id = r.source_id;
    event.checker_type = g.entity(r.source_id).type_code;
    event.tense = r.tense;
    event.date = r.date;
    event.report_id = find_report(event.checker_id);
    events.push_back(std::move(event));
  }
  std::sort(events.begin(), events.end(),
            [](const FactCheckEvent& a, const FactCheckEvent& b) {
              const bool a_dated = a.date.has_value();
              const bool b_dated = b.date.has_value();
              if (a_dated != b_dated) return a_dated;  // undated rows last
              if (a_dated && a.date != b.date) return *a.date < *b.date;
              return a.checker_id < b.checker_id;
            });
  return events;
}

std::vector<std::string> co_fact_checkers(const ScenarioGraph& g,
                                          std::string_view target_id) {
  const Entity& target = g.entity(target_id);
  std::set<std::string> checkers;
  for (const Relation& r : g.relations()) {
    if (r.verb == "fact_checked" && r.target_id == target.id) {
      checkers.insert(r.source_id);
    }
  }
  return {checkers.begin(), checkers.end()};
}

std::vector<std::string> uncovered_items(const ScenarioGraph& g) {
  std::vector<std::string> out;
  for (const auto& [id, entity] : g.entities()) {
    if (entity.type_code != "N" && entity.type_code != "UGC") continue;
    const bool checked = std::any_of(
        g.relations().begin(), g.relations().end(),
        [&](const Relation& r) { return r.verb == "fact_checked" && r.target_id == id; });
    if (!checked) out.push_back(id);
  }
  return out;  // map iteration keeps ids sorted
}

namespace {

// All belongs_to paths from start with 1..max_depth edges and no repeated
// node, ending at an O or RCL entity.
std::vector<std::vector<std::string>> backer_paths(const ScenarioGraph& g,
                                                   const std::string& start,
                                                   int max_depth) {
  std::vector<std::vector<std::string>> found;
  std::vector<std::string> path{start};

  auto walk = [&](auto&& self, const std::string& node, int depth) -> void {
    if (depth == max_depth) return;
    std::vector<std::string> nexts;
    for (const Relation& r : g.relations()) {
      if (r.verb == "belongs_to" && r.source_id == node) nexts.push_back(r.target_id);
    }
    std::sort(nexts.begin(), nexts.end());
    nexts.erase(std::unique(nexts.begin(), nexts.end()), nexts.end());
    for (const std::string& next : nexts) {
      if (std::find(path.begin(), path.end(), next) != path.end()) continue;
      path.push_back(next);
      const Entity* e = g.find_entity(next);
      if (e && (e->type_code == "O" || e->type_code == "RCL")) {
        found.push_back(path);
      }
      self(self, next, depth + 1);
      path.pop_back();
    }
  };
  walk(walk, start, 0);
  return found;
}

}  // namespace

std::vector<BackerPaths> shared_backer(const ScenarioGraph& g,
                                       std::string_view a_id,
                                       std::string_view b_id, int max_depth) {
  const Entity& a = g.entity(a_id);
  const Entity& b = g.entity(b_id);
  if (max_depth < 1) {
    throw Error(Errc::bad_params, "max_depth must be at least 1");
  }

  auto from_a = backer_paths(g, a.id, max_depth);
  auto from_b = backer_paths(g, b.id, max_depth);

  std::vector<BackerPaths> results;
  for (const auto& pa : from_a) {
    for (const auto& pb : from_b) {
      if (pa.back() == pb.back()) {
        results.push_back(BackerPaths{pa.back(), pa, pb});
      }
    }
  }
  std::sort(results.begin(), results.end(),
            [](const BackerPaths& x, const BackerPaths& y) {
              return std::tie(x.backer_id, x.path_from_a, x.path_from_b) <
                     std::tie(y.backer_id, y.path_from_a, y.path_from_b);
            });
  return results;
}

std::vector<RegulationEntry> regulation_chain(const ScenarioGraph& g,
                                              std::string_view entity_id) {
  const Entity& target = g.entity(entity_id);

  std::vector<RegulationEntry> entries;
  for (const Relation& r : g.relations()) {
    if (r.verb != "regulates" || r.target_id != target.id) continue;
    RegulationEntry entry;
    entry.regulator_id = r.source_id;
    entry.tense = r.tense;
    std::set<std::string> instruments;
    for (const Relation& impl : g.relations()) {
      if (impl.verb != "implements" || impl.source_id != entry.regulator_id) continue;
      const Entity* instrument = g.find_entity(impl.target_id);
      if (instrument && (instrument->type_code == "L" || instrument->type_code == "RL")) {
        instruments.insert(impl.target_id);
      }
    }
    entry.instruments.assign(instruments.begin(), instruments.end());
    entries.push_back(std::move(entry));
  }
  std::sort(entries.begin(), entries.end(),
            [](const RegulationEntry& a, const RegulationEntry& b) {
              return std::tie(a.regulator_id, a.tense) <
                     std::tie(b.regulator_id, b.tense);
            });
  return entries;
}

}  // namespace fisheco
