#include "fisheco/spread.hpp"

#include <algorithm>
#include <random>

namespace fisheco {

const char* const kSpreadPrngName = "mt19937_64/u53";

namespace {

bool is_agent(const Entity& e) {
  return e.type_code == "P" || e.type_code == "AC";
}

bool is_item(const Entity& e) {
  return e.type_code == "N" || e.type_code == "UGC";
}

// Top 53 bits, the conventional uniform-double construction. Pinned here
// rather than uniform_real_distribution so trajectories do not depend on the
// standard library implementation.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_params(const SpreadParams& params) {
  if (!(params.p_share >= 0.0 && params.p_share <= 1.0)) {
    throw Error(Errc::bad_params, "p_share must lie in [0, 1]");
  }
  if (!(params.damp >= 0.0 && params.damp <= 1.0)) {
    throw Error(Errc::bad_params, "damp must lie in [0, 1]");
  }
  if (params.steps <= 0) {
    throw Error(Errc::bad_params, "steps must be positive");
  }
}

}  // namespace

std::map<std::string, std::vector<std::string>> build_exposure_network(
    const ScenarioGraph& g) {
  std::map<std::string, std::vector<std::string>> adjacency;
  for (const auto& [id, entity] : g.entities()) {
    if (is_agent(entity)) adjacency[id];
  }

  auto add_edge = [&](const std::string& from, const std::string& to) {
    if (from != to) adjacency[from].push_back(to);
  };

  // (a) v consumed an item u published or created.
  for (const Relation& produced : g.relations()) {
    if (produced.verb != "published" && produced.verb != "created") continue;
    if (!adjacency.count(produced.source_id)) continue;
    for (const Relation& consumed : g.relations()) {
      if (consumed.verb != "consumed") continue;
      if (consumed.target_id != produced.target_id) continue;
      if (!adjacency.count(consumed.source_id)) continue;
      add_edge(produced.source_id, consumed.source_id);
    }
  }

  // (b) co-membership of the same OG or SOC entity, both directions.
  std::map<std::string, std::vector<std::string>> group_members;
  for (const Relation& r : g.relations()) {
    if (r.verb != "belongs_to") continue;
    const Entity* group = g.find_entity(r.target_id);
    if (!group || (group->type_code != "OG" && group->type_code != "SOC")) continue;
    if (!adjacency.count(r.source_id)) continue;
    group_members[r.target_id].push_back(r.source_id);
  }
  for (const auto& [group, members] : group_members) {
    for (const std::string& u : members) {
      for (const std::string& v : members) {
        add_edge(u, v);
      }
    }
  }

  for (auto& [id, neighbors] : adjacency) {
    std::sort(neighbors.begin(), neighbors.end());
    neighbors.erase(std::unique(neighbors.begin(), neighbors.end()),
                    neighbors.end());
  }
  return adjacency;
}

Trajectory simulate(const ScenarioGraph& g, std::string_view item_id,
                    const SpreadParams& params) {
  check_params(params);
  const Entity& item = g.entity(item_id);
  if (!is_item(item)) {
    throw Error(Errc::bad_params,
                "\"" + item.id + "\" is not an N or UGC entity");
  }

  auto adjacency = build_exposure_network(g);

  // Seed agent: the first (by id) agent that published or created the item.
  std::string seed_agent;
  for (const Relation& r : g.relations()) {
    if ((r.verb != "published" && r.verb != "created") || r.target_id != item.id) {
      continue;
    }
    if (!adjacency.count(r.source_id)) continue;
    if (seed_agent.empty() || r.source_id < seed_agent) seed_agent = r.source_id;
  }
  if (seed_agent.empty()) {
    throw Error(Errc::bad_params,
                "item \"" + item.id + "\" has no P or AC publisher to seed from");
  }

  // Awareness is static: u consumed some FCR that reports_on the item.
  std::set<std::string> aware;
  for (const Relation& report : g.relations()) {
    if (report.verb != "reports_on" || report.target_id != item.id) continue;
    for (const Relation& consumed : g.relations()) {
      if (consumed.verb != "consumed" || consumed.target_id != report.source_id) {
        continue;
      }
      if (adjacency.count(consumed.source_id)) aware.insert(consumed.source_id);
    }
  }

  std::mt19937_64 rng(params.seed);
  std::set<std::string> exposed{seed_agent};

  Trajectory trajectory;
  trajectory.exposed_per_step.push_back(exposed.size());
  trajectory.newly_exposed_per_step.push_back({seed_agent});

  for (int step = 0; step < params.steps; ++step) {
    std::set<std::string> newly;
    // One draw is scheduled for every adjacency pair whether or not it is
    // attempted; runs that share a seed then see identical draws per
    // (u, v, step), which keeps the cascade monotone in damp.
    for (const auto& [u, neighbors] : adjacency) {
      const double p_eff =
          params.p_share * (1.0 - params.damp * (aware.count(u) ? 1.0 : 0.0));
      const bool u_exposed = exposed.count(u) > 0;
      for (const std::string& v : neighbors) {
        const double draw = next_uniform(rng);
        if (!u_exposed || exposed.count(v) || newly.count(v)) continue;
        if (draw < p_eff) newly.insert(v);
      }
    }
    exposed.insert(newly.begin(), newly.end());
    trajectory.exposed_per_step.push_back(exposed.size());
    trajectory.newly_exposed_per_step.emplace_back(newly.begin(), newly.end());
  }

  trajectory.final_exposed = std::move(exposed);
  return trajectory;
}

}  // namespace fisheco
