#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fisheco/graph.hpp"

namespace fisheco {

// Name of the generator backing simulate(); recorded in CLI metadata so
// trajectories are reproducible across builds.
extern const char* const kSpreadPrngName;

struct SpreadParams {
  double p_share = 0.5;  // [0, 1]
  double damp = 0.0;     // [0, 1]
  int steps = 10;        // > 0
  std::uint64_t seed = 0;
};

struct Trajectory {
  // Length steps + 1; exposed_per_step[0] is the seed set size.
  std::vector<std::size_t> exposed_per_step;
  std::set<std::string> final_exposed;
  // Agents first exposed at each step (index 0 = seed), sorted.
  std::vector<std::vector<std::string>> newly_exposed_per_step;
};

// Agents are all P and AC entities. u -> v when v consumed an item u
// published or created, plus both directions between co-members of the same
// OG or SOC entity. Neighbor lists are sorted and deduplicated.
std::map<std::string, std::vector<std::string>> build_exposure_network(
    const ScenarioGraph& g);

// Synchronous cascade from the item's publisher. Per step, each exposed
// agent u infects an unexposed out-neighbor v with probability
// p_share * (1 - damp * aware(u)), where aware(u) means u consumed an FCR
// that reports_on the item. One uniform draw is scheduled per adjacency pair
// per step in fixed (agent, neighbor) order, whether or not the pair is
// attempted, so runs with the same seed stay coupled across parameter
// changes.
Trajectory simulate(const ScenarioGraph& g, std::string_view item_id,
                    const SpreadParams& params);

}  // namespace fisheco
