#pragma once

#include <string>

#include "fisheco/graph.hpp"

namespace fisheco {

// Rendering conventions: yellow information nodes, green documents/resources,
// light-green anchors, blue fact_checked edges, red regulates edges. Hex
// values are fixed for deterministic output.
struct StyleMap {
  std::string information_fill = "#FFF2CC";
  std::string document_resource_fill = "#D5E8D4";
  std::string anchor_fill = "#E2F0D9";
  std::string plain_fill = "#FFFFFF";
  std::string fact_check_colour = "blue";
  std::string regulate_colour = "red";
  std::string plain_colour = "black";
  std::string attr_fill = "#DAE8FC";
  // When true, each effectively-true boolean attribute becomes a light-blue
  // ellipse node attached by a dashed edge instead of a label line.
  bool attrs_as_nodes = false;

  const std::string& fill_for(ColourClass c) const;
  const std::string& colour_for(EdgeClass e) const;
};

// Valid DOT digraph; nodes are rounded filled boxes sorted by id, edges in
// insertion order, labels "verb", "verb (past)", "verb [YYYY-MM-DD]".
std::string to_dot(const ScenarioGraph& g, const StyleMap& style = {});

// Well-formed GraphML; node keys type/attrs, edge keys verb/tense/date,
// same deterministic ordering as to_dot.
std::string to_graphml(const ScenarioGraph& g);

}  // namespace fisheco
