#include "fisheco/graph_export.hpp"

#include <sstream>

namespace fisheco {

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string dot_quote(const std::string& s) {
  return "\"" + dot_escape(s) + "\"";
}

// Label lines joined with DOT's \n escape; parts are escaped individually so
// the separator survives quoting.
std::string dot_label(const Entity& e, bool inline_attrs) {
  std::string label = "\"" + dot_escape(e.id) + "\\n" + dot_escape(e.type_code);
  if (inline_attrs) {
    for (const auto& [name, value] : e.attrs) {
      label += "\\n" + dot_escape(name) + "=";
      if (const bool* b = std::get_if<bool>(&value)) {
        label += *b ? "true" : "false";
      } else {
        label += dot_escape(std::get<std::string>(value));
      }
    }
  }
  label += "\"";
  return label;
}

std::string edge_label(const Relation& r) {
  std::string label = r.verb;
  if (r.tense == Tense::past) label += " (past)";
  if (r.date) label += " [" + r.date->to_string() + "]";
  return label;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

const std::string& StyleMap::fill_for(ColourClass c) const {
  switch (c) {
    case ColourClass::information: return information_fill;
    case ColourClass::document_resource: return document_resource_fill;
    case ColourClass::anchor: return anchor_fill;
    case ColourClass::plain: return plain_fill;
  }
  return plain_fill;
}

const std::string& StyleMap::colour_for(EdgeClass e) const {
  switch (e) {
    case EdgeClass::fact_check: return fact_check_colour;
    case EdgeClass::regulate: return regulate_colour;
    case EdgeClass::plain: return plain_colour;
  }
  return plain_colour;
}

std::string to_dot(const ScenarioGraph& g, const StyleMap& style) {
  std::ostringstream out;
  out << "digraph " << dot_quote(g.name()) << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, style=\"rounded,filled\"];\n";

  for (const auto& [id, entity] : g.entities()) {
    const EntityTypeDef* type = g.schema().find_entity_type(entity.type_code);
    const std::string& fill =
        style.fill_for(type ? type->colour : ColourClass::plain);
    out << "  " << dot_quote(id) << " [label="
        << dot_label(entity, !style.attrs_as_nodes)
        << ", fillcolor=" << dot_quote(fill) << "];\n";
    if (style.attrs_as_nodes && type) {
      for (const AttributeDef& attr : type->attributes) {
        if (attr.kind != AttrKind::boolean) continue;
        if (!g.attr_bool(entity, attr.name)) continue;
        const std::string attr_node = id + "::" + attr.name;
        out << "  " << dot_quote(attr_node) << " [label=" << dot_quote(attr.name)
            << ", shape=ellipse, style=filled, fillcolor="
            << dot_quote(style.attr_fill) << "];\n";
        out << "  " << dot_quote(id) << " -> " << dot_quote(attr_node)
            << " [style=dashed, arrowhead=none];\n";
      }
    }
  }

  for (const Relation& r : g.relations()) {
    const Entity* src = g.find_entity(r.source_id);
    const Entity* dst = g.find_entity(r.target_id);
    EdgeClass edge_class =
        (src && dst &&
         g.schema().find_relation(r.verb, src->type_code, dst->type_code))
            ? g.schema().find_relation(r.verb, src->type_code, dst->type_code)->edge_class
            : edge_class_for_verb(r.verb);
    out << "  " << dot_quote(r.source_id) << " -> " << dot_quote(r.target_id)
        << " [label=" << dot_quote(edge_label(r))
        << ", color=" << dot_quote(style.colour_for(edge_class));
    if (r.tense == Tense::past) out << ", style=dotted";
    out << "];\n";
  }

  out << "}\n";
  return out.str();
}

std::string to_graphml(const ScenarioGraph& g) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
  out << "  <key id=\"type\" for=\"node\" attr.name=\"type\" attr.type=\"string\"/>\n";
  out << "  <key id=\"attrs\" for=\"node\" attr.name=\"attrs\" attr.type=\"string\"/>\n";
  out << "  <key id=\"verb\" for=\"edge\" attr.name=\"verb\" attr.type=\"string\"/>\n";
  out << "  <key id=\"tense\" for=\"edge\" attr.name=\"tense\" attr.type=\"string\"/>\n";
  out << "  <key id=\"date\" for=\"edge\" attr.name=\"date\" attr.type=\"string\"/>\n";
  out << "  <graph id=" << '"' << xml_escape(g.name()) << '"'
      << " edgedefault=\"directed\">\n";

  for (const auto& [id, entity] : g.entities()) {
    out << "    <node id=\"" << xml_escape(id) << "\">\n";
    out << "      <data key=\"type\">" << xml_escape(entity.type_code)
        << "</data>\n";
    std::string attrs;
    for (const auto& [name, value] : entity.attrs) {
      attrs += name + "=";
      if (const bool* b = std::get_if<bool>(&value)) {
        attrs += *b ? "true" : "false";
      } else {
        attrs += std::get<std::string>(value);
      }
      attrs += ";";
    }
    out << "      <data key=\"attrs\">" << xml_escape(attrs) << "</data>\n";
    out << "    </node>\n";
  }

  for (const Relation& r : g.relations()) {
    out << "    <edge source=\"" << xml_escape(r.source_id) << "\" target=\""
        << xml_escape(r.target_id) << "\">\n";
    out << "      <data key=\"verb\">" << xml_escape(r.verb) << "</data>\n";
    out << "      <data key=\"tense\">" << tense_name(r.tense) << "</data>\n";
    if (r.date) {
      out << "      <data key=\"date\">" << r.date->to_string() << "</data>\n";
    }
    out << "    </edge>\n";
  }

  out << "  </graph>\n";
  out << "</graphml>\n";
  return out.str();
}

}  // namespace fisheco
