#pragma once

#include "fomc/graph.hpp"

#include <json.hpp>

#include <string>

namespace fomc {

/// JSON form: {"n", "edges": [[u,v],...] with u<v sorted, "colors", "constants", "flags"}.
nlohmann::ordered_json graph_to_json(const Graph & g);
Graph graph_from_json(const nlohmann::json & j);

/// Compact canonical text; graph_to_text(graph_from_text(s)) == s for canonical s.
std::string graph_to_text(const Graph & g);
Graph graph_from_text(const std::string & text);

Graph read_graph_file(const std::string & path);

} // namespace fomc
