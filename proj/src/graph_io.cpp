#include "fomc/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace fomc {

nlohmann::ordered_json graph_to_json(const Graph & g)
{
    nlohmann::ordered_json j;
    j["n"] = g.size();
    auto edges = nlohmann::ordered_json::array();
    for (const auto & [u, v] : g.edges())
        edges.push_back({u, v});
    j["edges"] = std::move(edges);
    auto colours = nlohmann::ordered_json::object();
    for (const auto & [name, members] : g.colours())
        colours[name] = members.to_vector();
    j["colors"] = std::move(colours);
    auto constants = nlohmann::ordered_json::object();
    for (const auto & [name, v] : g.constants())
        constants[name] = v;
    j["constants"] = std::move(constants);
    auto flags = nlohmann::ordered_json::object();
    for (const auto & [name, value] : g.flags())
        flags[name] = value;
    j["flags"] = std::move(flags);
    return j;
}

Graph graph_from_json(const nlohmann::json & j)
{
    try {
        Graph g(j.at("n").get<int>());
        for (const auto & e : j.value("edges", nlohmann::json::array())) {
            if (!e.is_array() || e.size() != 2)
                throw GraphError("edge entries must be [u, v] pairs");
            g.add_edge(e[0].get<int>(), e[1].get<int>());
        }
        const auto colours = j.value("colors", nlohmann::json::object());
        const auto constants = j.value("constants", nlohmann::json::object());
        const auto flags = j.value("flags", nlohmann::json::object());
        for (const auto & [name, members] : colours.items())
            g.set_colour(name, members.get<std::vector<int>>());
        for (const auto & [name, v] : constants.items())
            g.set_constant(name, v.get<int>());
        for (const auto & [name, value] : flags.items())
            g.set_flag(name, value.get<bool>());
        return g;
    }
    catch (const nlohmann::json::exception & e) {
        throw GraphError(std::string("malformed graph JSON: ") + e.what());
    }
}

std::string graph_to_text(const Graph & g) { return graph_to_json(g).dump(); }

Graph graph_from_text(const std::string & text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::exception & e) {
        throw GraphError(std::string("malformed graph JSON: ") + e.what());
    }
    return graph_from_json(j);
}

Graph read_graph_file(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw GraphError("cannot open graph file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return graph_from_text(ss.str());
}

} // namespace fomc
