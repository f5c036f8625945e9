#include "fomc/interpret.hpp"

#include "fomc/eval.hpp"
#include "fomc/parser.hpp"

#include <map>

namespace fomc {

namespace {

const char * const kDegreeAtMost3 =
    "~exists a. (E(x,a) & exists b. (E(x,b) & b!=a & exists c. (E(x,c) & c!=a & c!=b & "
    "exists d. (E(x,d) & d!=a & d!=b & d!=c))))";

const std::map<std::string, std::pair<std::string, std::string>> & registry()
{
    static const std::map<std::string, std::pair<std::string, std::string>> r = {
        {"identity", {"E(x,y)", "true"}},
        {"complement", {"~E(x,y) & x!=y", "true"}},
        {"square", {"x!=y & (E(x,y) | exists z. (E(x,z) & E(z,y)))", "true"}},
        {"power-3", {"x!=y & dist<=3(x,y)", "true"}},
        // square of the graph, restricted to vertices of degree at most 3
        {"frame-square", {"x!=y & (E(x,y) | exists z. (E(x,z) & E(z,y)))", kDegreeAtMost3}},
    };
    return r;
}

} // namespace

void Interpretation::validate() const
{
    for (const auto & v : free_variables(phi))
        if (v != "x" && v != "y")
            throw InterpretError("interpretation '" + name + "': phi has free variable '" + v + "'");
    for (const auto & v : free_variables(delta))
        if (v != "x")
            throw InterpretError("interpretation '" + name + "': delta has free variable '" + v + "'");
}

Interpretation make_interpretation(const std::string & name, const std::string & phi_text,
                                   const std::string & delta_text)
{
    Interpretation out{name, parse_formula(phi_text), parse_formula(delta_text)};
    out.validate();
    return out;
}

const std::vector<std::string> & interpretation_names()
{
    static const std::vector<std::string> names = {"identity", "complement", "square", "power-3", "frame-square"};
    return names;
}

Interpretation named_interpretation(const std::string & name)
{
    auto it = registry().find(name);
    if (it == registry().end())
        throw InterpretError("unknown interpretation '" + name + "'");
    return make_interpretation(name, it->second.first, it->second.second);
}

std::vector<int> interpretation_domain(const Graph & g, const Formula & delta)
{
    Evaluator ev(g, delta, {"x"});
    std::vector<int> out;
    for (int v = 0; v < g.size(); ++v)
        if (ev({v}))
            out.push_back(v);
    return out;
}

InterpretedGraph apply_interpretation(const Graph & g, const Interpretation & interp)
{
    interp.validate();
    auto domain = interpretation_domain(g, interp.delta);
    auto base = induced_subgraph(g, domain);

    const int m = static_cast<int>(domain.size());
    Graph h(m);
    for (const auto & [name, members] : base.graph.colours())
        h.set_colour(name, members);
    for (const auto & [name, v] : base.graph.constants())
        h.set_constant(name, v);
    for (const auto & [name, value] : base.graph.flags())
        h.set_flag(name, value);

    Evaluator ev(g, interp.phi, {"x", "y"});
    for (int i = 0; i < m; ++i) {
        const int u = domain[i];
        if (ev({u, u}))
            throw InterpretError("interpretation '" + interp.name + "': phi is reflexive at vertex " +
                                 std::to_string(u));
        for (int j = i + 1; j < m; ++j) {
            const int v = domain[j];
            bool forward = ev({u, v});
            if (forward != ev({v, u}))
                throw InterpretError("interpretation '" + interp.name + "': phi is not symmetric on (" +
                                     std::to_string(u) + ", " + std::to_string(v) + ")");
            if (forward)
                h.add_edge(i, j);
        }
    }
    return {std::move(h), std::move(domain)};
}

bool check_symmetric_irreflexive(const Graph & g, const Formula & phi)
{
    Evaluator ev(g, phi, {"x", "y"});
    for (int u = 0; u < g.size(); ++u) {
        if (ev({u, u}))
            return false;
        for (int v = u + 1; v < g.size(); ++v)
            if (ev({u, v}) != ev({v, u}))
                return false;
    }
    return true;
}

} // namespace fomc
