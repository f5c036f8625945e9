#pragma once

#include "fomc/formula.hpp"
#include "fomc/graph.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace fomc {

class InterpretError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Simple interpretation I_{phi,delta}: the domain is {v : delta(v)} and
/// distinct u, v are adjacent iff phi(u, v).
struct Interpretation {
    std::string name;
    Formula phi = fo::truth(false);
    Formula delta = fo::truth(true);

    /// phi may use only x and y freely, delta only x.
    void validate() const;
};

Interpretation make_interpretation(const std::string & name, const std::string & phi_text,
                                   const std::string & delta_text = "true");

/// Built-in interpretations: identity, complement, square, power-3, frame-square.
const std::vector<std::string> & interpretation_names();
Interpretation named_interpretation(const std::string & name);

struct InterpretedGraph {
    Graph graph;
    /// back_map[new id] = vertex of the source graph; increasing.
    std::vector<int> back_map;
};

/// Vertices of g satisfying delta(x), increasing.
std::vector<int> interpretation_domain(const Graph & g, const Formula & delta);

/// Applies the interpretation. Colours are restricted to the domain, flags
/// copied, and constants whose vertex survives are kept. Throws
/// InterpretError if phi is not symmetric and irreflexive on the domain.
InterpretedGraph apply_interpretation(const Graph & g, const Interpretation & interp);

/// True iff phi(u,v) == phi(v,u) and !phi(v,v) for all vertices u, v of g.
bool check_symmetric_irreflexive(const Graph & g, const Formula & phi);

} // namespace fomc
