#pragma once

#include "fomc/graph.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fomc {

class GeneratorError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph grid_graph(int rows, int cols);
Graph clique_graph(int n);
Graph star_graph(int leaves);

/// a_i = i and b_j = n + j for 0 <= i, j < n; a_i ~ b_j iff i <= j. Colours
/// "a" and "b" mark the sides.
Graph half_graph(int n);

/// G(n, p) from a 64-bit Mersenne twister; each pair (u < v) in lexicographic
/// order consumes one draw.
Graph random_graph(int n, double p, std::uint64_t seed);

/// v1, v2, v3 (ids 0..2) and w_I for every I of {1,2,3} (id 3 + mask of I),
/// with w_I ~ v_i iff i in I.
Graph shattered_triple_graph();

/// Generator parameters. Unused fields are ignored by the chosen kind.
struct GenSpec {
    std::string kind;  // path, cycle, grid, clique, star, half_graph, random, kexpr, shattered_triple
    int n = 0;
    int rows = 0, cols = 0;
    double p = 0.3;
    std::uint64_t seed = 0;
    std::string kexpr;

    std::string label() const;
};

Graph generate(const GenSpec & spec);

nlohmann::ordered_json gen_spec_to_json(const GenSpec & spec);
GenSpec gen_spec_from_json(const nlohmann::json & j);

} // namespace fomc
