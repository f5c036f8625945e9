#pragma once

#include "fomc/bitset.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fomc {

/// Graph distance. Unreachable pairs get kInfinity, which orders above every
/// finite value, so `d > r` holds for it whatever r is.
using Dist = std::uint32_t;
inline constexpr Dist kInfinity = std::numeric_limits<Dist>::max();

std::string dist_to_string(Dist d);

class GraphError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Finite simple graph on vertices 0..n-1, optionally carrying unary colour
/// predicates, named constants and boolean flags.
///
/// Adjacency is kept as one bitset row per vertex and is always symmetric and
/// irreflexive; the mutators reject anything that would break that.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int n);

    int size() const { return n_; }

    bool adjacent(int u, int v) const { return adj_[u].test(v); }
    const Bitset & neighbours(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].count()); }
    std::size_t edge_count() const;
    /// All edges as (u, v) with u < v, sorted.
    std::vector<std::pair<int, int>> edges() const;

    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    void toggle_edge(int u, int v);

    const std::map<std::string, Bitset> & colours() const { return colours_; }
    const std::map<std::string, int> & constants() const { return constants_; }
    const std::map<std::string, bool> & flags() const { return flags_; }

    void set_colour(const std::string & name, const std::vector<int> & members);
    void set_colour(const std::string & name, Bitset members);
    void set_constant(const std::string & name, int v);
    void set_flag(const std::string & name, bool value);

    bool has_colour(const std::string & name) const { return colours_.count(name) != 0; }

    /// Same vertex count and identical edge sets; ignores colours, constants, flags.
    bool same_edges(const Graph & other) const { return n_ == other.n_ && adj_ == other.adj_; }

    bool operator==(const Graph & other) const = default;

    void check_vertex(int v) const;

  private:
    int n_ = 0;
    std::vector<Bitset> adj_;
    std::map<std::string, Bitset> colours_;
    std::map<std::string, int> constants_;
    std::map<std::string, bool> flags_;
};

/// Length of a shortest u-v path, kInfinity if none.
Dist bfs_dist(const Graph & g, int u, int v);

/// Distances from `source` to every vertex.
std::vector<Dist> bfs_from(const Graph & g, int source);

/// Vertices at distance at most r from v, in increasing id order.
std::vector<int> ball(const Graph & g, int v, Dist r);

/// Symmetric matrix of pairwise distances over an indexed point set. Serves as
/// the pseudometric for the locality and witness-set machinery, where the
/// points are the vertices of an interpreted graph and the distances come from
/// the graph it was interpreted in.
class DistanceMatrix {
  public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, kInfinity)
    {
        for (int i = 0; i < n; ++i)
            at(i, i) = 0;
    }

    int size() const { return n_; }
    Dist operator()(int u, int v) const { return d_[static_cast<std::size_t>(u) * n_ + v]; }
    Dist & at(int u, int v) { return d_[static_cast<std::size_t>(u) * n_ + v]; }

    /// Re-index to a subset: entry (i, j) of the result is (ids[i], ids[j]).
    DistanceMatrix restrict_to(const std::vector<int> & ids) const;

  private:
    int n_ = 0;
    std::vector<Dist> d_;
};

DistanceMatrix all_pairs_distances(const Graph & g);

struct InducedSubgraph {
    Graph graph;
    /// back_map[new id] = original id; increasing.
    std::vector<int> back_map;
    /// Constants of the original graph whose vertex lies outside the subset.
    std::vector<std::string> dropped_constants;
};

/// Subgraph induced by `vertices` (duplicates ignored). New ids follow the
/// original id order. Colours and flags are restricted/copied.
InducedSubgraph induced_subgraph(const Graph & g, const std::vector<int> & vertices);

/// A partition of the vertex set into labelled parts together with a
/// symmetric relation on part labels. Applying it complements adjacency
/// between every two distinct vertices whose parts are related.
struct FlipSpec {
    /// part_of[v] is the label (0..part_count-1) of the part containing v.
    std::vector<int> part_of;
    int part_count = 0;
    /// Related label pairs, stored as (i, j) with i <= j.
    std::set<std::pair<int, int>> relation;

    void relate(int i, int j) { relation.insert(i <= j ? std::pair{i, j} : std::pair{j, i}); }
    bool related(int i, int j) const { return relation.count(i <= j ? std::pair{i, j} : std::pair{j, i}) != 0; }

    /// Throws GraphError unless this is a labelled partition of 0..n-1 with
    /// every label used and every related label in range.
    void validate(int n) const;
};

/// Complements adjacency between distinct vertices in related parts. Pairs
/// (v, v) are never touched. Colours, constants and flags carry over.
Graph apply_flip(const Graph & g, const FlipSpec & flip);

/// Partition of V(G) by the trace N(v) ∩ S, where S is given as a list of
/// positions (repetitions allowed). Each part is labelled by its trace: a
/// bitset over positions of `guard`.
struct GuardedPartition {
    FlipSpec spec; // relation left empty
    std::vector<Bitset> part_trace; // indexed by part label, increasing
    std::vector<Bitset> vertex_trace; // indexed by vertex
};

GuardedPartition guarded_partition(const Graph & g, const std::vector<int> & guard);

/// Trace of v on a positional guard list: bit i set iff v is adjacent to guard[i].
Bitset trace_of(const Graph & g, int v, const std::vector<int> & guard);

} // namespace fomc
