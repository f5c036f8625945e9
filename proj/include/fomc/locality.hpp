#pragma once

#include "fomc/bitset.hpp"
#include "fomc/graph.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fomc {

struct InterpretedGraph;

/// A binary relation on points 0..n-1 together with a pseudometric on the
/// same points. For an interpreted graph H = I(G) the relation is E(H) and the
/// distances are those of G between the preimages.
struct MetricRelation {
    std::vector<Bitset> rel; // rel[u].test(v) == E(u, v)
    DistanceMatrix dist;
    std::vector<int> ids;    // label of each point for reporting

    int size() const { return static_cast<int>(rel.size()); }
    bool related(int u, int v) const { return rel[u].test(v); }
    bool far(int u, int v, Dist r) const { return dist(u, v) > r; }
};

/// E(H) with distances taken in g through h.back_map; ids are G-ids.
MetricRelation metric_relation(const InterpretedGraph & h, const Graph & g);
/// E(G) with the distances of G itself.
MetricRelation metric_relation(const Graph & g);

struct Partition {
    std::vector<std::vector<int>> cells; // each increasing, nonempty
    std::vector<int> cell_of;

    int size() const { return static_cast<int>(cells.size()); }
    static Partition single_cell(int n);
    static Partition from_cells(int n, std::vector<std::vector<int>> cells);
    /// Throws std::invalid_argument unless cells are disjoint, nonempty and cover 0..n-1.
    void validate(int n) const;
};

/// Two far pairs in the same cell pair that disagree on E. (u, v) comes
/// first in scan order.
struct Violation {
    int u = -1, v = -1, u2 = -1, v2 = -1;
    bool operator==(const Violation &) const = default;
};

/// First violation of r-genericity, scanning cell pairs (C, D) in index order
/// and, inside one, u ∈ C then v ∈ D by increasing id.
std::optional<Violation> check_r_generic(const MetricRelation & m, const Partition & p, Dist r);

/// Refines the single-cell partition until it is r-generic. On a violation
/// with true pair (u, v) and false pair (u', v') in cells (C, D), C is split
/// into {x ∈ C : dist(x, v) > r, E(x, v)} and the rest. If that would not
/// separate anything, D is split by {y ∈ D : dist(u', y) > r, E(u', y)}
/// instead. The part keeping the cell's index is the one described by the
/// rule; the remainder becomes a new last cell.
Partition refine_partition(const MetricRelation & m, Dist r);

struct RefineStats {
    int splits = 0;
    int fallback_splits = 0; // splits where the second rule was needed
};
Partition refine_partition(const MetricRelation & m, Dist r, RefineStats & stats);

enum class GenericStatus { GenericallyE, GenericallyNotE, NoFarPairs, Contradictory };
std::string to_string(GenericStatus s);

GenericStatus generic_status(const MetricRelation & m, const std::vector<int> & c, const std::vector<int> & d,
                             Dist r);

/// JSON report: cells, sizes and the status matrix.
nlohmann::ordered_json partition_report(const MetricRelation & m, const Partition & p, Dist r);

} // namespace fomc
