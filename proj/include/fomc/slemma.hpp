#pragma once

#include "fomc/interpret.hpp"
#include "fomc/locality.hpp"
#include "fomc/vc.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace fomc {

struct CellClass {
    enum class Kind { Large, Small, Split };
    Kind kind = Kind::Small;
    std::array<int, 3> triple{-1, -1, -1}; // Large: pairwise dist > 2r
    int centre = -1;                       // Small: every member within 2r
    std::vector<int> c1, c2;               // Split: two Small halves
    int s1 = -1, s2 = -1;                  // Split: the scattered pair used
};

std::string to_string(CellClass::Kind k);

/// Classifies a nonempty cell (point indices of `dist`) at radius r.
CellClass classify_cell(const std::vector<int> & cell, const DistanceMatrix & dist, Dist r);

struct SElement {
    int vertex = -1;
    std::string tag;    // "large", "small-centre" or "duality"
    int cell = -1;      // final cell (for duality: C)
    int other = -1;     // duality: D
    DualitySide side = DualitySide::B;
};

struct SSet {
    std::vector<int> S;              // distinct point indices, increasing
    std::vector<SElement> provenance;
    std::vector<std::vector<int>> final_cells;
    std::vector<CellClass::Kind> final_kinds;
    Dist r = 0;
    int k_observed = 0;
    int t_effective = 0;
    int k_max_used = 0;   // k_max after any retries
    int duality_retries = 0;

    long long size_bound() const
    {
        return 4LL * t_effective + static_cast<long long>(k_observed) * t_effective * t_effective;
    }
};

/// Witness-set construction on an r-generic partition. Cells are classified
/// and split first; then every final cell contributes its large triple or
/// centre, and every ordered pair (C, D), C = D included, contributes a
/// minimum duality of E ∩ (C × D). On NoDuality k_max is doubled and the pair
/// retried.
SSet build_s_set(const MetricRelation & m, const Partition & p, Dist r, int k_max = kDefaultDualityOrder);

/// First quadruple (u, v, u', v') with both pairs farther than `radius`,
/// E(u,S) = E(u',S), E(S,v) = E(S,v') and E(u,v) != E(u',v'), scanning u then
/// v by increasing index. (u, v) is the earlier of the two pairs.
std::optional<Violation> verify_s_set(const MetricRelation & m, const std::vector<int> & S, Dist radius);

struct InterpretationSSet {
    InterpretedGraph h;
    MetricRelation metric;
    Partition partition;
    SSet sset;
    Dist radius = 0; // 5r
};

/// U = delta(G), E from phi on U, distances of G, refinement at r, then the
/// witness set. The returned radius is 5r.
InterpretationSSet s_for_interpretation(const Graph & g, const Interpretation & interp, Dist r,
                                        int k_max = kDefaultDualityOrder);

nlohmann::ordered_json sset_report(const MetricRelation & m, const SSet & s);

} // namespace fomc
