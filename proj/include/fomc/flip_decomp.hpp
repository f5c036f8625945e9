#pragma once

#include "fomc/eval.hpp"
#include "fomc/interpret.hpp"

#include <json.hpp>

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fomc {

/// Symmetric relation over trace subsets, stored canonically with A <= B.
/// Traces are bitsets over positions of S_enum.
using TraceRelation = std::set<std::pair<Bitset, Bitset>>;

std::pair<Bitset, Bitset> canonical_pair(const Bitset & a, const Bitset & b);

/// (A, B) ∈ R iff some u with trace A and v with trace B are adjacent in H
/// while farther than r apart in G. `dist` is indexed by H vertices.
TraceRelation build_flip_relation(const Graph & h, const DistanceMatrix & dist, const std::vector<int> & s_enum,
                                  Dist r);

/// Number of canonical (A, B) pairs over s positions: 2^s (2^s + 1) / 2.
unsigned long long canonical_pair_space(int s);

/// Flip of h that complements pairs whose traces are related by R.
FlipSpec guarded_flip_spec(const Graph & h, const std::vector<int> & s_enum, const TraceRelation & R);

std::string flag_name(const Bitset & a, const Bitset & b);
std::string constant_name(int position); // 0-based position -> "c1", "c2", ...

struct Decomposition {
    Interpretation interp;
    InterpretedGraph h;
    std::vector<int> s_enum; // H ids, repetitions allowed
    Dist r = 0;
    TraceRelation R;
    /// Canonical pairs of traces realized in H; one flag each.
    std::vector<std::pair<Bitset, Bitset>> realized;
    Graph FH;
    Graph ghat;
    Formula alpha = fo::truth(false);
    Formula psi = fo::truth(false);
};

/// `s_enum` holds H vertex ids. If `arity` exceeds its length the last
/// element is repeated. Constants c1..cs and flags f_<A>_<B> are added to G;
/// a name already present in G is an error.
Decomposition build_decomposition(const Graph & g, const Interpretation & interp, std::vector<int> s_enum, Dist r,
                                  int arity = -1);
Decomposition build_decomposition(const Graph & g, const InterpretedGraph & h, const Interpretation & interp,
                                  std::vector<int> s_enum, Dist r, int arity = -1);

/// Recomputes FH from H, s_enum and R, leaving psi and ghat alone.
void rebuild_flipped_graph(Decomposition & d);

struct DecompositionReport {
    bool interpretation_ok = false;
    std::string interpretation_detail;
    std::optional<std::pair<int, int>> witness; // G ids of a pair where FH and I(Ghat) differ

    RangeResult range_all;    // over every vertex of Ghat
    RangeResult range_domain; // over delta(Ghat) only
    bool range_ok = false;    // range_all <= r

    bool flip_ok = false;      // FH equals the guarded flip of H
    bool round_trip_ok = false; // flipping FH again gives H

    bool ok() const { return interpretation_ok && range_ok && flip_ok && round_trip_ok; }
};

DecompositionReport verify_decomposition(const Decomposition & d);

nlohmann::ordered_json decomposition_to_json(const Decomposition & d);
nlohmann::ordered_json report_to_json(const DecompositionReport & rep, Dist r);

} // namespace fomc
