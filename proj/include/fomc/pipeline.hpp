#pragma once

#include "fomc/cliquewidth.hpp"
#include "fomc/flip_decomp.hpp"
#include "fomc/formula.hpp"
#include "fomc/interpret.hpp"
#include "fomc/vc.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fomc {

class PipelineError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A guard S (H vertex ids) and a symmetric relation over traces, which are
/// bitsets over positions of S.
struct Candidate {
    std::vector<int> S;
    TraceRelation R;
};

std::string candidate_to_string(const Candidate & c);
nlohmann::ordered_json candidate_to_json(const Candidate & c);

inline constexpr int kMaxExhaustiveArity = 2;

/// Number of candidates for n vertices and |S| <= s.
unsigned long long count_candidates(int n, int s);

/// Calls `visit` on every candidate with |S| <= s in canonical order: S by size,
/// then lexicographically; R as a bitmask over the canonical label pairs of
/// all 2^|S| traces, counting up from the empty relation. Stops early when
/// `visit` returns false. Throws PipelineError for s > 2.
void for_each_candidate(int n, int s, const std::function<bool(const Candidate &)> & visit);
std::vector<Candidate> enumerate_candidates(int n, int s);

/// `count` candidates with |S| = min(s, n): S uniform among such sets, R a
/// uniform subset of the canonical label pairs. Seeded and deterministic.
std::vector<Candidate> sample_candidates(int n, int s, int count, std::uint64_t seed);

std::string trace_colour(const Bitset & trace);

/// H with adjacency flipped between traces related by R, plus a colour
/// lam_<bits> for every realized trace and every trace named in R.
Graph build_H_SR(const Graph & h, const Candidate & c);

/// zeta = x != y & OR over (a, b) in R of (lam_a(x) & lam_b(y)) | (lam_b(x) & lam_a(y)).
Formula build_zeta(const Candidate & c);
Formula build_rho_SR(const Formula & rho, const Candidate & c);

/// Candidate obtained from a known pre-image: the witness set of G under the
/// interpretation at radius r, and the relation of the matching decomposition.
struct WitnessCandidate {
    Candidate candidate;
    Decomposition decomposition;
    Dist sset_radius = 0;
};
WitnessCandidate witness_candidate(const Graph & g, const Interpretation & interp, Dist r,
                                   int k_max = kDefaultDualityOrder);

enum class CandidateMode { Exhaustive, Witness };

struct PipelineConfig {
    int s = 1;
    CandidateMode mode = CandidateMode::Witness;
    bool verify = true;       // run every candidate and demand agreement
    bool race = false;        // non-verify only: take whichever finishes first
    int workers = 1;
    // witness mode
    const Graph * pre_image = nullptr;
    std::optional<Interpretation> interp;
    Dist r = 1;
    // optional lcw of H_{S,R} for the witness candidate
    std::optional<Dist> lcw_radius;
    int lcw_cap = 6;
    int lcw_budget = kDefaultBallBudget;
};

struct CandidateResult {
    Candidate candidate;
    bool answer = false;
    bool agrees = false;
};

struct PipelineReport {
    bool answer = false;
    bool oracle_answer = false;
    std::size_t candidates_run = 0;
    std::vector<CandidateResult> results;
    // witness mode
    std::optional<Candidate> witness;
    std::optional<bool> witness_matches_flip;
    std::optional<std::string> lcw;
    std::optional<std::string> lcw_error;
};

PipelineReport model_check(const Graph & h, const Formula & rho, const PipelineConfig & cfg);

nlohmann::ordered_json pipeline_report_to_json(const PipelineReport & rep, const Graph & h);

} // namespace fomc
