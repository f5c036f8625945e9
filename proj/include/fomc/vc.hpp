#pragma once

#include "fomc/bitset.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace fomc {

/// Binary relation E ⊆ A × B with A = {0..a-1}, B = {0..b-1}. Stored as one
/// bitset over A per element of B.
class BiRelation {
  public:
    BiRelation() = default;
    BiRelation(int a, int b);

    int a_size() const { return a_; }
    int b_size() const { return static_cast<int>(cols_.size()); }

    bool test(int a, int b) const { return cols_[b].test(a); }
    void set(int a, int b, bool value = true);
    /// {a : E(a, b)}
    const Bitset & column(int b) const { return cols_[b]; }
    /// {b : E(a, b)}
    Bitset row(int a) const;

    BiRelation transposed() const;

  private:
    int a_ = 0;
    std::vector<Bitset> cols_;
};

/// {"a": n, "b": m, "pairs": [[i, j], ...]}
BiRelation relation_from_json(const nlohmann::json & j);
nlohmann::json relation_to_json(const BiRelation & r);

/// Largest d such that some d-subset of A is shattered by the columns.
int vc_dimension(const BiRelation & r);

/// Maximum, over m-subsets A' of A, of the number of distinct traces
/// {E(A', b) : b ∈ B}. m is clamped to |A|.
long long shatter_function(const BiRelation & r, int m);

enum class DualitySide { A, B };

std::string to_string(DualitySide side);

/// A-side: every b has some a in `set` with ¬E(a, b).
/// B-side: every a has some b in `set` with E(a, b).
struct DualityWitness {
    DualitySide side = DualitySide::B;
    std::vector<int> set; // increasing
    int order() const { return static_cast<int>(set.size()); }
};

class NoDuality : public std::runtime_error {
  public:
    explicit NoDuality(int k_max)
        : std::runtime_error("no duality of order <= " + std::to_string(k_max)), k_max_(k_max)
    {
    }
    int k_max() const { return k_max_; }

  private:
    int k_max_;
};

inline constexpr int kDefaultDualityOrder = 8;

/// Minimum-order witness over both sides; among witnesses of that order the
/// B-side wins, then the lexicographically smallest set. Throws NoDuality if
/// no witness of order <= k_max exists.
DualityWitness find_duality(const BiRelation & r, int k_max = kDefaultDualityOrder);

/// Checks the witness condition by a full scan.
bool verify_duality(const BiRelation & r, const DualityWitness & w);

/// Lexicographically smallest minimum hitting set of `families` over the
/// universe 0..universe-1. found is false if none of size <= k_max exists.
struct HittingSet {
    bool found = false;
    std::vector<int> set;
};
HittingSet min_hitting_set(const std::vector<Bitset> & families, int universe, int k_max);

} // namespace fomc
