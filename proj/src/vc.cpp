#include "fomc/vc.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace fomc {

BiRelation::BiRelation(int a, int b) : a_(a)
{
    if (a < 0 || b < 0)
        throw std::invalid_argument("relation sizes must be non-negative");
    cols_.assign(static_cast<std::size_t>(b), Bitset(static_cast<std::size_t>(a)));
}

void BiRelation::set(int a, int b, bool value)
{
    if (a < 0 || a >= a_ || b < 0 || b >= b_size())
        throw std::out_of_range("relation pair (" + std::to_string(a) + ", " + std::to_string(b) + ") out of range");
    cols_[b].set(a, value);
}

Bitset BiRelation::row(int a) const
{
    Bitset out(cols_.size());
    for (std::size_t b = 0; b < cols_.size(); ++b)
        if (cols_[b].test(a))
            out.set(b);
    return out;
}

BiRelation BiRelation::transposed() const
{
    BiRelation t(b_size(), a_);
    for (int b = 0; b < b_size(); ++b)
        cols_[b].for_each([&](int a) { t.set(b, a); });
    return t;
}

BiRelation relation_from_json(const nlohmann::json & j)
{
    try {
        BiRelation r(j.at("a").get<int>(), j.at("b").get<int>());
        for (const auto & p : j.value("pairs", nlohmann::json::array()))
            r.set(p.at(0).get<int>(), p.at(1).get<int>());
        return r;
    } catch (const nlohmann::json::exception & e) {
        throw std::invalid_argument(std::string("malformed relation: ") + e.what());
    } catch (const std::out_of_range & e) {
        throw std::invalid_argument(std::string("malformed relation: ") + e.what());
    }
}

nlohmann::json relation_to_json(const BiRelation & r)
{
    nlohmann::json pairs = nlohmann::json::array();
    for (int a = 0; a < r.a_size(); ++a)
        for (int b = 0; b < r.b_size(); ++b)
            if (r.test(a, b))
                pairs.push_back({a, b});
    return {{"a", r.a_size()}, {"b", r.b_size()}, {"pairs", pairs}};
}

namespace {

std::size_t distinct_traces(const BiRelation & r, const Bitset & mask, std::size_t cap)
{
    std::unordered_set<Bitset, BitsetHash> seen;
    for (int b = 0; b < r.b_size() && seen.size() < cap; ++b)
        seen.insert(r.column(b) & mask);
    return seen.size();
}

} // namespace

int vc_dimension(const BiRelation & r)
{
    const int n = r.a_size();
    int best = 0;
    Bitset mask(static_cast<std::size_t>(n));
    // Shattering is hereditary, so only shattered sets are extended.
    std::function<void(int, int)> grow = [&](int next, int size) {
        best = std::max(best, size);
        if (size >= 62 || (std::size_t{1} << (size + 1)) > static_cast<std::size_t>(r.b_size()))
            return;
        for (int e = next; e < n; ++e) {
            mask.set(e);
            const std::size_t need = std::size_t{1} << (size + 1);
            if (distinct_traces(r, mask, need) == need)
                grow(e + 1, size + 1);
            mask.reset(e);
        }
    };
    grow(0, 0);
    return best;
}

long long shatter_function(const BiRelation & r, int m)
{
    const int n = r.a_size();
    m = std::clamp(m, 0, n);
    if (r.b_size() == 0)
        return 0;
    const std::size_t cap =
        m >= 62 ? static_cast<std::size_t>(r.b_size())
                : std::min(std::size_t{1} << m, static_cast<std::size_t>(r.b_size()));
    std::size_t best = 0;
    Bitset mask(static_cast<std::size_t>(n));
    std::function<bool(int, int)> choose = [&](int next, int left) -> bool {
        if (left == 0) {
            best = std::max(best, distinct_traces(r, mask, cap));
            return best >= cap;
        }
        for (int e = next; e + left <= n; ++e) {
            mask.set(e);
            bool done = choose(e + 1, left - 1);
            mask.reset(e);
            if (done)
                return true;
        }
        return false;
    };
    choose(0, m);
    return static_cast<long long>(best);
}

std::string to_string(DualitySide side) { return side == DualitySide::A ? "A" : "B"; }

HittingSet min_hitting_set(const std::vector<Bitset> & families, int universe, int k_max)
{
    const std::size_t f = families.size();
    for (const auto & fam : families)
        if (fam.none())
            return {};

    // incidence[e] = families containing e
    std::vector<Bitset> incidence(static_cast<std::size_t>(universe), Bitset(f));
    std::vector<int> family_max(f, -1);
    for (std::size_t i = 0; i < f; ++i)
        families[i].for_each([&](int e) {
            incidence[e].set(i);
            family_max[i] = std::max(family_max[i], e);
        });

    // greedy upper bound
    int upper = 0;
    {
        Bitset hit(f);
        while (hit.count() < f) {
            int best_e = -1;
            std::size_t best_gain = 0;
            for (int e = 0; e < universe; ++e) {
                Bitset gain = incidence[e];
                gain.subtract(hit);
                if (gain.count() > best_gain) {
                    best_gain = gain.count();
                    best_e = e;
                }
            }
            hit |= incidence[best_e];
            ++upper;
        }
    }

    std::vector<int> chosen;
    std::function<bool(int, const Bitset &, int)> search = [&](int last, const Bitset & hit, int budget) -> bool {
        if (hit.count() == f)
            return true;
        if (budget == 0)
            return false;
        Bitset unhit = hit;
        unhit.set_all();
        unhit.subtract(hit);

        // every unhit family needs an element after `last`; disjoint unhit
        // families each need their own element
        int packing = 0;
        Bitset used(static_cast<std::size_t>(universe));
        bool dead = false;
        unhit.for_each([&](int i) {
            if (family_max[i] <= last)
                dead = true;
            if (!families[i].intersects(used)) {
                ++packing;
                used |= families[i];
            }
        });
        if (dead || packing > budget)
            return false;

        for (int e = last + 1; e < universe; ++e) {
            if (!incidence[e].intersects(unhit))
                continue;
            chosen.push_back(e);
            if (search(e, hit | incidence[e], budget - 1))
                return true;
            chosen.pop_back();
        }
        return false;
    };

    for (int k = 0; k <= std::min(upper, k_max); ++k) {
        chosen.clear();
        if (search(-1, Bitset(f), k))
            return {true, chosen};
    }
    return {};
}

DualityWitness find_duality(const BiRelation & r, int k_max)
{
    // B-side: for each a, the family {b : E(a,b)}.
    std::vector<Bitset> b_families;
    for (int a = 0; a < r.a_size(); ++a)
        b_families.push_back(r.row(a));
    auto b_side = min_hitting_set(b_families, r.b_size(), k_max);

    // A-side: for each b, the family {a : ¬E(a,b)}. Only strictly smaller orders can win.
    const int a_limit = b_side.found ? static_cast<int>(b_side.set.size()) - 1 : k_max;
    HittingSet a_side;
    if (a_limit >= 0) {
        std::vector<Bitset> a_families;
        for (int b = 0; b < r.b_size(); ++b) {
            Bitset fam = r.column(b);
            fam.set_all();
            fam.subtract(r.column(b));
            a_families.push_back(std::move(fam));
        }
        a_side = min_hitting_set(a_families, r.a_size(), a_limit);
    }

    if (a_side.found)
        return {DualitySide::A, a_side.set};
    if (b_side.found)
        return {DualitySide::B, b_side.set};
    throw NoDuality(k_max);
}

bool verify_duality(const BiRelation & r, const DualityWitness & w)
{
    for (int e : w.set)
        if (e < 0 || e >= (w.side == DualitySide::A ? r.a_size() : r.b_size()))
            return false;
    if (w.side == DualitySide::A) {
        for (int b = 0; b < r.b_size(); ++b) {
            bool ok = false;
            for (int a : w.set)
                ok = ok || !r.test(a, b);
            if (!ok)
                return false;
        }
    } else {
        for (int a = 0; a < r.a_size(); ++a) {
            bool ok = false;
            for (int b : w.set)
                ok = ok || r.test(a, b);
            if (!ok)
                return false;
        }
    }
    return true;
}

} // namespace fomc
