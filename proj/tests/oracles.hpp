#pragma once

// Slow, independently written reference implementations used by the tests.

#include "fomc/formula.hpp"
#include "fomc/graph.hpp"
#include "fomc/vc.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace oracle {

using fomc::Dist;
using fomc::Formula;
using fomc::Graph;
using fomc::Op;

constexpr Dist kInf = fomc::kInfinity;

/// All-pairs distances by Floyd-Warshall.
inline std::vector<std::vector<Dist>> floyd(const Graph & g)
{
    const int n = g.size();
    std::vector<std::vector<Dist>> d(n, std::vector<Dist>(n, kInf));
    for (int u = 0; u < n; ++u) {
        d[u][u] = 0;
        for (int v = 0; v < n; ++v)
            if (g.adjacent(u, v))
                d[u][v] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] != kInf && d[k][j] != kInf && d[i][k] + d[k][j] < d[i][j])
                    d[i][j] = d[i][k] + d[k][j];
    return d;
}

/// Plain recursive Tarski evaluation without memoization.
class RefEval {
  public:
    explicit RefEval(const Graph & g) : g_(g), d_(floyd(g)) {}

    bool operator()(const Formula & f, std::map<std::string, int> a) const { return eval(f, a); }

  private:
    int term(const fomc::Term & t, const std::map<std::string, int> & a) const
    {
        if (t.is_variable()) {
            auto it = a.find(t.name);
            if (it == a.end())
                throw std::runtime_error("unbound " + t.name);
            return it->second;
        }
        return g_.constants().at(t.name);
    }

    bool eval(const Formula & f, std::map<std::string, int> & a) const
    {
        const auto & ch = f.children();
        switch (f.op()) {
        case Op::True:
            return true;
        case Op::False:
            return false;
        case Op::Edge:
            return g_.adjacent(term(f.terms()[0], a), term(f.terms()[1], a));
        case Op::Colour:
            return g_.colours().at(f.name()).test(term(f.terms()[0], a));
        case Op::Equal:
            return term(f.terms()[0], a) == term(f.terms()[1], a);
        case Op::Flag:
            return g_.flags().at(f.name());
        case Op::Dist:
            return d_[term(f.terms()[0], a)][term(f.terms()[1], a)] <= f.radius();
        case Op::Not:
            return !eval(ch[0], a);
        case Op::And:
            for (const auto & c : ch)
                if (!eval(c, a))
                    return false;
            return true;
        case Op::Or:
            for (const auto & c : ch)
                if (eval(c, a))
                    return true;
            return false;
        case Op::Xor: {
            bool v = false;
            for (const auto & c : ch)
                v ^= eval(c, a);
            return v;
        }
        case Op::Implies:
            return !eval(ch[0], a) || eval(ch[1], a);
        case Op::Exists:
        case Op::Forall: {
            const bool ex = f.op() == Op::Exists;
            const std::string & v = f.name();
            auto saved = a.find(v) == a.end() ? std::optional<int>{} : std::optional<int>{a[v]};
            bool result = !ex;
            for (int u = 0; u < g_.size(); ++u) {
                a[v] = u;
                if (eval(ch[0], a) == ex) {
                    result = ex;
                    break;
                }
            }
            if (saved)
                a[v] = *saved;
            else
                a.erase(v);
            return result;
        }
        }
        return false;
    }

    const Graph & g_;
    std::vector<std::vector<Dist>> d_;
};

inline Graph complement(const Graph & g)
{
    Graph h(g.size());
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
            if (!g.adjacent(u, v))
                h.add_edge(u, v);
    for (const auto & [name, set] : g.colours())
        h.set_colour(name, set);
    for (const auto & [name, v] : g.constants())
        h.set_constant(name, v);
    for (const auto & [name, b] : g.flags())
        h.set_flag(name, b);
    return h;
}

inline Graph random_graph(int n, double p, std::mt19937 & rng)
{
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng))
                g.add_edge(u, v);
    return g;
}

inline fomc::BiRelation random_relation(int a, int b, double p, std::mt19937 & rng)
{
    std::bernoulli_distribution coin(p);
    fomc::BiRelation r(a, b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            if (coin(rng))
                r.set(i, j);
    return r;
}

/// Number of distinct traces of the columns on the A-subset `mask`.
inline int traces_on(const fomc::BiRelation & r, std::uint32_t mask)
{
    std::set<std::uint32_t> seen;
    for (int b = 0; b < r.b_size(); ++b) {
        std::uint32_t t = 0;
        for (int a = 0; a < r.a_size(); ++a)
            if (((mask >> a) & 1u) && r.test(a, b))
                t |= 1u << a;
        seen.insert(t);
    }
    return static_cast<int>(seen.size());
}

inline int vc_dimension(const fomc::BiRelation & r)
{
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << r.a_size()); ++mask) {
        const int k = __builtin_popcount(mask);
        if (k > best && traces_on(r, mask) == (1 << k))
            best = k;
    }
    return best;
}

inline long long shatter(const fomc::BiRelation & r, int m)
{
    m = std::min(m, r.a_size());
    if (r.b_size() == 0)
        return 0;
    long long best = 0;
    for (std::uint32_t mask = 0; mask < (1u << r.a_size()); ++mask)
        if (__builtin_popcount(mask) == m)
            best = std::max<long long>(best, traces_on(r, mask));
    return best;
}

/// Minimum witness order on each side, or -1 if none exists.
struct DualityOrders {
    int a_side = -1;
    int b_side = -1;
};

inline DualityOrders min_duality_orders(const fomc::BiRelation & r)
{
    DualityOrders out;
    const int na = r.a_size(), nb = r.b_size();
    for (std::uint32_t mask = 0; mask < (1u << na); ++mask) {
        const int k = __builtin_popcount(mask);
        if (out.a_side >= 0 && k >= out.a_side)
            continue;
        bool ok = true;
        for (int b = 0; b < nb && ok; ++b) {
            bool hit = false;
            for (int a = 0; a < na; ++a)
                if (((mask >> a) & 1u) && !r.test(a, b))
                    hit = true;
            ok = hit;
        }
        if (ok)
            out.a_side = k;
    }
    for (std::uint32_t mask = 0; mask < (1u << nb); ++mask) {
        const int k = __builtin_popcount(mask);
        if (out.b_side >= 0 && k >= out.b_side)
            continue;
        bool ok = true;
        for (int a = 0; a < na && ok; ++a) {
            bool hit = false;
            for (int b = 0; b < nb; ++b)
                if (((mask >> b) & 1u) && r.test(a, b))
                    hit = true;
            ok = hit;
        }
        if (ok)
            out.b_side = k;
    }
    return out;
}

/// Exact cliquewidth by closing the set of all reachable labelled graphs
/// under create, disjoint union, join and relabel. A join that adds a
/// non-edge of g kills the state, since edges are never removed. No
/// normal-form assumption is made. Only usable for n <= 6.
class BruteCliquewidth {
  public:
    explicit BruteCliquewidth(const Graph & g) : g_(g), n_(g.size())
    {
        if (n_ > 6)
            throw std::invalid_argument("brute cliquewidth limited to 6 vertices");
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                pair_index_[u][v] = pair_index_[v][u] = pairs_++;
    }

    int width()
    {
        if (n_ == 0)
            return 0;
        for (int k = 1;; ++k)
            if (reachable(k))
                return k;
    }

    bool reachable(int k)
    {
        k_ = k;
        std::uint32_t target_edges = 0;
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (g_.adjacent(u, v))
                    target_edges |= 1u << pair_index_[u][v];
        const std::uint32_t all = (1u << n_) - 1;

        std::unordered_set<std::uint64_t> seen;
        std::vector<std::uint64_t> states, work;
        auto push = [&](State s) {
            canonical(s);
            const std::uint64_t key = encode(s);
            if (seen.insert(key).second) {
                states.push_back(key);
                work.push_back(key);
            }
        };
        for (int v = 0; v < n_; ++v) {
            State s;
            s.vertices = 1u << v;
            s.label[v] = 0;
            push(s);
        }
        while (!work.empty()) {
            const State s = decode(work.back());
            work.pop_back();
            if (s.vertices == all && s.edges == target_edges)
                return true;
            // joins
            for (int i = 0; i < k_; ++i)
                for (int j = i + 1; j < k_; ++j) {
                    State t = s;
                    bool ok = true, changed = false;
                    for (int u = 0; u < n_ && ok; ++u)
                        for (int v = 0; v < n_ && ok; ++v) {
                            if (!in(s, u) || !in(s, v) || s.label[u] != i || s.label[v] != j)
                                continue;
                            if (!g_.adjacent(u, v))
                                ok = false;
                            const std::uint32_t bit = 1u << pair_index_[u][v];
                            changed |= !(t.edges & bit);
                            t.edges |= bit;
                        }
                    if (ok && changed)
                        push(t);
                }
            // relabels
            for (int i = 0; i < k_; ++i)
                for (int j = 0; j < k_; ++j) {
                    if (i == j)
                        continue;
                    State t = s;
                    bool any = false;
                    for (int u = 0; u < n_; ++u)
                        if (in(s, u) && t.label[u] == i) {
                            t.label[u] = j;
                            any = true;
                        }
                    if (any)
                        push(t);
                }
            // unions with every disjoint state seen so far, with all label renamings
            const std::size_t count = states.size();
            for (std::size_t idx = 0; idx < count; ++idx) {
                const State o = decode(states[idx]);
                if (o.vertices & s.vertices)
                    continue;
                for (const auto & perm : permutations()) {
                    State t = s;
                    t.vertices |= o.vertices;
                    t.edges |= o.edges;
                    bool fits = true;
                    for (int u = 0; u < n_; ++u)
                        if (in(o, u)) {
                            t.label[u] = perm[o.label[u]];
                            if (t.label[u] >= k_)
                                fits = false;
                        }
                    if (fits)
                        push(t);
                }
            }
        }
        return false;
    }

  private:
    struct State {
        std::uint32_t vertices = 0;
        std::uint32_t edges = 0;
        std::array<int, 6> label{0, 0, 0, 0, 0, 0};
    };

    static bool in(const State & s, int v) { return (s.vertices >> v) & 1u; }

    // Labels are interchangeable, so rename them in order of first use.
    void canonical(State & s) const
    {
        std::array<int, 8> map;
        map.fill(-1);
        int next = 0;
        for (int v = 0; v < n_; ++v) {
            if (!in(s, v)) {
                s.label[v] = 0;
                continue;
            }
            if (map[s.label[v]] < 0)
                map[s.label[v]] = next++;
            s.label[v] = map[s.label[v]];
        }
    }

    std::uint64_t encode(const State & s) const
    {
        std::uint64_t key = s.vertices | (static_cast<std::uint64_t>(s.edges) << 6);
        for (int v = 0; v < n_; ++v)
            key |= static_cast<std::uint64_t>(s.label[v]) << (21 + 3 * v);
        return key;
    }

    State decode(std::uint64_t key) const
    {
        State s;
        s.vertices = key & 63u;
        s.edges = (key >> 6) & 0x7fffu;
        for (int v = 0; v < n_; ++v)
            s.label[v] = static_cast<int>((key >> (21 + 3 * v)) & 7u);
        return s;
    }

    const std::vector<std::vector<int>> & permutations()
    {
        if (perms_k_ != k_) {
            perms_.clear();
            std::vector<int> p(static_cast<std::size_t>(k_));
            for (int i = 0; i < k_; ++i)
                p[i] = i;
            do
                perms_.push_back(p);
            while (std::next_permutation(p.begin(), p.end()));
            perms_k_ = k_;
        }
        return perms_;
    }

    const Graph & g_;
    int n_;
    int k_ = 1;
    int pairs_ = 0;
    int pair_index_[6][6] = {};
    std::vector<std::vector<int>> perms_;
    int perms_k_ = -1;
};

/// Candidate count by direct summation over S-sizes.
inline unsigned long long candidate_count(int n, int s)
{
    unsigned long long total = 0;
    for (int j = 0; j <= std::min(s, n); ++j) {
        unsigned long long c = 1;
        for (int i = 0; i < j; ++i)
            c = c * (n - i) / (i + 1);
        const unsigned long long labels = 1ULL << j;
        total += c * (1ULL << (labels * (labels + 1) / 2));
    }
    return total;
}

} // namespace oracle
