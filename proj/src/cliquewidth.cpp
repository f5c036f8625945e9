#include "fomc/cliquewidth.hpp"

#include "fomc/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>

namespace fomc {

namespace kx {
KExprPtr create(int label, int vertex)
{
    auto e = std::make_shared<KExpr>();
    e->kind = KExpr::Kind::Create;
    e->a = label;
    e->vertex = vertex;
    return e;
}

KExprPtr unite(KExprPtr left, KExprPtr right)
{
    auto e = std::make_shared<KExpr>();
    e->kind = KExpr::Kind::Union;
    e->left = std::move(left);
    e->right = std::move(right);
    return e;
}

KExprPtr join(int i, int j, KExprPtr inner)
{
    auto e = std::make_shared<KExpr>();
    e->kind = KExpr::Kind::Join;
    e->a = i;
    e->b = j;
    e->left = std::move(inner);
    return e;
}

KExprPtr relabel(int from, int to, KExprPtr inner)
{
    auto e = std::make_shared<KExpr>();
    e->kind = KExpr::Kind::Relabel;
    e->a = from;
    e->b = to;
    e->left = std::move(inner);
    return e;
}
} // namespace kx

namespace {

void print(const KExpr & e, std::string & out)
{
    switch (e.kind) {
    case KExpr::Kind::Create:
        out += "v(" + std::to_string(e.a) + ")";
        return;
    case KExpr::Kind::Union:
        out += "u(";
        print(*e.left, out);
        out += ",";
        print(*e.right, out);
        out += ")";
        return;
    case KExpr::Kind::Join:
    case KExpr::Kind::Relabel:
        out += e.kind == KExpr::Kind::Join ? "j(" : "r(";
        out += std::to_string(e.a) + "," + std::to_string(e.b) + ",";
        print(*e.left, out);
        out += ")";
        return;
    }
}

class KParser {
  public:
    explicit KParser(std::string_view s) : s_(s) {}

    KExprPtr parse()
    {
        auto e = expr();
        skip();
        if (pos_ != s_.size())
            fail("trailing input");
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string & msg) const
    {
        throw KExpressionError("k-expression parse error at offset " + std::to_string(pos_) + ": " + msg);
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    void expect(char c)
    {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    int number()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_ || pos_ - start > 9)
            fail("expected label");
        const int value = std::stoi(std::string(s_.substr(start, pos_ - start)));
        if (value < 1)
            fail("labels start at 1");
        return value;
    }
    KExprPtr expr()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char op = s_[pos_++];
        expect('(');
        KExprPtr out;
        if (op == 'v') {
            out = kx::create(number());
        } else if (op == 'u') {
            auto l = expr();
            expect(',');
            out = kx::unite(l, expr());
        } else if (op == 'j' || op == 'r') {
            int a = number();
            expect(',');
            int b = number();
            expect(',');
            auto inner = expr();
            out = op == 'j' ? kx::join(a, b, inner) : kx::relabel(a, b, inner);
        } else {
            --pos_;
            fail("unknown operation");
        }
        expect(')');
        return out;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

std::string to_string(const KExprPtr & e)
{
    std::string out;
    print(*e, out);
    return out;
}

KExprPtr parse_kexpression(std::string_view text) { return KParser(text).parse(); }

int kexpression_width(const KExprPtr & e)
{
    if (!e)
        return 0;
    int w = std::max(e->a, e->b);
    return std::max({w, kexpression_width(e->left), kexpression_width(e->right)});
}

Graph eval_kexpression(const KExprPtr & root, int k)
{
    std::vector<int> leaf_vertex;
    std::vector<std::pair<int, int>> edges;

    auto check = [&](int label) {
        if (label < 1 || (k > 0 && label > k))
            throw KExpressionError("label " + std::to_string(label) + " out of range");
    };

    // Returns (leaf index, label) for every vertex of the subexpression.
    std::function<std::vector<std::pair<int, int>>(const KExpr &)> run =
        [&](const KExpr & e) -> std::vector<std::pair<int, int>> {
        switch (e.kind) {
        case KExpr::Kind::Create: {
            check(e.a);
            int id = static_cast<int>(leaf_vertex.size());
            leaf_vertex.push_back(e.vertex);
            return {{id, e.a}};
        }
        case KExpr::Kind::Union: {
            auto l = run(*e.left);
            auto r = run(*e.right);
            l.insert(l.end(), r.begin(), r.end());
            return l;
        }
        case KExpr::Kind::Join: {
            check(e.a);
            check(e.b);
            if (e.a == e.b)
                throw KExpressionError("join of label " + std::to_string(e.a) + " with itself");
            auto items = run(*e.left);
            for (const auto & [u, lu] : items)
                if (lu == e.a)
                    for (const auto & [v, lv] : items)
                        if (lv == e.b)
                            edges.emplace_back(u, v);
            return items;
        }
        case KExpr::Kind::Relabel: {
            check(e.a);
            check(e.b);
            auto items = run(*e.left);
            for (auto & [v, l] : items)
                if (l == e.a)
                    l = e.b;
            return items;
        }
        }
        return {};
    };
    run(*root);

    const int n = static_cast<int>(leaf_vertex.size());
    std::vector<int> id(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    bool mapped = true;
    for (int v : leaf_vertex) {
        if (v < 0 || v >= n || seen[v]) {
            mapped = false;
            break;
        }
        seen[v] = true;
    }
    for (int i = 0; i < n; ++i)
        id[i] = mapped ? leaf_vertex[i] : i;

    Graph g(n);
    for (const auto & [u, v] : edges)
        g.add_edge(id[u], id[v]);
    return g;
}

namespace {

using Mask = std::uint32_t;

int lowest(Mask m) { return __builtin_ctz(m); }
int popcount(Mask m) { return __builtin_popcount(m); }

class ExactSearch {
  public:
    ExactSearch(const Graph & g, int k) : n_(g.size()), k_(k)
    {
        full_ = n_ == 32 ? ~Mask{0} : (Mask{1} << n_) - 1;
        for (int v = 0; v < n_; ++v) {
            Mask m = 0;
            g.neighbours(v).for_each([&](int w) { m |= Mask{1} << w; });
            adj_.push_back(m);
        }
        levels_.resize(std::size_t{1} << n_);
    }

    /// Witness of width <= k, or nullptr.
    KExprPtr run()
    {
        for (int v = 0; v < n_; ++v)
            insert(Mask{1} << v, {Mask{1} << v}, State{});
        if (n_ == 1)
            return build(full_, 0, {1});

        std::vector<std::vector<Mask>> by_size(static_cast<std::size_t>(n_) + 1);
        for (Mask x = 1; x <= full_ && x != 0; ++x) {
            by_size[popcount(x)].push_back(x);
            if (x == full_)
                break;
        }
        for (int size = 2; size <= n_; ++size)
            for (Mask x : by_size[size]) {
                if (type_count(x) > k_)
                    continue;
                const Mask lo = x & (~x + 1);
                const Mask rest = x ^ lo;
                for (Mask sub = rest;; sub = (sub - 1) & rest) {
                    const Mask x1 = lo | sub;
                    const Mask x2 = x ^ x1;
                    if (x2 != 0 && !levels_[x1].states.empty() && !levels_[x2].states.empty()) {
                        combine(x, x1, x2);
                        if (x == full_ && !levels_[x].states.empty()) {
                            std::vector<int> names;
                            for (std::size_t i = 0; i < levels_[x].states[0].blocks.size(); ++i)
                                names.push_back(static_cast<int>(i) + 1);
                            return build(x, 0, names);
                        }
                    }
                    if (sub == 0)
                        break;
                }
            }
        return nullptr;
    }

  private:
    struct State {
        std::vector<Mask> blocks; // ordered by lowest vertex
        int kind = 0;             // 0 leaf, 1 union, 2 coarsening of `pre`
        Mask x1 = 0;
        int s1 = -1, s2 = -1, pre = -1;
    };
    struct Level {
        std::vector<State> states;
        std::unordered_map<std::uint64_t, int> index;
    };

    Mask outside(Mask x) const { return full_ & ~x; }
    Mask type_of(int v, Mask x) const { return adj_[v] & outside(x); }

    int type_count(Mask x) const
    {
        std::vector<Mask> types;
        for (Mask m = x; m; m &= m - 1) {
            Mask t = type_of(lowest(m), x);
            if (std::find(types.begin(), types.end(), t) == types.end())
                types.push_back(t);
        }
        return static_cast<int>(types.size());
    }

    std::uint64_t key(Mask x, const std::vector<Mask> & blocks) const
    {
        std::uint64_t out = 0;
        int shift = 0;
        for (Mask m = x; m; m &= m - 1) {
            const Mask bit = m & (~m + 1);
            for (std::size_t i = 0; i < blocks.size(); ++i)
                if (blocks[i] & bit) {
                    out |= static_cast<std::uint64_t>(i) << shift;
                    break;
                }
            shift += 4;
        }
        return out;
    }

    // Returns the index of the state and whether it is new.
    std::pair<int, bool> insert(Mask x, std::vector<Mask> blocks, State st)
    {
        std::sort(blocks.begin(), blocks.end(), [](Mask a, Mask b) { return lowest(a) < lowest(b); });
        auto & level = levels_[x];
        auto [it, fresh] = level.index.emplace(key(x, blocks), static_cast<int>(level.states.size()));
        if (!fresh)
            return {it->second, false};
        st.blocks = std::move(blocks);
        level.states.push_back(std::move(st));
        return {it->second, true};
    }

    bool complete(Mask a, Mask b) const
    {
        for (Mask m = a; m; m &= m - 1)
            if ((adj_[lowest(m)] & b) != b)
                return false;
        return true;
    }

    bool no_edges(Mask a, Mask b) const
    {
        for (Mask m = a; m; m &= m - 1)
            if (adj_[lowest(m)] & b)
                return false;
        return true;
    }

    void combine(Mask x, Mask x1, Mask x2)
    {
        const auto & l1 = levels_[x1].states;
        const auto & l2 = levels_[x2].states;
        const Mask out = outside(x);
        enum Status : std::uint8_t { None, Full };

        for (int i1 = 0; i1 < static_cast<int>(l1.size()); ++i1) {
            const auto & b1 = l1[i1].blocks;
            const int p = static_cast<int>(b1.size());
            for (int i2 = 0; i2 < static_cast<int>(l2.size()); ++i2) {
                const auto & b2 = l2[i2].blocks;
                const int q = static_cast<int>(b2.size());

                std::vector<std::uint8_t> status(static_cast<std::size_t>(p * q));
                bool mixed = false;
                for (int a = 0; a < p && !mixed; ++a)
                    for (int b = 0; b < q && !mixed; ++b) {
                        if (complete(b1[a], b2[b]))
                            status[a * q + b] = Full;
                        else if (no_edges(b1[a], b2[b]))
                            status[a * q + b] = None;
                        else
                            mixed = true;
                    }
                if (mixed)
                    continue;

                std::vector<Mask> t1(p), t2(q);
                for (int a = 0; a < p; ++a)
                    t1[a] = adj_[lowest(b1[a])] & out;
                for (int b = 0; b < q; ++b)
                    t2[b] = adj_[lowest(b2[b])] & out;

                const int need = p + q - k_;
                std::vector<int> match(static_cast<std::size_t>(p), -1);
                std::function<void(int, Mask, int)> choose = [&](int a, Mask used, int matched) {
                    if (matched + std::min(p - a, q - matched) < need)
                        return;
                    if (a == p) {
                        finish(x, x1, i1, i2, b1, b2, match, used, status, q);
                        return;
                    }
                    match[a] = -1;
                    choose(a + 1, used, matched);
                    for (int b = 0; b < q; ++b) {
                        if ((used >> b) & 1u || status[a * q + b] != None || t1[a] != t2[b])
                            continue;
                        match[a] = b;
                        choose(a + 1, used | (Mask{1} << b), matched + 1);
                    }
                    match[a] = -1;
                };
                choose(0, 0, 0);
            }
        }
    }

    void finish(Mask x, Mask x1, int i1, int i2, const std::vector<Mask> & b1, const std::vector<Mask> & b2,
                const std::vector<int> & match, Mask used, const std::vector<std::uint8_t> & status, int q)
    {
        // classes as (block of child 1 or -1, block of child 2 or -1)
        std::vector<std::pair<int, int>> cls;
        for (int a = 0; a < static_cast<int>(b1.size()); ++a)
            cls.emplace_back(a, match[a]);
        for (int b = 0; b < q; ++b)
            if (!((used >> b) & 1u))
                cls.emplace_back(-1, b);

        auto full = [&](int a, int b) { return a >= 0 && b >= 0 && status[a * q + b] != 0; };
        for (std::size_t c = 0; c < cls.size(); ++c)
            for (std::size_t d = c + 1; d < cls.size(); ++d) {
                const auto [c1, c2] = cls[c];
                const auto [d1, d2] = cls[d];
                if (!full(c1, d2) && !full(d1, c2))
                    continue;
                // a join here adds every pair between the two classes
                if (c1 >= 0 && d2 >= 0 && !full(c1, d2))
                    return;
                if (d1 >= 0 && c2 >= 0 && !full(d1, c2))
                    return;
                if (c1 >= 0 && d1 >= 0 && !complete(b1[c1], b1[d1]))
                    return;
                if (c2 >= 0 && d2 >= 0 && !complete(b2[c2], b2[d2]))
                    return;
            }

        std::vector<Mask> blocks;
        for (const auto & [a, b] : cls)
            blocks.push_back((a >= 0 ? b1[a] : 0) | (b >= 0 ? b2[b] : 0));
        State st;
        st.kind = 1;
        st.x1 = x1;
        st.s1 = i1;
        st.s2 = i2;
        auto [idx, fresh] = insert(x, blocks, st);
        if (fresh && x != full_)
            add_coarsenings(x, idx);
    }

    void add_coarsenings(Mask x, int idx)
    {
        const std::vector<Mask> blocks = levels_[x].states[idx].blocks;
        std::map<Mask, std::vector<int>> groups;
        for (int i = 0; i < static_cast<int>(blocks.size()); ++i)
            groups[type_of(lowest(blocks[i]), x)].push_back(i);
        std::vector<std::vector<int>> gs;
        for (auto & [_, members] : groups)
            if (members.size() > 1)
                gs.push_back(members);
        if (gs.empty())
            return;

        // assignment[i] = representative block index that block i merges into
        std::vector<int> target(blocks.size());
        for (std::size_t i = 0; i < blocks.size(); ++i)
            target[i] = static_cast<int>(i);
        std::function<void(std::size_t, std::size_t, std::vector<int> &)> rec = [&](std::size_t g, std::size_t pos,
                                                                                  std::vector<int> & heads) {
            if (g == gs.size()) {
                std::vector<Mask> merged;
                std::vector<int> slot(blocks.size(), -1);
                for (std::size_t i = 0; i < blocks.size(); ++i) {
                    int t = target[i];
                    if (slot[t] < 0) {
                        slot[t] = static_cast<int>(merged.size());
                        merged.push_back(0);
                    }
                    merged[slot[t]] |= blocks[i];
                }
                if (merged.size() == blocks.size())
                    return;
                State st;
                st.kind = 2;
                st.pre = idx;
                insert(x, std::move(merged), st);
                return;
            }
            const auto & members = gs[g];
            if (pos == members.size()) {
                std::vector<int> next;
                rec(g + 1, 0, next);
                return;
            }
            const int b = members[pos];
            for (std::size_t h = 0; h < heads.size(); ++h) {
                target[b] = heads[h];
                rec(g, pos + 1, heads);
            }
            target[b] = b;
            heads.push_back(b);
            rec(g, pos + 1, heads);
            heads.pop_back();
        };
        std::vector<int> heads;
        rec(0, 0, heads);
    }

    KExprPtr build(Mask x, int idx, const std::vector<int> & names)
    {
        const State st = levels_[x].states[idx];
        if (st.kind == 0)
            return kx::create(names[0], lowest(x));

        auto block_of = [&](Mask part) {
            for (std::size_t c = 0; c < st.blocks.size(); ++c)
                if (st.blocks[c] & part)
                    return static_cast<int>(c);
            return -1;
        };

        if (st.kind == 2) {
            const auto & pre = levels_[x].states[st.pre].blocks;
            std::vector<int> pre_names(pre.size(), 0);
            std::vector<bool> taken(static_cast<std::size_t>(k_) + 1, false);
            for (int nm : names)
                taken[nm] = true;
            std::vector<bool> headed(st.blocks.size(), false);
            std::vector<std::pair<int, int>> moves;
            int spare = 1;
            for (std::size_t b = 0; b < pre.size(); ++b) {
                const int c = block_of(pre[b]);
                if (!headed[c]) {
                    headed[c] = true;
                    pre_names[b] = names[c];
                    continue;
                }
                while (taken[spare])
                    ++spare;
                taken[spare] = true;
                pre_names[b] = spare;
                moves.emplace_back(spare, names[c]);
            }
            auto e = build(x, st.pre, pre_names);
            for (const auto & [from, to] : moves)
                e = kx::relabel(from, to, e);
            return e;
        }

        const Mask x2 = x ^ st.x1;
        const auto & b1 = levels_[st.x1].states[st.s1].blocks;
        const auto & b2 = levels_[x2].states[st.s2].blocks;
        std::vector<int> n1, n2;
        for (Mask b : b1)
            n1.push_back(names[block_of(b)]);
        for (Mask b : b2)
            n2.push_back(names[block_of(b)]);
        auto e = kx::unite(build(st.x1, st.s1, n1), build(x2, st.s2, n2));
        for (std::size_t c = 0; c < st.blocks.size(); ++c)
            for (std::size_t d = c + 1; d < st.blocks.size(); ++d) {
                const Mask c1 = st.blocks[c] & st.x1, c2 = st.blocks[c] & x2;
                const Mask d1 = st.blocks[d] & st.x1, d2 = st.blocks[d] & x2;
                if (!no_edges(c1, d2) || !no_edges(c2, d1))
                    e = kx::join(names[c], names[d], e);
            }
        return e;
    }

    int n_;
    int k_;
    Mask full_ = 0;
    std::vector<Mask> adj_;
    std::vector<Level> levels_;
};

} // namespace

CliquewidthResult cliquewidth_exact(const Graph & g, int k_cap)
{
    if (g.size() > kCliquewidthVertexLimit)
        throw std::invalid_argument("cliquewidth_exact: " + std::to_string(g.size()) + " vertices exceeds the limit of " +
                                    std::to_string(kCliquewidthVertexLimit));
    CliquewidthResult out;
    out.k_cap = k_cap;
    if (g.size() == 0)
        return out;
    for (int k = 1; k <= std::min(k_cap, g.size()); ++k) {
        ExactSearch search(g, k);
        if (auto w = search.run()) {
            out.width = k;
            out.witness = w;
            return out;
        }
    }
    out.exceeded = true;
    return out;
}

GreedyWidth greedy_linear_width(const Graph & g)
{
    GreedyWidth out;
    const int n = g.size();
    if (n == 0)
        return out;

    std::vector<int> order;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        std::deque<int> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            order.push_back(u);
            g.neighbours(u).for_each([&](int w) {
                if (!seen[w]) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            });
        }
    }

    Bitset placed(static_cast<std::size_t>(n));
    struct Class {
        Bitset members;
        int label;
    };
    std::vector<Class> classes;
    KExprPtr e;
    for (int v : order) {
        std::vector<bool> used(static_cast<std::size_t>(n) + 2, false);
        for (const auto & c : classes)
            used[c.label] = true;
        int lv = 1;
        while (used[lv])
            ++lv;
        out.width = std::max(out.width, static_cast<int>(classes.size()) + 1);
        auto leaf = kx::create(lv, v);
        e = e ? kx::unite(e, leaf) : leaf;
        for (const auto & c : classes)
            if (c.members.intersects(g.neighbours(v)))
                e = kx::join(c.label, lv, e);
        placed.set(v);
        Bitset single(static_cast<std::size_t>(n));
        single.set(v);
        classes.push_back({single, lv});

        // merge classes whose members see the same unplaced vertices
        std::vector<Class> merged;
        std::vector<Bitset> types;
        for (auto & c : classes) {
            Bitset t = g.neighbours(c.members.find_first());
            t.subtract(placed);
            auto it = std::find(types.begin(), types.end(), t);
            if (it == types.end()) {
                types.push_back(t);
                merged.push_back(c);
            } else {
                auto & into = merged[it - types.begin()];
                e = kx::relabel(c.label, into.label, e);
                into.members |= c.members;
            }
        }
        classes = std::move(merged);
    }
    out.expression = e;
    return out;
}

LocalCliquewidth local_cliquewidth(const Graph & g, Dist r, int k_cap, int budget, int workers)
{
    LocalCliquewidth out;
    out.k_cap = k_cap;
    const int n = g.size();
    std::vector<std::vector<int>> balls(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        balls[v] = ball(g, v, r);
        const int size = static_cast<int>(balls[v].size());
        out.max_ball = std::max(out.max_ball, size);
        if (size > budget || size > kCliquewidthVertexLimit)
            throw BallTooLarge(v, size, budget);
    }

    // Balls with identical induced edge lists share one computation.
    std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> slot_of;
    std::vector<Graph> distinct;
    std::vector<int> slot(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        auto sub = induced_subgraph(g, balls[v]).graph;
        auto [it, fresh] = slot_of.emplace(std::pair{sub.size(), sub.edges()}, static_cast<int>(distinct.size()));
        if (fresh)
            distinct.push_back(std::move(sub));
        slot[v] = it->second;
    }
    std::vector<CliquewidthResult> results(distinct.size());
    parallel_for(distinct.size(), workers, [&](std::size_t i) { results[i] = cliquewidth_exact(distinct[i], k_cap); });

    for (int v = 0; v < n; ++v) {
        const auto & res = results[slot[v]];
        out.per_vertex.push_back(res.exceeded ? k_cap + 1 : res.width);
        if (out.argmax < 0 || out.per_vertex[v] > out.value) {
            out.argmax = v;
            out.value = out.per_vertex[v];
        }
    }
    out.exceeded = out.value > k_cap;
    return out;
}

nlohmann::ordered_json lcw_report(const LocalCliquewidth & l, Dist r)
{
    nlohmann::ordered_json out;
    out["r"] = r;
    out["lcw"] = l.exceeded ? nlohmann::ordered_json(l.to_string()) : nlohmann::ordered_json(l.value);
    out["exceeded"] = l.exceeded;
    out["k_cap"] = l.k_cap;
    out["argmax"] = l.argmax;
    out["max_ball"] = l.max_ball;
    out["per_vertex"] = l.per_vertex;
    return out;
}

} // namespace fomc
