#include "fomc/generators.hpp"
#include "fomc/interpret.hpp"
#include "fomc/locality.hpp"
#include "fomc/slemma.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace fomc;

namespace {

std::optional<Violation> brute_generic(const MetricRelation & m, const Partition & p, Dist r)
{
    const int n = m.size();
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            for (int u2 = 0; u2 < n; ++u2)
                for (int v2 = 0; v2 < n; ++v2)
                    if (p.cell_of[u] == p.cell_of[u2] && p.cell_of[v] == p.cell_of[v2] && m.far(u, v, r) &&
                        m.far(u2, v2, r) && m.related(u, v) != m.related(u2, v2))
                        return Violation{u, v, u2, v2};
    return std::nullopt;
}

// Brute force over all quadruples for the witness-set condition.
bool brute_sset_ok(const MetricRelation & m, const std::vector<int> & S, Dist radius)
{
    const int n = m.size();
    auto same_row = [&](int a, int b) {
        for (int s : S)
            if (m.related(a, s) != m.related(b, s))
                return false;
        return true;
    };
    auto same_col = [&](int a, int b) {
        for (int s : S)
            if (m.related(s, a) != m.related(s, b))
                return false;
        return true;
    };
    for (int u = 0; u < n; ++u)
        for (int u2 = 0; u2 < n; ++u2) {
            if (!same_row(u, u2))
                continue;
            for (int v = 0; v < n; ++v)
                for (int v2 = 0; v2 < n; ++v2)
                    if (same_col(v, v2) && m.far(u, v, radius) && m.far(u2, v2, radius) &&
                        m.related(u, v) != m.related(u2, v2))
                        return false;
        }
    return true;
}

MetricRelation interpreted(const Graph & g, const std::string & name)
{
    auto h = apply_interpretation(g, named_interpretation(name));
    return metric_relation(h, g);
}

} // namespace

TEST_SUITE("locality")
{
    TEST_CASE("check_r_generic examples")
    {
        auto m = metric_relation(path_graph(3));
        CHECK_FALSE(check_r_generic(m, Partition::single_cell(3), 1));

        Graph g = random_graph(8, 0.4, 9);
        auto mg = metric_relation(g);
        std::vector<std::vector<int>> singles;
        for (int v = 0; v < 8; ++v)
            singles.push_back({v});
        CHECK_FALSE(check_r_generic(mg, Partition::from_cells(8, singles), 1));

        // half-graph H_4 as the relation, distances from a path through all eight vertices
        MetricRelation mh = metric_relation(half_graph(4));
        mh.dist = all_pairs_distances(path_graph(8));
        auto v = check_r_generic(mh, Partition::single_cell(8), 1);
        REQUIRE(v);
        CHECK(mh.far(v->u, v->v, 1));
        CHECK(mh.far(v->u2, v->v2, 1));
        CHECK(mh.related(v->u, v->v) != mh.related(v->u2, v->v2));
    }

    TEST_CASE("refine_partition examples")
    {
        CHECK(refine_partition(metric_relation(Graph(6)), 1).size() == 1);
        CHECK(refine_partition(metric_relation(clique_graph(6)), 1).size() == 1);
        CHECK(refine_partition(metric_relation(path_graph(10)), 20).size() == 1);
    }

    TEST_CASE("refinement reaches a generic partition on random instances")
    {
        std::mt19937 rng(12);
        for (int trial = 0; trial < 60; ++trial) {
            Graph g = oracle::random_graph(9, 0.25, rng);
            const auto & names = interpretation_names();
            auto m = interpreted(g, names[trial % 4]);
            const Dist r = 1 + trial % 2;
            RefineStats stats;
            auto p = refine_partition(m, r, stats);
            p.validate(m.size());
            CHECK(p.size() == stats.splits + 1);
            CHECK(p.size() <= std::max(1, m.size()));
            CHECK_FALSE(check_r_generic(m, p, r));
            CHECK_FALSE(brute_generic(m, p, r));
            CHECK(refine_partition(m, r).cells == p.cells);
        }
    }

    TEST_CASE("generic_status")
    {
        auto mk = metric_relation(clique_graph(4));
        CHECK(generic_status(mk, {0, 1, 2, 3}, {0, 1, 2, 3}, 1) == GenericStatus::NoFarPairs);
        auto me = metric_relation(Graph(4));
        CHECK(generic_status(me, {0, 1, 2, 3}, {0, 1, 2, 3}, 1) == GenericStatus::GenericallyNotE);

        // complement of a perfect matching on 8 vertices, G-distances from the matching itself
        Graph matching(8);
        for (int i = 0; i < 8; i += 2)
            matching.add_edge(i, i + 1);
        auto m = interpreted(matching, "complement");
        auto p = refine_partition(m, 1);
        bool saw_e = false;
        for (int c = 0; c < p.size(); ++c)
            for (int d = 0; d < p.size(); ++d) {
                auto s = generic_status(m, p.cells[c], p.cells[d], 1);
                CHECK(s != GenericStatus::Contradictory);
                saw_e |= s == GenericStatus::GenericallyE;
            }
        CHECK(saw_e);

        Graph hp = half_graph(3);
        auto mh = metric_relation(hp);
        CHECK(generic_status(mh, {0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5}, 0) == GenericStatus::Contradictory);
    }

    TEST_CASE("square of path cell count does not depend on the length")
    {
        for (Dist r : {Dist{2}, Dist{3}}) {
            int first = -1;
            for (int n = 20; n <= 60; n += 10) {
                auto m = interpreted(path_graph(n), "square");
                const int cells = refine_partition(m, r).size();
                if (first < 0)
                    first = cells;
                CHECK(cells == first);
            }
        }
    }
}

TEST_SUITE("slemma")
{
    TEST_CASE("classify_cell examples")
    {
        auto d1 = all_pairs_distances(Graph(1));
        auto c1 = classify_cell({0}, d1, 1);
        CHECK(c1.kind == CellClass::Kind::Small);
        CHECK(c1.centre == 0);

        auto d3 = all_pairs_distances(Graph(3));
        auto c3 = classify_cell({0, 1, 2}, d3, 4);
        CHECK(c3.kind == CellClass::Kind::Large);

        for (Dist r : {Dist{1}, Dist{2}, Dist{3}}) {
            const int n = static_cast<int>(4 * r + 2);
            auto dp = all_pairs_distances(path_graph(n));
            std::vector<int> all;
            for (int i = 0; i < n; ++i)
                all.push_back(i);
            auto c = classify_cell(all, dp, r);
            REQUIRE(c.kind == CellClass::Kind::Split);
            for (const auto * half : {&c.c1, &c.c2}) {
                REQUIRE_FALSE(half->empty());
                auto sub = classify_cell(*half, dp, r);
                CHECK(sub.kind == CellClass::Kind::Small);
            }
            CHECK(c.c1.size() + c.c2.size() == all.size());
        }
    }

    TEST_CASE("classify_cell witnesses satisfy their conditions")
    {
        std::mt19937 rng(31);
        for (int trial = 0; trial < 100; ++trial) {
            Graph g = oracle::random_graph(14, 0.12, rng);
            auto d = all_pairs_distances(g);
            std::vector<int> cell;
            for (int v = 0; v < 14; ++v)
                if (rng() % 2 == 0)
                    cell.push_back(v);
            if (cell.empty())
                cell.push_back(0);
            const Dist r = 1 + trial % 2;
            auto c = classify_cell(cell, d, r);
            bool has_triple = false, has_centre = false;
            for (int a : cell)
                for (int b : cell)
                    for (int e : cell)
                        has_triple |= d(a, b) > 2 * r && d(a, e) > 2 * r && d(b, e) > 2 * r;
            for (int a : cell) {
                bool ok = true;
                for (int b : cell)
                    ok &= d(a, b) <= 2 * r;
                has_centre |= ok;
            }
            if (c.kind == CellClass::Kind::Large) {
                auto [a, b, e] = c.triple;
                CHECK(d(a, b) > 2 * r);
                CHECK(d(a, e) > 2 * r);
                CHECK(d(b, e) > 2 * r);
            } else if (c.kind == CellClass::Kind::Small) {
                CHECK_FALSE(has_triple);
                for (int v : cell)
                    CHECK(d(c.centre, v) <= 2 * r);
            } else {
                CHECK_FALSE(has_triple);
                CHECK_FALSE(has_centre);
                CHECK(classify_cell(c.c1, d, r).kind == CellClass::Kind::Small);
                CHECK(classify_cell(c.c2, d, r).kind == CellClass::Kind::Small);
            }
        }
    }

    TEST_CASE("build_s_set small examples")
    {
        auto m1 = metric_relation(Graph(1));
        auto s1 = build_s_set(m1, Partition::single_cell(1), 1);
        CHECK(s1.S == std::vector<int>{0});

        auto me = metric_relation(Graph(5));
        auto se = build_s_set(me, refine_partition(me, 1), 1);
        CHECK(se.S.size() <= 4);
        CHECK_FALSE(verify_s_set(me, se.S, 5));

        auto sk = s_for_interpretation(clique_graph(6), named_interpretation("complement"), 1);
        CHECK(sk.sset.S.size() <= 2);
        CHECK_FALSE(verify_s_set(sk.metric, sk.sset.S, sk.radius));

        auto sg = s_for_interpretation(grid_graph(6, 6), named_interpretation("square"), 2);
        CHECK(sg.radius == 10);
        CHECK_FALSE(verify_s_set(sg.metric, sg.sset.S, sg.radius));
    }

    TEST_CASE("witness sets on random instances")
    {
        std::mt19937 rng(77);
        for (int trial = 0; trial < 40; ++trial) {
            Graph g = oracle::random_graph(10, 0.22, rng);
            const auto & names = interpretation_names();
            const Dist r = 1 + trial % 2;
            auto ss = s_for_interpretation(g, named_interpretation(names[trial % 4]), r);
            CHECK(ss.radius == 5 * r);
            CHECK(static_cast<long long>(ss.sset.S.size()) <= ss.sset.size_bound());
            CHECK(ss.sset.t_effective <= 2 * ss.partition.size());
            CHECK(std::is_sorted(ss.sset.S.begin(), ss.sset.S.end()));
            auto v = verify_s_set(ss.metric, ss.sset.S, ss.radius);
            CHECK_FALSE(v);
            CHECK(brute_sset_ok(ss.metric, ss.sset.S, ss.radius));
            for (const auto & e : ss.sset.provenance)
                CHECK(std::binary_search(ss.sset.S.begin(), ss.sset.S.end(), e.vertex));
        }
    }

    TEST_CASE("verify_s_set examples and a planted violation")
    {
        auto m0 = metric_relation(Graph(1));
        CHECK_FALSE(verify_s_set(m0, {}, 0));

        auto m = metric_relation(path_graph(6));
        std::vector<int> all{0, 1, 2, 3, 4, 5};
        CHECK_FALSE(verify_s_set(m, all, 0));

        auto v = verify_s_set(m, {}, 0);
        REQUIRE(v);
        CHECK(m.related(v->u, v->v) != m.related(v->u2, v->v2));
        CHECK_FALSE(brute_sset_ok(m, {}, 0));

        // agrees with the brute-force scan on arbitrary guards
        std::mt19937 rng(5);
        for (int trial = 0; trial < 60; ++trial) {
            Graph g = oracle::random_graph(8, 0.3, rng);
            auto mg = metric_relation(g);
            std::vector<int> S;
            for (int i = 0; i < 8; ++i)
                if (rng() % 4 == 0)
                    S.push_back(i);
            const Dist radius = trial % 3;
            CHECK(verify_s_set(mg, S, radius).has_value() == !brute_sset_ok(mg, S, radius));
        }
    }
}
