#include "fomc/cliquewidth.hpp"
#include "fomc/generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace fomc;

namespace {

bool reproduces(const CliquewidthResult & res, const Graph & g)
{
    if (!res.witness)
        return false;
    Graph built = eval_kexpression(res.witness, res.width);
    return built.same_edges(g) && kexpression_width(res.witness) <= res.width;
}

} // namespace

TEST_SUITE("cliquewidth")
{
    TEST_CASE("k-expression evaluation")
    {
        CHECK(eval_kexpression(parse_kexpression("j(1,2,u(v(1),v(2)))")).same_edges(clique_graph(2)));
        auto k3 = parse_kexpression("j(1,2,u(r(2,1,j(1,2,u(v(1),v(2)))),v(2)))");
        CHECK(eval_kexpression(k3).same_edges(clique_graph(3)));
        CHECK(kexpression_width(k3) == 2);
        CHECK(eval_kexpression(parse_kexpression("u(v(1),u(v(1),v(2)))")).edge_count() == 0);
        CHECK_THROWS_AS(eval_kexpression(parse_kexpression("j(1,1,v(1))")), KExpressionError);
        CHECK_THROWS_AS(eval_kexpression(parse_kexpression("j(1,3,u(v(1),v(3)))"), 2), KExpressionError);
        CHECK_THROWS_AS(parse_kexpression("j(1,2,"), KExpressionError);
        CHECK_THROWS_AS(parse_kexpression("v(0)"), KExpressionError);
        auto e = parse_kexpression("r(1,2,j(1,2,u(v(1),v(2))))");
        CHECK(to_string(e) == "r(1,2,j(1,2,u(v(1),v(2))))");
    }

    TEST_CASE("exact values")
    {
        CHECK(cliquewidth_exact(Graph(1), 4).width == 1);
        CHECK(cliquewidth_exact(Graph(5), 4).width == 1);
        for (int n = 2; n <= 8; ++n)
            CHECK(cliquewidth_exact(clique_graph(n), 4).width == 2);
        CHECK(cliquewidth_exact(path_graph(3), 4).width == 2);
        CHECK(cliquewidth_exact(path_graph(4), 4).width == 3);
        CHECK(cliquewidth_exact(cycle_graph(5), 4).width == 3);
        CHECK(cliquewidth_exact(grid_graph(3, 3), 5).width == 4);
        auto capped = cliquewidth_exact(path_graph(4), 2);
        CHECK(capped.exceeded);
        CHECK(capped.to_string() == ">2");
        CHECK_THROWS_AS(cliquewidth_exact(Graph(kCliquewidthVertexLimit + 1), 3), std::invalid_argument);
    }

    TEST_CASE("exact search agrees with the unrestricted state search")
    {
        std::mt19937 rng(41);
        for (int trial = 0; trial < 60; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 5);
            Graph g = oracle::random_graph(n, 0.5, rng);
            auto res = cliquewidth_exact(g, 6);
            REQUIRE_FALSE(res.exceeded);
            CHECK(res.width == oracle::BruteCliquewidth(g).width());
            CHECK(reproduces(res, g));
        }
        for (auto g : {path_graph(4), cycle_graph(5), path_graph(5), cycle_graph(6)})
            CHECK(cliquewidth_exact(g, 6).width == oracle::BruteCliquewidth(g).width());
    }

    TEST_CASE("witnesses rebuild larger graphs")
    {
        std::mt19937 rng(42);
        for (int trial = 0; trial < 15; ++trial) {
            Graph g = oracle::random_graph(8 + trial % 3, 0.35, rng);
            auto res = cliquewidth_exact(g, 8);
            REQUIRE_FALSE(res.exceeded);
            CHECK(reproduces(res, g));
            CHECK(res.width <= greedy_linear_width(g).width);
            CHECK(eval_kexpression(greedy_linear_width(g).expression).same_edges(g));
        }
    }

    TEST_CASE("monotone under induced subgraphs")
    {
        std::mt19937 rng(43);
        for (int trial = 0; trial < 40; ++trial) {
            Graph g = oracle::random_graph(8, 0.4, rng);
            std::vector<int> sub;
            for (int v = 0; v < 8; ++v)
                if (rng() % 3 != 0)
                    sub.push_back(v);
            if (sub.empty())
                continue;
            CHECK(cliquewidth_exact(induced_subgraph(g, sub).graph, 8).width <= cliquewidth_exact(g, 8).width);
        }
    }

    TEST_CASE("local cliquewidth")
    {
        Graph g = random_graph(9, 0.3, 2);
        auto l0 = local_cliquewidth(g, 0, 4);
        CHECK(l0.value == 1);
        for (int n = 2; n <= 6; ++n)
            CHECK(local_cliquewidth(clique_graph(n), 2, 4).value == 2);
        auto lg = local_cliquewidth(grid_graph(5, 5), 1, 4);
        CHECK(lg.max_ball == 5);
        int want = 0;
        Graph grid = grid_graph(5, 5);
        for (int v = 0; v < 25; ++v)
            want = std::max(want, oracle::BruteCliquewidth(induced_subgraph(grid, ball(grid, v, 1)).graph).width());
        CHECK(lg.value == want);
        for (int k = 6; k <= 8; ++k)
            CHECK(local_cliquewidth(grid_graph(k, k), 1, 4).value == lg.value);

        try {
            local_cliquewidth(grid_graph(5, 5), 2, 4, 10);
            FAIL("expected BallTooLarge");
        } catch (const BallTooLarge & e) {
            // (1,1) is the first vertex whose radius-2 ball has more than 10 vertices
            CHECK(e.vertex() == 6);
            CHECK(e.size() > 10);
        }
        auto two = local_cliquewidth(random_graph(10, 0.3, 8), 1, 5, 10, 2);
        auto one = local_cliquewidth(random_graph(10, 0.3, 8), 1, 5, 10, 1);
        CHECK(two.per_vertex == one.per_vertex);
    }
}
