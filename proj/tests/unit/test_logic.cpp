#include "fomc/eval.hpp"
#include "fomc/formula.hpp"
#include "fomc/generators.hpp"
#include "fomc/parser.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace fomc;

namespace {

const std::vector<std::string> kVars = {"x", "y", "z", "w"};

Formula random_formula(std::mt19937 & rng, int depth)
{
    auto var = [&] { return Term::var(kVars[rng() % kVars.size()]); };
    auto term = [&] { return (rng() % 5 == 0) ? Term::constant("c") : var(); };
    if (depth == 0 || rng() % 4 == 0) {
        switch (rng() % 6) {
        case 0:
            return fo::edge(term(), term());
        case 1:
            return fo::colour("red", term());
        case 2:
            return fo::equal(term(), term());
        case 3:
            return fo::flag("f");
        case 4:
            return fo::dist_le(static_cast<Dist>(rng() % 3), term(), term());
        default:
            return fo::truth(rng() % 2 == 0);
        }
    }
    switch (rng() % 7) {
    case 0:
        return fo::negate(random_formula(rng, depth - 1));
    case 1:
        return fo::conj({random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
    case 2:
        return fo::disj({random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
    case 3:
        return fo::exclusive_or(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4:
        return fo::implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5:
        return fo::exists(kVars[rng() % kVars.size()], random_formula(rng, depth - 1));
    default:
        return fo::forall(kVars[rng() % kVars.size()], random_formula(rng, depth - 1));
    }
}

Graph decorated_random(std::mt19937 & rng, int n)
{
    Graph g = oracle::random_graph(n, 0.3, rng);
    std::vector<int> red;
    for (int v = 0; v < n; ++v)
        if (rng() % 3 == 0)
            red.push_back(v);
    g.set_colour("red", red);
    g.set_flag("f", rng() % 2 == 0);
    g.set_constant("c", static_cast<int>(rng() % n));
    return g;
}

Assignment full_assignment(std::mt19937 & rng, int n)
{
    Assignment a;
    for (const auto & v : kVars)
        a[v] = static_cast<int>(rng() % n);
    return a;
}

} // namespace

TEST_SUITE("logic")
{
    TEST_CASE("parser examples")
    {
        Formula e = parse_formula("E(x,y)");
        CHECK(e.op() == Op::Edge);
        Formula s = parse_formula("exists x. forall y. (x=y | E(x,y))");
        CHECK(free_variables(s).empty());
        CHECK(quantifier_rank(s) == 2);
        try {
            parse_formula("E(x,");
            FAIL("expected a parse error");
        } catch (const ParseError & err) {
            CHECK(err.offset() == 4);
        }
        CHECK_THROWS_AS(parse_formula("exists E. true"), ParseError);
        CHECK_THROWS_AS(parse_formula("E(x,y) &"), ParseError);
        CHECK_THROWS_AS(parse_formula("dist<=(x,y)"), ParseError);
    }

    TEST_CASE("precedence and scope")
    {
        CHECK(parse_formula("~E(x,y) & E(y,z) | true") ==
              fo::disj({fo::conj({fo::negate(fo::edge(fo::x(), fo::y())), fo::edge(fo::y(), Term::var("z"))}),
                        fo::truth(true)}));
        CHECK(parse_formula("true -> false -> true") ==
              fo::implies(fo::truth(true), fo::implies(fo::truth(false), fo::truth(true))));
        CHECK(parse_formula("true | false ^ true") ==
              fo::exclusive_or(fo::disj({fo::truth(true), fo::truth(false)}), fo::truth(true)));
        CHECK(parse_formula("exists z. E(x,z) & E(z,y)") ==
              fo::exists("z", fo::conj({fo::edge(fo::x(), Term::var("z")), fo::edge(Term::var("z"), fo::y())})));
        CHECK(parse_formula("x != y") == fo::negate(fo::equal(fo::x(), fo::y())));
        CHECK(parse_formula("dist<=3(x,@c)") == fo::dist_le(3, fo::x(), Term::constant("c")));
        CHECK(parse_formula("U_red(x) & flag(marked)") ==
              fo::conj({fo::colour("red", fo::x()), fo::flag("marked")}));
    }

    TEST_CASE("print and parse round trip")
    {
        std::mt19937 rng(99);
        for (int i = 0; i < 500; ++i) {
            Formula f = random_formula(rng, 4);
            const std::string text = to_string(f);
            Formula back = parse_formula(text);
            INFO(text);
            CHECK(back == f);
            CHECK(to_string(back) == text);
        }
    }

    TEST_CASE("quantifier rank")
    {
        CHECK(quantifier_rank(parse_formula("E(x,y)")) == 0);
        CHECK(quantifier_rank(parse_formula("exists x. exists y. E(x,y)")) == 2);
        CHECK(quantifier_rank(parse_formula("E(x,y) | exists z. (E(x,z) & E(z,y))")) == 1);
        CHECK(quantifier_rank(parse_formula("dist<=5(x,y)")) == 0);
    }

    TEST_CASE("eval examples")
    {
        CHECK(evaluate(clique_graph(3), parse_formula("forall x. forall y. (x=y | E(x,y))")));
        Formula sq = parse_formula("E(x,y) | exists z. (E(x,z) & E(z,y))");
        CHECK(evaluate(path_graph(3), sq, {{"x", 0}, {"y", 2}}));
        Graph h3 = half_graph(3);
        Formula e = parse_formula("E(x,y)");
        CHECK(evaluate(h3, e, {{"x", 0}, {"y", 5}}));
        CHECK_FALSE(evaluate(h3, e, {{"x", 2}, {"y", 3}}));
        CHECK_THROWS_AS(evaluate(h3, e, {{"x", 0}}), EvalError);
        CHECK_THROWS_AS(evaluate(h3, parse_formula("flag(nope)")), EvalError);
        CHECK_THROWS_AS(evaluate(h3, parse_formula("U_nope(x)"), {{"x", 0}}), EvalError);
        CHECK_THROWS_AS(evaluate(h3, parse_formula("E(x,@nope)"), {{"x", 0}}), EvalError);
    }

    TEST_CASE("evaluator agrees with the recursive oracle")
    {
        std::mt19937 rng(1234);
        int trues = 0;
        for (int i = 0; i < 1000; ++i) {
            const int n = 1 + static_cast<int>(rng() % 7);
            Graph g = decorated_random(rng, n);
            Formula f = random_formula(rng, 4);
            Assignment a = full_assignment(rng, n);
            const bool want = oracle::RefEval(g)(f, a);
            INFO(to_string(f));
            REQUIRE(evaluate(g, f, a) == want);
            trues += want;
        }
        CHECK(trues > 200);
        CHECK(trues < 800);
    }

    TEST_CASE("evaluator reuse across assignments")
    {
        Graph g = random_graph(9, 0.3, 17);
        Formula f = parse_formula("exists z. (E(x,z) & ~E(z,y) & z != y)");
        Evaluator ev(g, f, {"x", "y"});
        oracle::RefEval ref(g);
        for (int u = 0; u < 9; ++u)
            for (int v = 0; v < 9; ++v)
                CHECK(ev({u, v}) == ref(f, {{"x", u}, {"y", v}}));
    }

    TEST_CASE("substitution avoids capture")
    {
        Formula f = parse_formula("exists y. E(x,y)");
        Formula g = substitute(f, {{"x", fo::y()}});
        CHECK(free_variables(g) == std::set<std::string>{"y"});
        Graph p = path_graph(3);
        for (int v = 0; v < 3; ++v)
            CHECK(evaluate(p, g, {{"y", v}}) == evaluate(p, f, {{"x", v}}));
    }

    TEST_CASE("rewrite_edges with false is the identity semantically")
    {
        std::mt19937 rng(5);
        for (int i = 0; i < 200; ++i) {
            const int n = 1 + static_cast<int>(rng() % 6);
            Graph g = decorated_random(rng, n);
            Formula f = random_formula(rng, 4);
            Assignment a = full_assignment(rng, n);
            CHECK(evaluate(g, rewrite_edges(f, fo::truth(false)), a) == evaluate(g, f, a));
        }
    }

    TEST_CASE("rewrite_edges with x != y evaluates on the complement")
    {
        std::mt19937 rng(6);
        const Formula zeta = parse_formula("x != y");
        for (int i = 0; i < 300; ++i) {
            const int n = 1 + static_cast<int>(rng() % 6);
            Graph g = decorated_random(rng, n);
            Graph co = oracle::complement(g);
            Formula f = random_formula(rng, 4);
            Assignment a = full_assignment(rng, n);
            INFO(to_string(f));
            // distance atoms refer to the original graph, so only compare dist-free formulas
            if (count_op(f, Op::Dist) != 0)
                continue;
            CHECK(evaluate(g, rewrite_edges(f, zeta), a) == oracle::RefEval(co)(f, a));
        }
    }

    TEST_CASE("rewrite_edges structure")
    {
        Formula rho = parse_formula("exists x. exists y. E(x,y)");
        Formula zeta = parse_formula("(exists y. (E(x,y) & U_a(y))) & y != x");
        Formula out = rewrite_edges(rho, zeta);
        CHECK(count_op(out, Op::Xor) == 1);
        CHECK(count_op(out, Op::Edge) == 2);
        CHECK(length(out) <= length(rho) * (1 + length(zeta)));
        CHECK_THROWS_AS(rewrite_edges(rho, parse_formula("E(x,z)")), FormulaError);

        // a bound name in zeta colliding with an argument of the rewritten atom
        Formula rho2 = parse_formula("forall y. exists x. E(y,x)");
        Formula r2 = rewrite_edges(rho2, zeta);
        Graph g = half_graph(3);
        g.set_colour("a", std::vector<int>{0, 1, 2});
        Formula manual = parse_formula(
            "forall y. exists x. (E(y,x) ^ ((exists v. (E(y,v) & U_a(v))) & x != y))");
        CHECK(evaluate(g, r2) == evaluate(g, manual));
    }

    TEST_CASE("range_of")
    {
        CHECK(range_of(grid_graph(3, 3), parse_formula("E(x,y)")).value == 1);
        auto empty = range_of(Graph(3), parse_formula("E(x,y)"));
        CHECK(empty.value == 0);
        CHECK_FALSE(empty.satisfied_any);
        CHECK(range_of(path_graph(5), parse_formula("E(x,y) | exists z. (E(x,z) & E(z,y))")).value == 2);
        CHECK(range_of(path_graph(5), parse_formula("x != x")).value == 0);
        CHECK(range_of(Graph(2), parse_formula("x != y")).value == kInfinity);
        CHECK(range_of(path_graph(6), parse_formula("x != y"), {0, 1, 2}).value == 2);
        CHECK_THROWS(range_of(path_graph(3), parse_formula("E(x,z)")));
    }
}
