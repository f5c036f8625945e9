#include "fomc/corpus.hpp"
#include "fomc/eval.hpp"
#include "fomc/generators.hpp"
#include "fomc/parser.hpp"

#include <doctest.h>

using namespace fomc;

TEST_SUITE("corpus")
{
    TEST_CASE("generators")
    {
        Graph g = grid_graph(2, 2);
        CHECK(g.size() == 4);
        CHECK(g.edge_count() == 4);
        Graph h3 = half_graph(3);
        CHECK(h3.edge_count() == 6);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(h3.adjacent(i, 3 + j) == (i <= j));
        GenSpec k;
        k.kind = "kexpr";
        k.kexpr = "j(1,2,u(v(1),v(2)))";
        CHECK(generate(k).same_edges(clique_graph(2)));
        CHECK(random_graph(12, 0.3, 5) == random_graph(12, 0.3, 5));
        CHECK_FALSE(random_graph(12, 0.3, 5) == random_graph(12, 0.3, 6));
        CHECK(random_graph(10, 0.0, 1).edge_count() == 0);
        CHECK(random_graph(10, 1.0, 1).edge_count() == 45);
        CHECK(cycle_graph(5).edge_count() == 5);
        CHECK(star_graph(4).degree(0) == 4);
        CHECK(shattered_triple_graph().edge_count() == 12);

        GenSpec bad;
        bad.kind = "path";
        CHECK_THROWS_AS(generate(bad), GeneratorError);
        bad.kind = "moebius";
        bad.n = 4;
        CHECK_THROWS_AS(generate(bad), GeneratorError);
        GenSpec rnd;
        rnd.kind = "random";
        rnd.n = 5;
        rnd.p = 1.5;
        CHECK_THROWS_AS(generate(rnd), GeneratorError);
    }

    TEST_CASE("gen spec json round trip")
    {
        for (const auto & e : default_corpus().entries) {
            GenSpec back = gen_spec_from_json(gen_spec_to_json(e.gen));
            CHECK(generate(back) == generate(e.gen));
        }
        CHECK_THROWS_AS(gen_spec_from_json(nlohmann::json::parse("{}")), GeneratorError);
    }

    TEST_CASE("default corpus shape")
    {
        Corpus c = default_corpus();
        CHECK(c.entries.size() == 27 * 4 * 2);
        std::set<std::string> names;
        for (const auto & e : c.entries) {
            CHECK(names.insert(e.name).second);
            Graph g = corpus_graph(e);
            CHECK(g.size() <= 200);
            CHECK(g.flags().at("marked"));
            CHECK(g.colours().count("red"));
        }
        Corpus back = corpus_from_json(corpus_to_json(c));
        CHECK(back.entries.size() == c.entries.size());
        CHECK(corpus_to_json(back).dump() == corpus_to_json(c).dump());
    }

    TEST_CASE("sentence battery")
    {
        const auto & battery = sentence_battery();
        CHECK(battery.size() == 12);
        bool uses_flag = false, uses_colour = false;
        for (const auto & s : battery) {
            Formula f = parse_formula(s.text);
            CHECK(free_variables(f).empty());
            CHECK(quantifier_rank(f) <= 3);
            uses_flag |= count_op(f, Op::Flag) > 0;
            uses_colour |= count_op(f, Op::Colour) > 0;
        }
        CHECK(uses_flag);
        CHECK(uses_colour);

        Graph k4 = clique_graph(4);
        decorate(k4);
        auto eval_named = [&](const Graph & g, const std::string & name) {
            for (const auto & s : battery)
                if (s.name == name)
                    return evaluate(g, parse_formula(s.text));
            FAIL("missing sentence");
            return false;
        };
        CHECK(eval_named(k4, "triangle"));
        CHECK(eval_named(k4, "complete"));
        CHECK(eval_named(k4, "dominating-vertex"));
        CHECK_FALSE(eval_named(k4, "pendant"));
        Graph p5 = path_graph(5);
        decorate(p5);
        CHECK(eval_named(p5, "pendant"));
        CHECK(eval_named(p5, "induced-p3"));
        CHECK_FALSE(eval_named(p5, "diameter-2"));
        CHECK(eval_named(p5, "red-nonred-edge"));
    }

    TEST_CASE("suite outcomes")
    {
        Corpus empty;
        empty.name = "empty";
        auto r0 = run_suite(empty, {});
        CHECK(r0.exit_code == 0);
        CHECK(r0.checks_run == 0);
        CHECK(r0.warnings.size() == 1);

        auto planted = run_suite(planted_corpus(), {});
        CHECK(planted.exit_code == 1);
        REQUIRE(planted.failures.size() == 1);
        CHECK(planted.failures[0] == "path-20/identity/r1/planted/sset");

        Corpus small;
        small.name = "small";
        for (const auto & e : default_corpus().entries)
            if (e.gen.kind == "half_graph" && e.gen.n <= 4)
                small.entries.push_back(e);
        SuiteOptions opts;
        opts.workers = 2;
        auto rs = run_suite(small, opts);
        CHECK(rs.exit_code == 0);
        CHECK(rs.checks_run == small.entries.size() * 4);
        opts.workers = 1;
        CHECK(run_suite(small, opts).report.dump() == rs.report.dump());

        SuiteOptions wrong;
        wrong.checks = {"bogus"};
        CHECK_THROWS(run_suite(small, wrong));

        Corpus broken;
        CorpusEntry e;
        e.name = "broken";
        e.gen.kind = "path";
        e.gen.n = 0;
        e.interpretation = "identity";
        broken.entries.push_back(e);
        auto rb = run_suite(broken, {});
        CHECK(rb.exit_code == 1);
        CHECK(rb.failures == std::vector<std::string>{"broken/error"});
    }
}
