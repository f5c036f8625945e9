#include "fomc/corpus.hpp"

#include "fomc/flip_decomp.hpp"
#include "fomc/interpret.hpp"
#include "fomc/parallel.hpp"
#include "fomc/parser.hpp"
#include "fomc/pipeline.hpp"
#include "fomc/slemma.hpp"

#include <exception>

namespace fomc {

namespace {

nlohmann::ordered_json violation_json(const Violation & v, const std::vector<int> & ids)
{
    return {{"u", ids[v.u]}, {"v", ids[v.v]}, {"u2", ids[v.u2]}, {"v2", ids[v.v2]}};
}

CorpusEntry entry(GenSpec gen, const std::string & interp, Dist r)
{
    CorpusEntry e;
    e.name = gen.label() + "/" + interp + "/r" + std::to_string(r);
    e.gen = std::move(gen);
    e.interpretation = interp;
    e.r = r;
    return e;
}

GenSpec spec_n(const std::string & kind, int n)
{
    GenSpec s;
    s.kind = kind;
    s.n = n;
    return s;
}

} // namespace

void decorate(Graph & g)
{
    std::vector<int> red;
    for (int v = 0; v < g.size(); v += 3)
        red.push_back(v);
    if (!g.has_colour("red"))
        g.set_colour("red", red);
    g.set_flag("marked", true);
}

Graph corpus_graph(const CorpusEntry & e)
{
    Graph g = generate(e.gen);
    decorate(g);
    return g;
}

Corpus default_corpus()
{
    std::vector<GenSpec> graphs;
    for (int n = 20; n <= 60; n += 10)
        graphs.push_back(spec_n("path", n));
    for (int k = 4; k <= 8; ++k) {
        GenSpec s;
        s.kind = "grid";
        s.rows = s.cols = k;
        graphs.push_back(s);
    }
    for (int n = 3; n <= 8; ++n)
        graphs.push_back(spec_n("clique", n));
    for (int n = 3; n <= 8; ++n)
        graphs.push_back(spec_n("half_graph", n));
    const std::uint64_t seeds[] = {11, 23, 37, 41, 53};
    int i = 0;
    for (int n = 8; n <= 16; n += 2) {
        GenSpec s = spec_n("random", n);
        s.p = 0.3;
        s.seed = seeds[i++];
        graphs.push_back(s);
    }

    Corpus c;
    c.name = "default";
    for (const auto & g : graphs)
        for (const char * interp : {"identity", "complement", "square", "power-3"})
            for (Dist r : {Dist{1}, Dist{2}})
                c.entries.push_back(entry(g, interp, r));
    return c;
}

Corpus planted_corpus()
{
    Corpus c;
    c.name = "planted";
    c.entries.push_back(entry(spec_n("path", 20), "square", 1));
    CorpusEntry bad = entry(spec_n("path", 20), "identity", 1);
    bad.name += "/planted";
    bad.plant = "empty-sset";
    c.entries.push_back(bad);
    return c;
}

nlohmann::ordered_json corpus_to_json(const Corpus & c)
{
    nlohmann::ordered_json j;
    j["name"] = c.name;
    auto list = nlohmann::ordered_json::array();
    for (const auto & e : c.entries) {
        nlohmann::ordered_json x;
        x["name"] = e.name;
        x["graph"] = gen_spec_to_json(e.gen);
        x["interpretation"] = e.interpretation;
        x["r"] = e.r;
        if (!e.plant.empty())
            x["plant"] = e.plant;
        list.push_back(x);
    }
    j["entries"] = list;
    return j;
}

Corpus corpus_from_json(const nlohmann::json & j)
{
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw std::invalid_argument("corpus needs an 'entries' array");
    Corpus c;
    c.name = j.value("name", std::string("unnamed"));
    for (const auto & x : j["entries"]) {
        if (!x.is_object() || !x.contains("graph"))
            throw std::invalid_argument("corpus entry needs a 'graph' object");
        CorpusEntry e;
        try {
            e.gen = gen_spec_from_json(x["graph"]);
            e.interpretation = x.value("interpretation", std::string("identity"));
            e.r = x.value("r", Dist{1});
            e.plant = x.value("plant", std::string{});
            e.name = x.value("name", e.gen.label() + "/" + e.interpretation + "/r" + std::to_string(e.r));
        } catch (const nlohmann::json::exception & ex) {
            throw std::invalid_argument(std::string("bad corpus entry: ") + ex.what());
        }
        if (!e.plant.empty() && e.plant != "empty-sset")
            throw std::invalid_argument("unknown plant '" + e.plant + "'");
        c.entries.push_back(std::move(e));
    }
    return c;
}

const std::vector<BatterySentence> & sentence_battery()
{
    static const std::vector<BatterySentence> battery = {
        {"triangle", "exists x. exists y. exists z. (E(x,y) & E(y,z) & E(x,z))"},
        {"dominating-vertex", "exists x. forall y. (x = y | E(x,y))"},
        {"diameter-2", "forall x. forall y. (x = y | E(x,y) | exists z. (E(x,z) & E(z,y)))"},
        {"marked-red-edge", "flag(marked) & exists x. (U_red(x) & exists y. E(x,y))"},
        {"has-edge", "exists x. exists y. E(x,y)"},
        {"isolated-vertex", "exists x. forall y. ~E(x,y)"},
        {"independent-3", "exists x. exists y. exists z. (x != y & y != z & x != z & ~E(x,y) & ~E(y,z) & ~E(x,z))"},
        {"induced-p3", "exists x. exists y. exists z. (E(x,y) & E(y,z) & ~E(x,z) & x != z)"},
        {"min-degree-2", "forall x. exists y. exists z. (y != z & E(x,y) & E(x,z))"},
        {"complete", "forall x. forall y. (x = y | E(x,y))"},
        {"red-nonred-edge", "exists x. (U_red(x) & exists y. (E(x,y) & ~U_red(y)))"},
        {"pendant", "exists x. exists y. (E(x,y) & forall z. (E(x,z) -> z = y))"},
    };
    return battery;
}

bool EntryOutcome::ok() const
{
    if (!errors.empty())
        return false;
    for (const auto & c : checks)
        if (!c.ok)
            return false;
    return true;
}

EntryOutcome run_entry(const CorpusEntry & e, const SuiteOptions & opts)
{
    EntryOutcome out;
    out.entry = e.name;
    try {
        const Graph g = corpus_graph(e);
        const Interpretation interp = named_interpretation(e.interpretation);
        out.g_vertices = g.size();
        const auto ss = s_for_interpretation(g, interp, e.r);
        out.h_vertices = ss.h.graph.size();
        const auto & ids = ss.metric.ids;

        if (opts.checks.count("locality")) {
            CheckOutcome c{"locality", true, {}};
            c.detail["cells"] = ss.partition.size();
            if (auto v = check_r_generic(ss.metric, ss.partition, e.r)) {
                c.ok = false;
                c.detail["violation"] = violation_json(*v, ids);
            }
            out.checks.push_back(std::move(c));
        }

        if (opts.checks.count("sset")) {
            CheckOutcome c{"sset", true, {}};
            std::vector<int> S = ss.sset.S;
            Dist radius = ss.radius;
            if (e.plant == "empty-sset") {
                S.clear();
                radius = 0;
                c.detail["plant"] = e.plant;
            }
            c.detail["size"] = S.size();
            c.detail["bound"] = ss.sset.size_bound();
            c.detail["k_observed"] = ss.sset.k_observed;
            c.detail["t_effective"] = ss.sset.t_effective;
            c.detail["radius"] = radius;
            if (static_cast<long long>(S.size()) > ss.sset.size_bound())
                c.ok = false;
            if (auto v = verify_s_set(ss.metric, S, radius)) {
                c.ok = false;
                c.detail["violation"] = violation_json(*v, ids);
            }
            out.checks.push_back(std::move(c));
        }

        if (opts.checks.count("decompose")) {
            CheckOutcome c{"decompose", true, {}};
            const auto d = build_decomposition(g, ss.h, interp, ss.sset.S, e.r);
            const auto rep = verify_decomposition(d);
            c.ok = rep.ok();
            c.detail = report_to_json(rep, e.r);
            out.checks.push_back(std::move(c));
        }

        if (opts.checks.count("mc") && g.size() <= opts.mc_max_vertices) {
            CheckOutcome c{"mc", true, {}};
            PipelineConfig cfg;
            cfg.mode = CandidateMode::Witness;
            cfg.verify = true;
            cfg.pre_image = &g;
            cfg.interp = interp;
            cfg.r = e.r;
            auto answers = nlohmann::ordered_json::object();
            for (const auto & s : sentence_battery()) {
                try {
                    auto rep = model_check(ss.h.graph, parse_formula(s.text), cfg);
                    answers[s.name] = rep.answer;
                    if (rep.answer != rep.oracle_answer || !rep.witness_matches_flip.value_or(false))
                        c.ok = false;
                } catch (const PipelineError & ex) {
                    c.ok = false;
                    answers[s.name] = std::string("error: ") + ex.what();
                }
            }
            c.detail["answers"] = answers;
            out.checks.push_back(std::move(c));
        }
    } catch (const std::exception & ex) {
        out.errors.push_back(ex.what());
    }
    return out;
}

SuiteResult run_suite(const Corpus & corpus, const SuiteOptions & opts)
{
    SuiteResult res;
    for (const auto & c : opts.checks)
        if (!kSuiteChecks.count(c))
            throw std::invalid_argument("unknown check '" + c + "'");
    if (corpus.entries.empty())
        res.warnings.push_back("corpus '" + corpus.name + "' is empty; no checks run");

    std::vector<EntryOutcome> outcomes(corpus.entries.size());
    parallel_for(corpus.entries.size(), opts.workers,
                 [&](std::size_t i) { outcomes[i] = run_entry(corpus.entries[i], opts); });

    auto entries = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto & o = outcomes[i];
        const auto & e = corpus.entries[i];
        nlohmann::ordered_json j;
        j["name"] = o.entry;
        j["graph"] = gen_spec_to_json(e.gen);
        j["interpretation"] = e.interpretation;
        j["r"] = e.r;
        j["g_vertices"] = o.g_vertices;
        j["h_vertices"] = o.h_vertices;
        auto checks = nlohmann::ordered_json::object();
        for (const auto & c : o.checks) {
            ++res.checks_run;
            nlohmann::ordered_json cj;
            cj["ok"] = c.ok;
            if (!c.detail.is_null())
                cj["detail"] = c.detail;
            checks[c.check] = cj;
            if (!c.ok)
                res.failures.push_back(o.entry + "/" + c.check);
        }
        j["checks"] = checks;
        if (!o.errors.empty()) {
            j["errors"] = o.errors;
            res.failures.push_back(o.entry + "/error");
        }
        entries.push_back(j);
    }

    res.exit_code = res.failures.empty() ? 0 : 1;
    auto & rep = res.report;
    rep["corpus"] = corpus.name;
    rep["seed"] = opts.seed;
    rep["checks"] = opts.checks;
    rep["entries_run"] = outcomes.size();
    rep["checks_run"] = res.checks_run;
    rep["ok"] = res.exit_code == 0;
    rep["failures"] = res.failures;
    rep["warnings"] = res.warnings;
    rep["entries"] = entries;
    return res;
}

} // namespace fomc
