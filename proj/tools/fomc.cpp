#include "fomc/cliquewidth.hpp"
#include "fomc/corpus.hpp"
#include "fomc/eval.hpp"
#include "fomc/flip_decomp.hpp"
#include "fomc/generators.hpp"
#include "fomc/graph_io.hpp"
#include "fomc/interpret.hpp"
#include "fomc/locality.hpp"
#include "fomc/parser.hpp"
#include "fomc/pipeline.hpp"
#include "fomc/slemma.hpp"
#include "fomc/vc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace fomc;
using json = nlohmann::ordered_json;

namespace {

// Input problems map to exit code 2, failed checks to 1.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t seed = 0;
    int workers = 1;
    int indent = 2;
};

std::string slurp(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json read_json(const std::string & path)
{
    try {
        return nlohmann::json::parse(slurp(path));
    } catch (const nlohmann::json::exception & e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

struct InterpArgs {
    std::string name;
    std::string phi;
    std::string delta = "true";

    void add(CLI::App * cmd)
    {
        cmd->add_option("--interp", name, "named interpretation (" + names() + ")");
        cmd->add_option("--phi", phi, "edge formula phi(x,y)");
        cmd->add_option("--delta", delta, "domain formula delta(x)");
    }

    static std::string names()
    {
        std::string out;
        for (const auto & n : interpretation_names())
            out += (out.empty() ? "" : ", ") + n;
        return out;
    }

    Interpretation get() const
    {
        if (!phi.empty())
            return make_interpretation(name.empty() ? "custom" : name, phi, delta);
        return named_interpretation(name.empty() ? "identity" : name);
    }
};

void emit(const json & j, const Globals & g) { std::cout << j.dump(g.indent) << "\n"; }

std::string formula_arg(const std::string & text, const std::string & file)
{
    if (!file.empty())
        return slurp(file);
    if (text.empty())
        throw InputError("a formula is required");
    return text;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"First-order model checking on interpreted graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals globals;
    app.add_option("--seed", globals.seed, "seed recorded in reports and used for sampling");
    app.add_option("--workers", globals.workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--json-indent", globals.indent, "JSON indent, -1 for compact");

    // gen
    GenSpec gen;
    auto * c_gen = app.add_subcommand("gen", "generate a graph");
    c_gen->add_option("--kind", gen.kind, "path, cycle, grid, clique, star, half_graph, random, kexpr, shattered_triple")
        ->required();
    c_gen->add_option("--n", gen.n);
    c_gen->add_option("--rows", gen.rows);
    c_gen->add_option("--cols", gen.cols);
    c_gen->add_option("--p", gen.p);
    c_gen->add_option("--expr", gen.kexpr);
    bool gen_decorate = false;
    c_gen->add_flag("--decorate", gen_decorate, "add colour red and flag marked");

    // eval
    std::string graph_path, formula_text, formula_file;
    std::vector<std::string> assigns;
    bool eval_range = false;
    auto * c_eval = app.add_subcommand("eval", "evaluate a formula");
    c_eval->add_option("--graph", graph_path)->required();
    c_eval->add_option("--formula", formula_text);
    c_eval->add_option("--formula-file", formula_file);
    c_eval->add_option("--assign", assigns, "var=vertex");
    c_eval->add_flag("--range", eval_range, "report the range of phi(x,y) instead");

    // interpret
    InterpArgs interp_args;
    auto * c_interp = app.add_subcommand("interpret", "apply an interpretation");
    c_interp->add_option("--graph", graph_path)->required();
    interp_args.add(c_interp);

    // vc
    std::string relation_path;
    int shatter_max = 4;
    auto * c_vc = app.add_subcommand("vc", "VC-dimension and shatter function");
    c_vc->add_option("--relation", relation_path);
    c_vc->add_option("--graph", graph_path, "use the edge relation of a graph");
    c_vc->add_option("--shatter-max", shatter_max);

    // duality
    int k_max = kDefaultDualityOrder;
    auto * c_dual = app.add_subcommand("duality", "minimum duality witness");
    c_dual->add_option("--relation", relation_path);
    c_dual->add_option("--graph", graph_path);
    c_dual->add_option("--k-max", k_max);

    // refine / sset / decompose share graph + interpretation + r
    Dist r = 1;
    int arity = -1;
    auto * c_refine = app.add_subcommand("refine", "r-generic partition of an interpreted graph");
    auto * c_sset = app.add_subcommand("sset", "witness set of an interpreted graph");
    auto * c_dec = app.add_subcommand("decompose", "flip decomposition of an interpreted graph");
    for (auto * c : {c_refine, c_sset, c_dec}) {
        c->add_option("--graph", graph_path)->required();
        c->add_option("--r", r);
        interp_args.add(c);
    }
    c_sset->add_option("--k-max", k_max);
    c_dec->add_option("--arity", arity, "pad S to this length");

    // lcw
    int cap = 6, budget = kDefaultBallBudget;
    auto * c_lcw = app.add_subcommand("lcw", "local cliquewidth");
    c_lcw->add_option("--graph", graph_path)->required();
    c_lcw->add_option("--r", r);
    c_lcw->add_option("--cap", cap);
    c_lcw->add_option("--budget", budget);

    // mc
    std::string pre_image_path, mode = "witness";
    int s = 1;
    bool no_verify = false, race = false;
    Dist lcw_r = 0;
    auto * c_mc = app.add_subcommand("mc", "model-check a sentence through candidates");
    c_mc->add_option("--graph", graph_path)->required();
    c_mc->add_option("--sentence", formula_file, "file holding the sentence");
    c_mc->add_option("--formula", formula_text, "sentence text");
    c_mc->add_option("--s", s);
    c_mc->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "witness"}));
    c_mc->add_option("--pre-image", pre_image_path);
    c_mc->add_option("--r", r);
    c_mc->add_flag("--no-verify", no_verify, "run only the first candidate");
    c_mc->add_flag("--race", race, "with --no-verify: take the first candidate to finish");
    c_mc->add_option("--lcw-r", lcw_r, "measure lcw of the witness H_SR at this radius");
    interp_args.add(c_mc);

    // suite
    std::string corpus_path;
    std::string builtin = "default";
    std::vector<std::string> checks;
    int mc_max = 16;
    auto * c_suite = app.add_subcommand("suite", "run acceptance checks over a corpus");
    c_suite->add_option("--corpus", corpus_path, "corpus JSON file");
    c_suite->add_option("--builtin", builtin)->check(CLI::IsMember({"default", "planted", "empty"}));
    c_suite->add_option("--checks", checks, "locality, sset, decompose, mc")->delimiter(',');
    c_suite->add_option("--mc-max-vertices", mc_max);
    bool dump_corpus = false;
    c_suite->add_flag("--dump-corpus", dump_corpus, "print the corpus instead of running it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_gen->parsed()) {
            gen.seed = globals.seed;
            Graph g = generate(gen);
            if (gen_decorate)
                decorate(g);
            emit(graph_to_json(g), globals);
            return 0;
        }

        if (c_eval->parsed()) {
            const Graph g = read_graph_file(graph_path);
            const Formula f = parse_formula(formula_arg(formula_text, formula_file));
            json out;
            out["formula"] = to_string(f);
            if (eval_range) {
                auto rr = range_of(g, f);
                out["range"] = dist_to_string(rr.value);
                out["satisfied_any"] = rr.satisfied_any;
            } else {
                Assignment a;
                for (const auto & item : assigns) {
                    auto eq = item.find('=');
                    if (eq == std::string::npos)
                        throw InputError("--assign expects var=vertex, got '" + item + "'");
                    try {
                        a[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
                    } catch (const std::exception &) {
                        throw InputError("--assign expects an integer vertex in '" + item + "'");
                    }
                }
                out["value"] = evaluate(g, f, a);
            }
            emit(out, globals);
            return 0;
        }

        if (c_interp->parsed()) {
            const Graph g = read_graph_file(graph_path);
            const auto h = apply_interpretation(g, interp_args.get());
            json out;
            out["graph"] = graph_to_json(h.graph);
            out["back_map"] = h.back_map;
            emit(out, globals);
            return 0;
        }

        auto relation = [&]() {
            if (!relation_path.empty())
                return relation_from_json(read_json(relation_path));
            if (graph_path.empty())
                throw InputError("--relation or --graph is required");
            const Graph g = read_graph_file(graph_path);
            BiRelation rel(g.size(), g.size());
            for (auto [u, v] : g.edges()) {
                rel.set(u, v);
                rel.set(v, u);
            }
            return rel;
        };

        if (c_vc->parsed()) {
            const BiRelation rel = relation();
            json out;
            out["a"] = rel.a_size();
            out["b"] = rel.b_size();
            out["vc_dimension"] = vc_dimension(rel);
            auto sh = json::array();
            for (int m = 0; m <= std::min(shatter_max, rel.a_size()); ++m)
                sh.push_back(shatter_function(rel, m));
            out["shatter"] = sh;
            emit(out, globals);
            return 0;
        }

        if (c_dual->parsed()) {
            const BiRelation rel = relation();
            json out;
            try {
                const auto w = find_duality(rel, k_max);
                out["side"] = to_string(w.side);
                out["set"] = w.set;
                out["order"] = w.order();
                out["verified"] = verify_duality(rel, w);
            } catch (const NoDuality & e) {
                out["error"] = e.what();
                emit(out, globals);
                return 1;
            }
            emit(out, globals);
            return 0;
        }

        if (c_refine->parsed()) {
            const Graph g = read_graph_file(graph_path);
            const auto h = apply_interpretation(g, interp_args.get());
            const auto m = metric_relation(h, g);
            RefineStats stats;
            const auto p = refine_partition(m, r, stats);
            json out = partition_report(m, p, r);
            out["splits"] = stats.splits;
            out["fallback_splits"] = stats.fallback_splits;
            const bool ok = !check_r_generic(m, p, r);
            out["generic"] = ok;
            emit(out, globals);
            return ok ? 0 : 1;
        }

        if (c_sset->parsed()) {
            const Graph g = read_graph_file(graph_path);
            const auto ss = s_for_interpretation(g, interp_args.get(), r, k_max);
            json out = sset_report(ss.metric, ss.sset);
            out["radius"] = ss.radius;
            const auto v = verify_s_set(ss.metric, ss.sset.S, ss.radius);
            out["verified"] = !v;
            if (v)
                out["violation"] = {ss.metric.ids[v->u], ss.metric.ids[v->v], ss.metric.ids[v->u2],
                                    ss.metric.ids[v->v2]};
            emit(out, globals);
            return v ? 1 : 0;
        }

        if (c_dec->parsed()) {
            const Graph g = read_graph_file(graph_path);
            const auto interp = interp_args.get();
            const auto ss = s_for_interpretation(g, interp, r);
            const auto d = build_decomposition(g, ss.h, interp, ss.sset.S, r, arity);
            const auto rep = verify_decomposition(d);
            json out;
            out["decomposition"] = decomposition_to_json(d);
            out["report"] = report_to_json(rep, r);
            emit(out, globals);
            return rep.ok() ? 0 : 1;
        }

        if (c_lcw->parsed()) {
            const Graph g = read_graph_file(graph_path);
            try {
                emit(lcw_report(local_cliquewidth(g, r, cap, budget, globals.workers), r), globals);
            } catch (const BallTooLarge & e) {
                throw InputError(e.what());
            }
            return 0;
        }

        if (c_mc->parsed()) {
            const Graph h = read_graph_file(graph_path);
            const Formula rho = parse_formula(formula_arg(formula_text, formula_file));
            PipelineConfig cfg;
            cfg.s = s;
            cfg.mode = mode == "exhaustive" ? CandidateMode::Exhaustive : CandidateMode::Witness;
            cfg.verify = !no_verify;
            cfg.race = race;
            cfg.workers = globals.workers;
            cfg.r = r;
            Graph pre;
            if (cfg.mode == CandidateMode::Witness) {
                if (pre_image_path.empty())
                    throw InputError("witness mode needs --pre-image");
                pre = read_graph_file(pre_image_path);
                cfg.pre_image = &pre;
                cfg.interp = interp_args.get();
            }
            if (lcw_r > 0)
                cfg.lcw_radius = lcw_r;
            try {
                auto rep = model_check(h, rho, cfg);
                json out = pipeline_report_to_json(rep, h);
                out["seed"] = globals.seed;
                emit(out, globals);
                return rep.answer == rep.oracle_answer ? 0 : 1;
            } catch (const PipelineError & e) {
                // disagreement in verify mode is a check failure; setup problems are input errors
                const std::string msg = e.what();
                if (msg.rfind("candidate ", 0) == 0) {
                    emit(json{{"error", msg}}, globals);
                    return 1;
                }
                throw InputError(msg);
            }
        }

        if (c_suite->parsed()) {
            Corpus corpus;
            if (!corpus_path.empty())
                corpus = corpus_from_json(read_json(corpus_path));
            else if (builtin == "planted")
                corpus = planted_corpus();
            else if (builtin == "empty")
                corpus.name = "empty";
            else
                corpus = default_corpus();
            if (dump_corpus) {
                emit(corpus_to_json(corpus), globals);
                return 0;
            }
            SuiteOptions opts;
            if (!checks.empty())
                opts.checks = {checks.begin(), checks.end()};
            opts.workers = globals.workers;
            opts.mc_max_vertices = mc_max;
            opts.seed = globals.seed;
            auto res = run_suite(corpus, opts);
            for (const auto & w : res.warnings)
                std::cerr << "warning: " << w << "\n";
            for (const auto & f : res.failures)
                std::cerr << "failed: " << f << "\n";
            emit(res.report, globals);
            return res.exit_code;
        }
    } catch (const InputError & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NoDuality & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
