#include "fomc/pipeline.hpp"

#include "fomc/eval.hpp"
#include "fomc/parallel.hpp"
#include "fomc/slemma.hpp"

#include <algorithm>
#include <atomic>
#include <random>

namespace fomc {

namespace {

std::vector<Bitset> all_traces(int s)
{
    std::vector<Bitset> out;
    for (unsigned mask = 0; mask < (1u << s); ++mask) {
        Bitset b(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i)
            if ((mask >> i) & 1u)
                b.set(i);
        out.push_back(b);
    }
    return out;
}

std::vector<std::pair<Bitset, Bitset>> label_pairs(int s)
{
    auto traces = all_traces(s);
    std::sort(traces.begin(), traces.end());
    std::vector<std::pair<Bitset, Bitset>> out;
    for (std::size_t i = 0; i < traces.size(); ++i)
        for (std::size_t j = i; j < traces.size(); ++j)
            out.emplace_back(traces[i], traces[j]);
    return out;
}

unsigned long long binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
    return r;
}

void check_arity(int s)
{
    if (s < 0)
        throw PipelineError("candidate arity must be non-negative");
    if (s > kMaxExhaustiveArity)
        throw PipelineError("exhaustive enumeration is limited to s <= " + std::to_string(kMaxExhaustiveArity) +
                            ", got s = " + std::to_string(s));
}

} // namespace

std::string candidate_to_string(const Candidate & c)
{
    std::string out = "S=[";
    for (std::size_t i = 0; i < c.S.size(); ++i)
        out += (i ? "," : "") + std::to_string(c.S[i]);
    out += "] R={";
    bool first = true;
    for (const auto & [a, b] : c.R) {
        out += (first ? "(" : ",(") + a.to_string() + "," + b.to_string() + ")";
        first = false;
    }
    return out + "}";
}

nlohmann::ordered_json candidate_to_json(const Candidate & c)
{
    nlohmann::ordered_json j;
    j["S"] = c.S;
    auto rel = nlohmann::ordered_json::array();
    for (const auto & [a, b] : c.R)
        rel.push_back({a.to_string(), b.to_string()});
    j["R"] = rel;
    return j;
}

unsigned long long count_candidates(int n, int s)
{
    check_arity(s);
    unsigned long long total = 0;
    for (int j = 0; j <= std::min(s, n); ++j)
        total += binomial(n, j) * (1ULL << canonical_pair_space(j));
    return total;
}

void for_each_candidate(int n, int s, const std::function<bool(const Candidate &)> & visit)
{
    check_arity(s);
    for (int size = 0; size <= std::min(s, n); ++size) {
        const auto pairs = label_pairs(size);
        std::vector<int> S(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i)
            S[i] = i;
        for (;;) {
            for (unsigned long long mask = 0; mask < (1ULL << pairs.size()); ++mask) {
                Candidate c{S, {}};
                for (std::size_t p = 0; p < pairs.size(); ++p)
                    if ((mask >> p) & 1ULL)
                        c.R.insert(pairs[p]);
                if (!visit(c))
                    return;
            }
            // next combination
            int i = size - 1;
            while (i >= 0 && S[i] == n - size + i)
                --i;
            if (i < 0)
                break;
            ++S[i];
            for (int j = i + 1; j < size; ++j)
                S[j] = S[j - 1] + 1;
        }
    }
}

std::vector<Candidate> enumerate_candidates(int n, int s)
{
    std::vector<Candidate> out;
    for_each_candidate(n, s, [&](const Candidate & c) {
        out.push_back(c);
        return true;
    });
    return out;
}

std::vector<Candidate> sample_candidates(int n, int s, int count, std::uint64_t seed)
{
    check_arity(s);
    std::mt19937_64 rng(seed);
    std::vector<Candidate> out;
    std::vector<int> ids(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        ids[i] = i;
    for (int k = 0; k < count; ++k) {
        const int size = std::min(s, n);
        std::shuffle(ids.begin(), ids.end(), rng);
        Candidate c;
        c.S.assign(ids.begin(), ids.begin() + size);
        std::sort(c.S.begin(), c.S.end());
        for (const auto & p : label_pairs(size))
            if (rng() & 1u)
                c.R.insert(p);
        out.push_back(std::move(c));
    }
    return out;
}

std::string trace_colour(const Bitset & trace) { return "lam_" + trace.to_string(); }

Graph build_H_SR(const Graph & h, const Candidate & c)
{
    for (const auto & [a, b] : c.R)
        if (a.size() != c.S.size() || b.size() != c.S.size())
            throw PipelineError("relation label has the wrong width for S");
    Graph out = apply_flip(h, guarded_flip_spec(h, c.S, c.R));

    std::map<std::string, std::vector<int>> colours;
    for (int v = 0; v < h.size(); ++v)
        colours[trace_colour(trace_of(h, v, c.S))].push_back(v);
    for (const auto & [a, b] : c.R) {
        colours[trace_colour(a)];
        colours[trace_colour(b)];
    }
    for (const auto & [name, members] : colours) {
        if (h.has_colour(name))
            throw PipelineError("graph already has a colour named '" + name + "'");
        out.set_colour(name, members);
    }
    return out;
}

Formula build_zeta(const Candidate & c)
{
    std::vector<Formula> parts;
    for (const auto & [a, b] : c.R) {
        Formula ax = fo::colour(trace_colour(a), fo::x());
        Formula by = fo::colour(trace_colour(b), fo::y());
        if (a == b) {
            parts.push_back(fo::conj({ax, by}));
        } else {
            Formula bx = fo::colour(trace_colour(b), fo::x());
            Formula ay = fo::colour(trace_colour(a), fo::y());
            parts.push_back(fo::conj({ax, by}));
            parts.push_back(fo::conj({bx, ay}));
        }
    }
    if (parts.empty())
        return fo::truth(false);
    return fo::conj({fo::not_equal(fo::x(), fo::y()), fo::disj(std::move(parts))});
}

Formula build_rho_SR(const Formula & rho, const Candidate & c) { return rewrite_edges(rho, build_zeta(c)); }

WitnessCandidate witness_candidate(const Graph & g, const Interpretation & interp, Dist r, int k_max)
{
    auto ss = s_for_interpretation(g, interp, r, k_max);
    auto d = build_decomposition(g, ss.h, interp, ss.sset.S, r);
    Candidate c{ss.sset.S, d.R};
    return {std::move(c), std::move(d), ss.radius};
}

PipelineReport model_check(const Graph & h, const Formula & rho, const PipelineConfig & cfg)
{
    if (auto free = free_variables(rho); !free.empty())
        throw PipelineError("model_check needs a sentence; '" + *free.begin() + "' is free");

    PipelineReport rep;
    rep.oracle_answer = evaluate(h, rho);

    std::vector<Candidate> candidates;
    if (cfg.mode == CandidateMode::Exhaustive) {
        candidates = enumerate_candidates(h.size(), cfg.s);
    } else {
        if (!cfg.pre_image || !cfg.interp)
            throw PipelineError("witness mode needs a pre-image graph and an interpretation");
        auto w = witness_candidate(*cfg.pre_image, *cfg.interp, cfg.r);
        if (!w.decomposition.h.graph.same_edges(h))
            throw PipelineError("the interpreted pre-image does not match the input graph");
        Graph hsr = build_H_SR(h, w.candidate);
        rep.witness_matches_flip = hsr.same_edges(w.decomposition.FH);
        if (cfg.lcw_radius) {
            try {
                rep.lcw = local_cliquewidth(hsr, *cfg.lcw_radius, cfg.lcw_cap, cfg.lcw_budget, cfg.workers)
                              .to_string();
            } catch (const BallTooLarge & e) {
                rep.lcw_error = e.what();
            }
        }
        rep.witness = w.candidate;
        candidates.push_back(std::move(w.candidate));
    }

    auto run = [&](const Candidate & c) { return evaluate(build_H_SR(h, c), build_rho_SR(rho, c)); };

    if (cfg.verify) {
        rep.results.resize(candidates.size());
        parallel_for(candidates.size(), cfg.workers, [&](std::size_t i) {
            bool a = run(candidates[i]);
            rep.results[i] = {candidates[i], a, a == rep.oracle_answer};
        });
        rep.candidates_run = candidates.size();
        for (const auto & r : rep.results)
            if (!r.agrees)
                throw PipelineError("candidate " + candidate_to_string(r.candidate) + " answered " +
                                    (r.answer ? "true" : "false") + " but the oracle says " +
                                    (rep.oracle_answer ? "true" : "false"));
        rep.answer = rep.results.empty() ? rep.oracle_answer : rep.results.front().answer;
        return rep;
    }

    if (candidates.empty()) {
        rep.answer = rep.oracle_answer;
        return rep;
    }
    if (!cfg.race) {
        bool a = run(candidates.front());
        rep.results.push_back({candidates.front(), a, a == rep.oracle_answer});
        rep.candidates_run = 1;
        rep.answer = a;
        return rep;
    }

    std::atomic<int> winner{-1};
    std::vector<int> answers(candidates.size(), -1);
    parallel_for(candidates.size(), cfg.workers, [&](std::size_t i) {
        if (winner.load() >= 0)
            return;
        answers[i] = run(candidates[i]) ? 1 : 0;
        int expected = -1;
        winner.compare_exchange_strong(expected, static_cast<int>(i));
    });
    const int w = winner.load();
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (answers[i] >= 0) {
            ++rep.candidates_run;
            rep.results.push_back({candidates[i], answers[i] == 1, (answers[i] == 1) == rep.oracle_answer});
        }
    rep.answer = answers[w] == 1;
    return rep;
}

nlohmann::ordered_json pipeline_report_to_json(const PipelineReport & rep, const Graph & h)
{
    nlohmann::ordered_json out;
    out["answer"] = rep.answer;
    out["oracle_answer"] = rep.oracle_answer;
    out["agree"] = rep.answer == rep.oracle_answer;
    out["candidates_run"] = rep.candidates_run;
    out["vertices"] = h.size();
    if (rep.witness) {
        out["witness"] = candidate_to_json(*rep.witness);
        out["witness_matches_flip"] = rep.witness_matches_flip.value_or(false);
    }
    if (rep.lcw)
        out["lcw"] = *rep.lcw;
    if (rep.lcw_error)
        out["lcw_error"] = *rep.lcw_error;
    auto list = nlohmann::ordered_json::array();
    for (const auto & r : rep.results) {
        auto j = candidate_to_json(r.candidate);
        j["answer"] = r.answer;
        j["agrees"] = r.agrees;
        list.push_back(j);
    }
    out["candidates"] = list;
    return out;
}

} // namespace fomc
