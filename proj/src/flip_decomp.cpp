#include "fomc/flip_decomp.hpp"

#include <map>
#include <stdexcept>

namespace fomc {

std::pair<Bitset, Bitset> canonical_pair(const Bitset & a, const Bitset & b)
{
    return b < a ? std::pair{b, a} : std::pair{a, b};
}

TraceRelation build_flip_relation(const Graph & h, const DistanceMatrix & dist, const std::vector<int> & s_enum,
                                  Dist r)
{
    for (int s : s_enum)
        h.check_vertex(s);
    std::vector<Bitset> trace;
    for (int v = 0; v < h.size(); ++v)
        trace.push_back(trace_of(h, v, s_enum));
    TraceRelation R;
    for (const auto & [u, v] : h.edges())
        if (dist(u, v) > r)
            R.insert(canonical_pair(trace[u], trace[v]));
    return R;
}

unsigned long long canonical_pair_space(int s)
{
    if (s < 0 || s > 31)
        throw std::out_of_range("canonical_pair_space: s out of range");
    const unsigned long long t = 1ULL << s;
    return t * (t + 1) / 2;
}

FlipSpec guarded_flip_spec(const Graph & h, const std::vector<int> & s_enum, const TraceRelation & R)
{
    auto gp = guarded_partition(h, s_enum);
    std::map<Bitset, int> label;
    for (int i = 0; i < static_cast<int>(gp.part_trace.size()); ++i)
        label.emplace(gp.part_trace[i], i);
    FlipSpec spec = gp.spec;
    for (const auto & [a, b] : R) {
        auto ia = label.find(a), ib = label.find(b);
        if (ia != label.end() && ib != label.end())
            spec.relate(ia->second, ib->second);
    }
    return spec;
}

std::string flag_name(const Bitset & a, const Bitset & b) { return "f_" + a.to_string() + "_" + b.to_string(); }

std::string constant_name(int position) { return "c" + std::to_string(position + 1); }

void rebuild_flipped_graph(Decomposition & d)
{
    d.FH = apply_flip(d.h.graph, guarded_flip_spec(d.h.graph, d.s_enum, d.R));
}

Decomposition build_decomposition(const Graph & g, const Interpretation & interp, std::vector<int> s_enum, Dist r,
                                  int arity)
{
    return build_decomposition(g, apply_interpretation(g, interp), interp, std::move(s_enum), r, arity);
}

Decomposition build_decomposition(const Graph & g, const InterpretedGraph & h, const Interpretation & interp,
                                  std::vector<int> s_enum, Dist r, int arity)
{
    for (int s : s_enum)
        h.graph.check_vertex(s);
    if (arity > static_cast<int>(s_enum.size())) {
        if (s_enum.empty())
            throw std::invalid_argument("cannot pad an empty S to arity " + std::to_string(arity));
        s_enum.resize(static_cast<std::size_t>(arity), s_enum.back());
    }
    const int s = static_cast<int>(s_enum.size());

    Decomposition d;
    d.interp = interp;
    d.h = h;
    d.s_enum = s_enum;
    d.r = r;
    const auto dist = all_pairs_distances(g).restrict_to(h.back_map);
    d.R = build_flip_relation(h.graph, dist, s_enum, r);
    rebuild_flipped_graph(d);

    const auto gp = guarded_partition(h.graph, s_enum);
    const auto & traces = gp.part_trace; // increasing, so i <= j gives canonical pairs
    for (std::size_t i = 0; i < traces.size(); ++i)
        for (std::size_t j = i; j < traces.size(); ++j)
            d.realized.emplace_back(traces[i], traces[j]);

    d.ghat = g;
    for (int i = 0; i < s; ++i) {
        const auto name = constant_name(i);
        if (g.constants().count(name))
            throw std::invalid_argument("graph already has a constant named '" + name + "'");
        d.ghat.set_constant(name, h.back_map[s_enum[i]]);
    }
    for (const auto & [a, b] : d.realized) {
        const auto name = flag_name(a, b);
        if (g.flags().count(name))
            throw std::invalid_argument("graph already has a flag named '" + name + "'");
        d.ghat.set_flag(name, d.R.count({a, b}) != 0);
    }

    // phi(x, c_i), phi(y, c_i) and their negations, shared by every P_A.
    std::vector<Formula> pos_x, neg_x, pos_y, neg_y;
    for (int i = 0; i < s; ++i) {
        pos_x.push_back(substitute(interp.phi, {{"y", Term::constant(constant_name(i))}}));
        neg_x.push_back(fo::negate(pos_x.back()));
        pos_y.push_back(substitute(pos_x.back(), {{"x", fo::y()}}));
        neg_y.push_back(fo::negate(pos_y.back()));
    }
    const Formula delta_y = substitute(interp.delta, {{"x", fo::y()}});
    std::map<Bitset, std::pair<Formula, Formula>> p; // trace -> (P_A(x), P_A(y))
    for (const auto & a : traces) {
        std::vector<Formula> px{interp.delta}, py{delta_y};
        for (int i = 0; i < s; ++i) {
            px.push_back(a.test(i) ? pos_x[i] : neg_x[i]);
            py.push_back(a.test(i) ? pos_y[i] : neg_y[i]);
        }
        p.emplace(a, std::pair{fo::conj(std::move(px)), fo::conj(std::move(py))});
    }

    std::vector<Formula> disjuncts;
    for (const auto & [a, b] : d.realized) {
        const auto & [ax, ay] = p.at(a);
        const auto & [bx, by] = p.at(b);
        Formula f = fo::flag(flag_name(a, b));
        if (a == b)
            disjuncts.push_back(fo::conj({f, ax, ay}));
        else
            disjuncts.push_back(fo::conj({f, fo::disj({fo::conj({ax, by}), fo::conj({bx, ay})})}));
    }
    const Formula near = fo::dist_le(r, fo::x(), fo::y());
    if (disjuncts.empty()) {
        d.alpha = fo::truth(false);
        d.psi = fo::conj({interp.phi, near});
    } else {
        d.alpha = fo::conj({fo::not_equal(fo::x(), fo::y()), fo::disj(std::move(disjuncts))});
        d.psi = fo::conj({fo::exclusive_or(interp.phi, d.alpha), near});
    }
    return d;
}

DecompositionReport verify_decomposition(const Decomposition & d)
{
    DecompositionReport rep;

    try {
        Interpretation via{d.interp.name + "-decomposed", d.psi, d.interp.delta};
        auto got = apply_interpretation(d.ghat, via);
        if (got.back_map != d.h.back_map) {
            rep.interpretation_detail = "domains differ";
        } else if (!got.graph.same_edges(d.FH)) {
            rep.interpretation_detail = "edge sets differ";
            for (int u = 0; u < d.FH.size() && !rep.witness; ++u)
                for (int v = u + 1; v < d.FH.size(); ++v)
                    if (got.graph.adjacent(u, v) != d.FH.adjacent(u, v)) {
                        rep.witness = std::pair{d.h.back_map[u], d.h.back_map[v]};
                        break;
                    }
        } else {
            rep.interpretation_ok = true;
        }
    } catch (const std::exception & e) {
        rep.interpretation_detail = e.what();
    }

    rep.range_all = range_of(d.ghat, d.psi);
    rep.range_domain = range_of(d.ghat, d.psi, d.h.back_map);
    rep.range_ok = rep.range_all.value <= d.r;

    const auto spec = guarded_flip_spec(d.h.graph, d.s_enum, d.R);
    rep.flip_ok = apply_flip(d.h.graph, spec).same_edges(d.FH);
    rep.round_trip_ok = apply_flip(d.FH, spec).same_edges(d.h.graph);
    return rep;
}

nlohmann::ordered_json decomposition_to_json(const Decomposition & d)
{
    nlohmann::ordered_json out;
    out["interpretation"] = d.interp.name;
    out["r"] = d.r;
    auto s_enum = nlohmann::ordered_json::array();
    for (int v : d.s_enum)
        s_enum.push_back(d.h.back_map[v]);
    out["S_enum"] = s_enum;
    auto rel = nlohmann::ordered_json::array();
    for (const auto & [a, b] : d.R)
        rel.push_back({a.to_string(), b.to_string()});
    out["R"] = rel;
    out["flags"] = d.realized.size();
    out["psi"] = to_string(d.psi);
    out["psi_length"] = length(d.psi);
    auto back = nlohmann::ordered_json::array();
    for (int v : d.h.back_map)
        back.push_back(v);
    out["domain"] = back;
    return out;
}

nlohmann::ordered_json report_to_json(const DecompositionReport & rep, Dist r)
{
    auto range = [](const RangeResult & rr) {
        nlohmann::ordered_json j;
        j["value"] = rr.value == kInfinity ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(rr.value);
        j["satisfied"] = rr.satisfied_any;
        return j;
    };
    nlohmann::ordered_json out;
    out["ok"] = rep.ok();
    out["interpretation_equal"] = rep.interpretation_ok;
    if (!rep.interpretation_detail.empty())
        out["interpretation_detail"] = rep.interpretation_detail;
    if (rep.witness)
        out["witness"] = {rep.witness->first, rep.witness->second};
    out["range"] = range(rep.range_all);
    out["range_on_domain"] = range(rep.range_domain);
    out["range_bound"] = r;
    out["range_ok"] = rep.range_ok;
    out["guarded_flip"] = rep.flip_ok;
    out["round_trip"] = rep.round_trip_ok;
    return out;
}

} // namespace fomc
