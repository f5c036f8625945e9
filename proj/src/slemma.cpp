#include "fomc/slemma.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace fomc {

std::string to_string(CellClass::Kind k)
{
    switch (k) {
    case CellClass::Kind::Large:
        return "large";
    case CellClass::Kind::Small:
        return "small";
    case CellClass::Kind::Split:
        return "split";
    }
    return "?";
}

namespace {

Dist twice(Dist r) { return r >= kInfinity / 2 ? kInfinity - 1 : 2 * r; }

int find_centre(const std::vector<int> & cell, const DistanceMatrix & dist, Dist reach)
{
    for (int c0 : cell) {
        bool ok = true;
        for (int c : cell)
            if (dist(c, c0) > reach) {
                ok = false;
                break;
            }
        if (ok)
            return c0;
    }
    return -1;
}

} // namespace

CellClass classify_cell(const std::vector<int> & cell, const DistanceMatrix & dist, Dist r)
{
    if (cell.empty())
        throw std::invalid_argument("classify_cell: empty cell");
    const Dist reach = twice(r);
    CellClass out;

    std::vector<int> kept;
    for (int c : cell) {
        bool scattered = true;
        for (int k : kept)
            if (dist(c, k) <= reach) {
                scattered = false;
                break;
            }
        if (scattered)
            kept.push_back(c);
    }
    if (kept.size() >= 3) {
        out.kind = CellClass::Kind::Large;
        out.triple = {kept[0], kept[1], kept[2]};
        return out;
    }

    // A greedy pair can be non-maximum, so look for any scattered triple.
    const std::size_t n = cell.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dist(cell[i], cell[j]) <= reach)
                continue;
            for (std::size_t k = j + 1; k < n; ++k)
                if (dist(cell[i], cell[k]) > reach && dist(cell[j], cell[k]) > reach) {
                    out.kind = CellClass::Kind::Large;
                    out.triple = {cell[i], cell[j], cell[k]};
                    return out;
                }
        }

    if (int c0 = find_centre(cell, dist, reach); c0 >= 0) {
        out.kind = CellClass::Kind::Small;
        out.centre = c0;
        return out;
    }

    // No centre means the greedy set has exactly two points, and by its
    // maximality every member is within 2r of one of them.
    out.kind = CellClass::Kind::Split;
    out.s1 = kept[0];
    out.s2 = kept[1];
    for (int c : cell)
        (c != out.s2 && dist(c, out.s1) <= reach ? out.c1 : out.c2).push_back(c);
    return out;
}

SSet build_s_set(const MetricRelation & m, const Partition & p, Dist r, int k_max)
{
    SSet out;
    out.r = r;
    out.k_max_used = k_max;

    std::vector<CellClass> classes;
    for (const auto & cell : p.cells) {
        CellClass cls = classify_cell(cell, m.dist, r);
        if (cls.kind == CellClass::Kind::Split) {
            for (const auto * half : {&cls.c1, &cls.c2}) {
                out.final_cells.push_back(*half);
                classes.push_back(classify_cell(*half, m.dist, r));
            }
        } else {
            out.final_cells.push_back(cell);
            classes.push_back(cls);
        }
    }
    out.t_effective = static_cast<int>(out.final_cells.size());

    for (int i = 0; i < out.t_effective; ++i) {
        const auto & cls = classes[i];
        out.final_kinds.push_back(cls.kind);
        if (cls.kind == CellClass::Kind::Large) {
            for (int v : cls.triple)
                out.provenance.push_back({v, "large", i, -1, DualitySide::B});
        } else {
            out.provenance.push_back({cls.centre, "small-centre", i, -1, DualitySide::B});
        }
    }

    for (int i = 0; i < out.t_effective; ++i) {
        const auto & c = out.final_cells[i];
        for (int j = 0; j < out.t_effective; ++j) {
            const auto & d = out.final_cells[j];
            BiRelation rel(static_cast<int>(c.size()), static_cast<int>(d.size()));
            for (std::size_t a = 0; a < c.size(); ++a)
                for (std::size_t b = 0; b < d.size(); ++b)
                    if (m.related(c[a], d[b]))
                        rel.set(static_cast<int>(a), static_cast<int>(b));
            DualityWitness w;
            for (;;) {
                try {
                    w = find_duality(rel, out.k_max_used);
                    break;
                } catch (const NoDuality &) {
                    out.k_max_used *= 2;
                    ++out.duality_retries;
                }
            }
            out.k_observed = std::max(out.k_observed, w.order());
            for (int e : w.set)
                out.provenance.push_back({w.side == DualitySide::A ? c[e] : d[e], "duality", i, j, w.side});
        }
    }

    std::set<int> distinct;
    for (const auto & e : out.provenance)
        distinct.insert(e.vertex);
    out.S.assign(distinct.begin(), distinct.end());
    return out;
}

std::optional<Violation> verify_s_set(const MetricRelation & m, const std::vector<int> & S, Dist radius)
{
    const int n = m.size();
    // Profiles are interned so a pair key is just two small integers.
    std::vector<int> row_id(static_cast<std::size_t>(n)), col_id(static_cast<std::size_t>(n));
    {
        std::unordered_map<Bitset, int, BitsetHash> rows, cols;
        for (int u = 0; u < n; ++u) {
            Bitset row(S.size()), col(S.size());
            for (std::size_t i = 0; i < S.size(); ++i) {
                row.set(i, m.related(u, S[i]));
                col.set(i, m.related(S[i], u));
            }
            row_id[u] = rows.emplace(row, static_cast<int>(rows.size())).first->second;
            col_id[u] = cols.emplace(col, static_cast<int>(cols.size())).first->second;
        }
    }

    struct Seen {
        int u[2] = {-1, -1};
        int v[2] = {-1, -1};
    };
    std::unordered_map<std::uint64_t, Seen> seen;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (!m.far(u, v, radius))
                continue;
            const auto key = (static_cast<std::uint64_t>(row_id[u]) << 32) | static_cast<std::uint32_t>(col_id[v]);
            auto & s = seen[key];
            const int e = m.related(u, v) ? 1 : 0;
            if (s.u[e] < 0) {
                s.u[e] = u;
                s.v[e] = v;
            }
            if (s.u[1 - e] >= 0)
                return Violation{s.u[1 - e], s.v[1 - e], u, v};
        }
    return std::nullopt;
}

InterpretationSSet s_for_interpretation(const Graph & g, const Interpretation & interp, Dist r, int k_max)
{
    InterpretationSSet out{apply_interpretation(g, interp), {}, {}, {}, 0};
    out.metric = metric_relation(out.h, g);
    out.partition = refine_partition(out.metric, r);
    out.sset = build_s_set(out.metric, out.partition, r, k_max);
    out.radius = r >= kInfinity / 5 ? kInfinity - 1 : 5 * r;
    return out;
}

nlohmann::ordered_json sset_report(const MetricRelation & m, const SSet & s)
{
    auto label = [&](int v) { return m.ids.empty() ? v : m.ids[v]; };
    nlohmann::ordered_json out;
    out["r"] = s.r;
    auto S = nlohmann::ordered_json::array();
    for (int v : s.S)
        S.push_back(label(v));
    out["S"] = S;
    out["size"] = s.S.size();
    out["t_effective"] = s.t_effective;
    out["k_observed"] = s.k_observed;
    out["bound"] = s.size_bound();
    out["within_bound"] = static_cast<long long>(s.S.size()) <= s.size_bound();
    out["k_max_used"] = s.k_max_used;
    out["duality_retries"] = s.duality_retries;
    auto cells = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.final_cells.size(); ++i) {
        auto ids = nlohmann::ordered_json::array();
        for (int v : s.final_cells[i])
            ids.push_back(label(v));
        cells.push_back({{"kind", to_string(s.final_kinds[i])}, {"members", ids}});
    }
    out["cells"] = cells;
    auto prov = nlohmann::ordered_json::array();
    for (const auto & e : s.provenance) {
        nlohmann::ordered_json j{{"vertex", label(e.vertex)}, {"tag", e.tag}, {"cell", e.cell}};
        if (e.tag == "duality") {
            j["other"] = e.other;
            j["side"] = to_string(e.side);
        }
        prov.push_back(j);
    }
    out["provenance"] = prov;
    return out;
}

} // namespace fomc
