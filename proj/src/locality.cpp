#include "fomc/locality.hpp"

#include "fomc/interpret.hpp"

#include <algorithm>
#include <stdexcept>

namespace fomc {

MetricRelation metric_relation(const InterpretedGraph & h, const Graph & g)
{
    MetricRelation m;
    for (int v = 0; v < h.graph.size(); ++v)
        m.rel.push_back(h.graph.neighbours(v));
    m.dist = all_pairs_distances(g).restrict_to(h.back_map);
    m.ids = h.back_map;
    return m;
}

MetricRelation metric_relation(const Graph & g)
{
    MetricRelation m;
    for (int v = 0; v < g.size(); ++v) {
        m.rel.push_back(g.neighbours(v));
        m.ids.push_back(v);
    }
    m.dist = all_pairs_distances(g);
    return m;
}

Partition Partition::single_cell(int n)
{
    Partition p;
    p.cell_of.assign(static_cast<std::size_t>(n), 0);
    if (n > 0) {
        p.cells.emplace_back(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            p.cells[0][v] = v;
    }
    return p;
}

Partition Partition::from_cells(int n, std::vector<std::vector<int>> cells)
{
    Partition p;
    p.cells = std::move(cells);
    for (auto & c : p.cells)
        std::sort(c.begin(), c.end());
    p.cell_of.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < p.size(); ++i)
        for (int v : p.cells[i])
            if (v >= 0 && v < n)
                p.cell_of[v] = i;
    p.validate(n);
    return p;
}

void Partition::validate(int n) const
{
    if (static_cast<int>(cell_of.size()) != n)
        throw std::invalid_argument("partition has the wrong universe size");
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < size(); ++i) {
        if (cells[i].empty())
            throw std::invalid_argument("partition cell " + std::to_string(i) + " is empty");
        for (int v : cells[i]) {
            if (v < 0 || v >= n)
                throw std::invalid_argument("partition element " + std::to_string(v) + " out of range");
            if (seen[v]++)
                throw std::invalid_argument("vertex " + std::to_string(v) + " is in two cells");
            if (cell_of[v] != i)
                throw std::invalid_argument("cell_of disagrees with cells at " + std::to_string(v));
        }
    }
    for (int v = 0; v < n; ++v)
        if (!seen[v])
            throw std::invalid_argument("vertex " + std::to_string(v) + " is not covered");
}

namespace {

struct PairScan {
    int true_u = -1, true_v = -1;
    int false_u = -1, false_v = -1;
    bool true_first = false;

    bool conflict() const { return true_u >= 0 && false_u >= 0; }
};

PairScan scan_pair(const MetricRelation & m, const std::vector<int> & c, const std::vector<int> & d, Dist r,
                   bool stop_on_conflict)
{
    PairScan s;
    for (int u : c) {
        for (int v : d) {
            if (!m.far(u, v, r))
                continue;
            if (m.related(u, v)) {
                if (s.true_u < 0) {
                    s.true_u = u;
                    s.true_v = v;
                    s.true_first = s.false_u < 0;
                }
            } else if (s.false_u < 0) {
                s.false_u = u;
                s.false_v = v;
            }
            if (stop_on_conflict && s.conflict())
                return s;
        }
    }
    return s;
}

Violation to_violation(const PairScan & s)
{
    if (s.true_first)
        return {s.true_u, s.true_v, s.false_u, s.false_v};
    return {s.false_u, s.false_v, s.true_u, s.true_v};
}

} // namespace

std::optional<Violation> check_r_generic(const MetricRelation & m, const Partition & p, Dist r)
{
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j) {
            auto s = scan_pair(m, p.cells[i], p.cells[j], r, true);
            if (s.conflict())
                return to_violation(s);
        }
    return std::nullopt;
}

Partition refine_partition(const MetricRelation & m, Dist r)
{
    RefineStats stats;
    return refine_partition(m, r, stats);
}

Partition refine_partition(const MetricRelation & m, Dist r, RefineStats & stats)
{
    Partition p = Partition::single_cell(m.size());
    for (;;) {
        int ci = -1, di = -1;
        PairScan s;
        for (int i = 0; i < p.size() && ci < 0; ++i)
            for (int j = 0; j < p.size() && ci < 0; ++j) {
                s = scan_pair(m, p.cells[i], p.cells[j], r, true);
                if (s.conflict()) {
                    ci = i;
                    di = j;
                }
            }
        if (ci < 0)
            return p;

        auto split = [&](int cell, auto && keep) {
            std::vector<int> kept, rest;
            for (int x : p.cells[cell])
                (keep(x) ? kept : rest).push_back(x);
            if (kept.empty() || rest.empty())
                return false;
            p.cells[cell] = std::move(kept);
            for (int x : rest)
                p.cell_of[x] = p.size();
            p.cells.push_back(std::move(rest));
            return true;
        };

        ++stats.splits;
        const int v = s.true_v;
        if (split(ci, [&](int x) { return m.far(x, v, r) && m.related(x, v); }))
            continue;
        // The false pair's u' then relates to v far away, so it separates v from v'.
        const int u2 = s.false_u;
        ++stats.fallback_splits;
        if (!split(di, [&](int y) { return m.far(u2, y, r) && m.related(u2, y); }))
            throw std::logic_error("refine_partition: no progress");
    }
}

std::string to_string(GenericStatus s)
{
    switch (s) {
    case GenericStatus::GenericallyE:
        return "E";
    case GenericStatus::GenericallyNotE:
        return "notE";
    case GenericStatus::NoFarPairs:
        return "none";
    case GenericStatus::Contradictory:
        return "contradictory";
    }
    return "?";
}

GenericStatus generic_status(const MetricRelation & m, const std::vector<int> & c, const std::vector<int> & d,
                             Dist r)
{
    auto s = scan_pair(m, c, d, r, true);
    if (s.conflict())
        return GenericStatus::Contradictory;
    if (s.true_u >= 0)
        return GenericStatus::GenericallyE;
    if (s.false_u >= 0)
        return GenericStatus::GenericallyNotE;
    return GenericStatus::NoFarPairs;
}

nlohmann::ordered_json partition_report(const MetricRelation & m, const Partition & p, Dist r)
{
    nlohmann::ordered_json out;
    out["r"] = r;
    out["cell_count"] = p.size();
    auto cells = nlohmann::ordered_json::array();
    auto sizes = nlohmann::ordered_json::array();
    for (const auto & c : p.cells) {
        auto ids = nlohmann::ordered_json::array();
        for (int v : c)
            ids.push_back(m.ids.empty() ? v : m.ids[v]);
        cells.push_back(ids);
        sizes.push_back(c.size());
    }
    out["cells"] = cells;
    out["sizes"] = sizes;
    auto matrix = nlohmann::ordered_json::array();
    for (const auto & c : p.cells) {
        auto row = nlohmann::ordered_json::array();
        for (const auto & d : p.cells)
            row.push_back(to_string(generic_status(m, c, d, r)));
        matrix.push_back(row);
    }
    out["status"] = matrix;
    return out;
}

} // namespace fomc
