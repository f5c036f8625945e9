#include "fomc/graph.hpp"

#include <algorithm>
#include <deque>

namespace fomc {

std::string dist_to_string(Dist d)
{
    return d == kInfinity ? std::string("inf") : std::to_string(d);
}

Graph::Graph(int n) : n_(n)
{
    if (n < 0)
        throw GraphError("negative vertex count");
    adj_.assign(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
}

void Graph::check_vertex(int v) const
{
    if (v < 0 || v >= n_)
        throw GraphError("invalid vertex id " + std::to_string(v) + " (graph has " + std::to_string(n_) +
                         " vertices)");
}

std::size_t Graph::edge_count() const
{
    std::size_t twice = 0;
    for (const auto & row : adj_)
        twice += row.count();
    return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (auto v = adj_[u].find_next(static_cast<std::size_t>(u) + 1); v < adj_[u].size();
             v = adj_[u].find_next(v + 1))
            out.emplace_back(u, static_cast<int>(v));
    return out;
}

void Graph::add_edge(int u, int v)
{
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        throw GraphError("self-loop at vertex " + std::to_string(u));
    adj_[u].set(v);
    adj_[v].set(u);
}

void Graph::remove_edge(int u, int v)
{
    check_vertex(u);
    check_vertex(v);
    adj_[u].reset(v);
    adj_[v].reset(u);
}

void Graph::toggle_edge(int u, int v)
{
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        throw GraphError("self-loop at vertex " + std::to_string(u));
    adj_[u].flip(v);
    adj_[v].flip(u);
}

void Graph::set_colour(const std::string & name, const std::vector<int> & members)
{
    Bitset b(static_cast<std::size_t>(n_));
    for (int v : members) {
        check_vertex(v);
        b.set(v);
    }
    colours_[name] = std::move(b);
}

void Graph::set_colour(const std::string & name, Bitset members)
{
    if (members.size() != static_cast<std::size_t>(n_))
        throw GraphError("colour '" + name + "' has the wrong universe size");
    colours_[name] = std::move(members);
}

void Graph::set_constant(const std::string & name, int v)
{
    check_vertex(v);
    constants_[name] = v;
}

void Graph::set_flag(const std::string & name, bool value) { flags_[name] = value; }

std::vector<Dist> bfs_from(const Graph & g, int source)
{
    g.check_vertex(source);
    std::vector<Dist> dist(static_cast<std::size_t>(g.size()), kInfinity);
    std::deque<int> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        g.neighbours(u).for_each([&](int w) {
            if (dist[w] == kInfinity) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        });
    }
    return dist;
}

Dist bfs_dist(const Graph & g, int u, int v)
{
    g.check_vertex(v);
    return bfs_from(g, u)[v];
}

std::vector<int> ball(const Graph & g, int v, Dist r)
{
    auto dist = bfs_from(g, v);
    std::vector<int> out;
    for (int w = 0; w < g.size(); ++w)
        if (dist[w] <= r)
            out.push_back(w);
    return out;
}

DistanceMatrix DistanceMatrix::restrict_to(const std::vector<int> & ids) const
{
    DistanceMatrix out(static_cast<int>(ids.size()));
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = 0; j < ids.size(); ++j)
            out.at(static_cast<int>(i), static_cast<int>(j)) = (*this)(ids[i], ids[j]);
    return out;
}

DistanceMatrix all_pairs_distances(const Graph & g)
{
    DistanceMatrix m(g.size());
    for (int u = 0; u < g.size(); ++u) {
        auto row = bfs_from(g, u);
        for (int v = 0; v < g.size(); ++v)
            m.at(u, v) = row[v];
    }
    return m;
}

InducedSubgraph induced_subgraph(const Graph & g, const std::vector<int> & vertices)
{
    std::vector<int> ids = vertices;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<int> new_id(static_cast<std::size_t>(g.size()), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        g.check_vertex(ids[i]);
        new_id[ids[i]] = static_cast<int>(i);
    }

    InducedSubgraph out{Graph(static_cast<int>(ids.size())), ids, {}};
    for (std::size_t i = 0; i < ids.size(); ++i)
        g.neighbours(ids[i]).for_each([&](int w) {
            if (new_id[w] > static_cast<int>(i))
                out.graph.add_edge(static_cast<int>(i), new_id[w]);
        });
    for (const auto & [name, members] : g.colours()) {
        Bitset b(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (members.test(ids[i]))
                b.set(i);
        out.graph.set_colour(name, std::move(b));
    }
    for (const auto & [name, v] : g.constants()) {
        if (new_id[v] >= 0)
            out.graph.set_constant(name, new_id[v]);
        else
            out.dropped_constants.push_back(name);
    }
    for (const auto & [name, value] : g.flags())
        out.graph.set_flag(name, value);
    return out;
}

void FlipSpec::validate(int n) const
{
    if (static_cast<int>(part_of.size()) != n)
        throw GraphError("flip partition covers " + std::to_string(part_of.size()) + " vertices, graph has " +
                         std::to_string(n));
    std::vector<bool> used(static_cast<std::size_t>(std::max(part_count, 0)), false);
    for (int label : part_of) {
        if (label < 0 || label >= part_count)
            throw GraphError("flip partition label " + std::to_string(label) + " out of range");
        used[label] = true;
    }
    for (int i = 0; i < part_count; ++i)
        if (!used[i])
            throw GraphError("flip partition part " + std::to_string(i) + " is empty");
    for (const auto & [i, j] : relation)
        if (i < 0 || j >= part_count || i > j)
            throw GraphError("flip relation pair out of range");
}

Graph apply_flip(const Graph & g, const FlipSpec & flip)
{
    flip.validate(g.size());
    const auto n = static_cast<std::size_t>(g.size());
    std::vector<Bitset> cells(static_cast<std::size_t>(flip.part_count), Bitset(n));
    for (int v = 0; v < g.size(); ++v)
        cells[flip.part_of[v]].set(v);
    std::vector<Bitset> flip_mask(static_cast<std::size_t>(flip.part_count), Bitset(n));
    for (const auto & [i, j] : flip.relation) {
        flip_mask[i] |= cells[j];
        flip_mask[j] |= cells[i];
    }

    Graph out = g;
    for (int u = 0; u < g.size(); ++u) {
        Bitset row = g.neighbours(u) ^ flip_mask[flip.part_of[u]];
        row.reset(u);
        row.for_each([&](int v) {
            if (v > u)
                out.add_edge(u, v);
        });
        g.neighbours(u).for_each([&](int v) {
            if (v > u && !row.test(v))
                out.remove_edge(u, v);
        });
    }
    return out;
}

Bitset trace_of(const Graph & g, int v, const std::vector<int> & guard)
{
    Bitset t(guard.size());
    for (std::size_t i = 0; i < guard.size(); ++i)
        if (g.adjacent(v, guard[i]))
            t.set(i);
    return t;
}

GuardedPartition guarded_partition(const Graph & g, const std::vector<int> & guard)
{
    for (int s : guard)
        g.check_vertex(s);
    GuardedPartition out;
    out.vertex_trace.reserve(static_cast<std::size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v)
        out.vertex_trace.push_back(trace_of(g, v, guard));

    std::map<Bitset, int> label;
    for (const auto & t : out.vertex_trace)
        label.emplace(t, 0);
    for (auto & [t, l] : label) {
        l = static_cast<int>(out.part_trace.size());
        out.part_trace.push_back(t);
    }
    out.spec.part_count = static_cast<int>(out.part_trace.size());
    out.spec.part_of.reserve(static_cast<std::size_t>(g.size()));
    for (const auto & t : out.vertex_trace)
        out.spec.part_of.push_back(label.at(t));
    return out;
}

} // namespace fomc
