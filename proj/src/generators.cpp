#include "fomc/generators.hpp"

#include "fomc/cliquewidth.hpp"

#include <random>

namespace fomc {

namespace {

void require(bool ok, const std::string & msg)
{
    if (!ok)
        throw GeneratorError(msg);
}

} // namespace

Graph path_graph(int n)
{
    require(n >= 1, "path needs n >= 1");
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int n)
{
    require(n >= 3, "cycle needs n >= 3");
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

Graph grid_graph(int rows, int cols)
{
    require(rows >= 1 && cols >= 1, "grid needs rows, cols >= 1");
    Graph g(rows * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const int v = i * cols + j;
            if (j + 1 < cols)
                g.add_edge(v, v + 1);
            if (i + 1 < rows)
                g.add_edge(v, v + cols);
        }
    return g;
}

Graph clique_graph(int n)
{
    require(n >= 1, "clique needs n >= 1");
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

Graph star_graph(int leaves)
{
    require(leaves >= 0, "star needs leaves >= 0");
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i)
        g.add_edge(0, i);
    return g;
}

Graph half_graph(int n)
{
    require(n >= 1, "half_graph needs n >= 1");
    Graph g(2 * n);
    std::vector<int> a, b;
    for (int i = 0; i < n; ++i) {
        a.push_back(i);
        b.push_back(n + i);
        for (int j = i; j < n; ++j)
            g.add_edge(i, n + j);
    }
    g.set_colour("a", a);
    g.set_colour("b", b);
    return g;
}

Graph random_graph(int n, double p, std::uint64_t seed)
{
    require(n >= 1, "random needs n >= 1");
    require(p >= 0.0 && p <= 1.0, "random needs 0 <= p <= 1");
    std::mt19937_64 rng(seed);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (draw < p)
                g.add_edge(u, v);
        }
    return g;
}

Graph shattered_triple_graph()
{
    Graph g(11);
    for (int mask = 0; mask < 8; ++mask)
        for (int i = 0; i < 3; ++i)
            if ((mask >> i) & 1)
                g.add_edge(i, 3 + mask);
    return g;
}

std::string GenSpec::label() const
{
    if (kind == "grid")
        return "grid-" + std::to_string(rows) + "x" + std::to_string(cols);
    if (kind == "random")
        return "random-" + std::to_string(n) + "-s" + std::to_string(seed);
    if (kind == "kexpr" || kind == "shattered_triple")
        return kind;
    return kind + "-" + std::to_string(n);
}

Graph generate(const GenSpec & spec)
{
    if (spec.kind == "path")
        return path_graph(spec.n);
    if (spec.kind == "cycle")
        return cycle_graph(spec.n);
    if (spec.kind == "grid")
        return grid_graph(spec.rows, spec.cols);
    if (spec.kind == "clique")
        return clique_graph(spec.n);
    if (spec.kind == "star")
        return star_graph(spec.n);
    if (spec.kind == "half_graph")
        return half_graph(spec.n);
    if (spec.kind == "random")
        return random_graph(spec.n, spec.p, spec.seed);
    if (spec.kind == "shattered_triple")
        return shattered_triple_graph();
    if (spec.kind == "kexpr") {
        require(!spec.kexpr.empty(), "kexpr needs an expression");
        try {
            return eval_kexpression(parse_kexpression(spec.kexpr));
        } catch (const KExpressionError & e) {
            throw GeneratorError(e.what());
        }
    }
    throw GeneratorError("unknown generator kind '" + spec.kind + "'");
}

nlohmann::ordered_json gen_spec_to_json(const GenSpec & spec)
{
    nlohmann::ordered_json j;
    j["kind"] = spec.kind;
    if (spec.kind == "grid") {
        j["rows"] = spec.rows;
        j["cols"] = spec.cols;
    } else if (spec.kind == "kexpr") {
        j["expr"] = spec.kexpr;
    } else if (spec.kind != "shattered_triple") {
        j["n"] = spec.n;
    }
    if (spec.kind == "random") {
        j["p"] = spec.p;
        j["seed"] = spec.seed;
    }
    return j;
}

GenSpec gen_spec_from_json(const nlohmann::json & j)
{
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw GeneratorError("generator spec needs a string 'kind'");
    GenSpec s;
    try {
        s.kind = j["kind"].get<std::string>();
        s.n = j.value("n", 0);
        s.rows = j.value("rows", 0);
        s.cols = j.value("cols", 0);
        s.p = j.value("p", 0.3);
        s.seed = j.value("seed", std::uint64_t{0});
        s.kexpr = j.value("expr", std::string{});
    } catch (const nlohmann::json::exception & e) {
        throw GeneratorError(std::string("bad generator spec: ") + e.what());
    }
    return s;
}

} // namespace fomc
