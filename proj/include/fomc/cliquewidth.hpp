#pragma once

#include "fomc/graph.hpp"

#include <json.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fomc {

class KExpressionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct KExpr;
using KExprPtr = std::shared_ptr<const KExpr>;

/// k-expression node. Labels start at 1.
struct KExpr {
    enum class Kind { Create, Union, Join, Relabel };
    Kind kind = Kind::Create;
    int a = 0, b = 0;  // Create: a = label; Join: labels a, b; Relabel: a -> b
    int vertex = -1;   // Create: optional target vertex id
    KExprPtr left, right;
};

namespace kx {
KExprPtr create(int label, int vertex = -1);
KExprPtr unite(KExprPtr left, KExprPtr right);
KExprPtr join(int i, int j, KExprPtr e);
KExprPtr relabel(int from, int to, KExprPtr e);
} // namespace kx

/// Text form: v(i), u(e1,e2), j(i,j,e), r(i,j,e).
std::string to_string(const KExprPtr & e);
KExprPtr parse_kexpression(std::string_view text);

/// Largest label used.
int kexpression_width(const KExprPtr & e);

/// Graph built by the expression, labels dropped. Vertices are numbered by
/// leaf order unless every leaf carries a vertex id and together they form
/// 0..n-1, in which case those ids are used. If k > 0, labels above k are an
/// error. join(i, i) is always an error.
Graph eval_kexpression(const KExprPtr & e, int k = 0);

struct CliquewidthResult {
    int width = 0;          // exact value when !exceeded
    bool exceeded = false;  // cw > k_cap
    int k_cap = 0;
    KExprPtr witness;       // width-expression reproducing G vertex by vertex

    std::string to_string() const
    {
        return exceeded ? ">" + std::to_string(k_cap) : std::to_string(width);
    }
};

inline constexpr int kCliquewidthVertexLimit = 16;

/// Exact cliquewidth by search over (vertex subset, label partition) states.
/// Throws std::invalid_argument above kCliquewidthVertexLimit vertices.
CliquewidthResult cliquewidth_exact(const Graph & g, int k_cap);

/// Width of a linear expression that adds vertices in BFS order and merges
/// vertices as soon as their outside neighbourhoods agree. An upper bound only.
struct GreedyWidth {
    int width = 0;
    KExprPtr expression;
};
GreedyWidth greedy_linear_width(const Graph & g);

class BallTooLarge : public std::runtime_error {
  public:
    BallTooLarge(int vertex, int size, int budget)
        : std::runtime_error("ball around vertex " + std::to_string(vertex) + " has " + std::to_string(size) +
                             " vertices, budget is " + std::to_string(budget)),
          vertex_(vertex), size_(size)
    {
    }
    int vertex() const { return vertex_; }
    int size() const { return size_; }

  private:
    int vertex_;
    int size_;
};

inline constexpr int kDefaultBallBudget = 10;

struct LocalCliquewidth {
    int value = 0;
    bool exceeded = false;
    int k_cap = 0;
    int argmax = -1;             // a vertex whose ball attains the value
    std::vector<int> per_vertex; // cw of each ball; k_cap + 1 when exceeded
    int max_ball = 0;

    std::string to_string() const
    {
        return exceeded ? ">" + std::to_string(k_cap) : std::to_string(value);
    }
};

/// max over v of cw(G[ball(v, r)]). Throws BallTooLarge for the first vertex
/// (by id) whose ball exceeds `budget`.
LocalCliquewidth local_cliquewidth(const Graph & g, Dist r, int k_cap, int budget = kDefaultBallBudget,
                                   int workers = 1);

nlohmann::ordered_json lcw_report(const LocalCliquewidth & l, Dist r);

} // namespace fomc
