#pragma once

#include "fomc/formula.hpp"
#include "fomc/graph.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace fomc {

class EvalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Assignment = std::map<std::string, int>;

/// Tarskian evaluation of one formula on one graph.
///
/// Names (colours, constants, flags) are resolved when the evaluator is built
/// and unknown ones throw EvalError. Results of non-atomic subformulas are
/// memoized on the values of their free variables and survive across calls,
/// so evaluating the same formula on many assignments is cheap. Not
/// thread-safe; build one evaluator per thread.
class Evaluator {
  public:
    /// `params` fixes the argument order for operator(); it must cover the
    /// free variables of `f` when operator() is used.
    Evaluator(const Graph & g, const Formula & f, std::vector<std::string> params = {});

    bool operator()(const std::vector<int> & args);
    bool eval(const Assignment & a);

    const Graph & graph() const { return g_; }

  private:
    struct Ref {
        int slot = -1;   // variable slot, or -1 for a constant
        int vertex = -1; // resolved constant
    };
    struct Node {
        Op op;
        std::vector<int> children;
        std::vector<Ref> refs;
        const Bitset * colour = nullptr;
        bool flag = false;
        Dist radius = 0;
        int bound_slot = -1;
        std::vector<int> free_slots;
        // memo: dense (-1 unknown) or sparse
        bool memo = false;
        bool dense = false;
        std::size_t cells = 0;
        std::vector<std::int8_t> table;
        std::unordered_map<std::uint64_t, bool> sparse;
    };

    int compile(const Formula & f, std::map<const Formula::Node *, int> & seen);
    int slot_of(const std::string & name);
    int value(const Ref & r) const { return r.slot >= 0 ? vals_[r.slot] : r.vertex; }
    const std::vector<Dist> & dist_row(int v);
    bool run(int id);
    bool compute(Node & n);

    const Graph & g_;
    std::vector<Node> nodes_;
    int root_ = -1;
    std::map<std::string, int> slots_;
    std::vector<int> vals_;
    std::vector<int> param_slots_;
    std::vector<int> root_free_;
    std::vector<std::string> root_free_names_;
    std::vector<std::unique_ptr<std::vector<Dist>>> dist_rows_;
};

bool evaluate(const Graph & g, const Formula & f, const Assignment & a = {});

struct RangeResult {
    Dist value = 0;             // kInfinity if a satisfied pair is disconnected
    bool satisfied_any = false; // false means value is the conventional 0
};

/// Largest distance between u, v in U with phi(u, v). Distances are those of g.
/// phi may mention only x and y freely.
RangeResult range_of(const Graph & g, const Formula & phi, const std::vector<int> & U);
RangeResult range_of(const Graph & g, const Formula & phi);

} // namespace fomc
