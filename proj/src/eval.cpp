#include "fomc/eval.hpp"

#include <algorithm>

namespace fomc {
namespace {
constexpr std::size_t kDenseLimit = std::size_t{1} << 20;
constexpr std::size_t kSparseLimit = std::size_t{1} << 22;
} // namespace

Evaluator::Evaluator(const Graph & g, const Formula & f, std::vector<std::string> params) : g_(g)
{
    std::map<const Formula::Node *, int> seen;
    root_ = compile(f, seen);
    for (const auto & p : params)
        param_slots_.push_back(slot_of(p));
    vals_.assign(slots_.size(), -1);
    dist_rows_.resize(static_cast<std::size_t>(g.size()));
    for (const auto & name : free_variables(f)) {
        root_free_.push_back(slots_.at(name));
        root_free_names_.push_back(name);
    }
}

int Evaluator::slot_of(const std::string & name)
{
    auto [it, inserted] = slots_.emplace(name, static_cast<int>(slots_.size()));
    return it->second;
}

int Evaluator::compile(const Formula & f, std::map<const Formula::Node *, int> & seen)
{
    if (auto it = seen.find(f.id()); it != seen.end())
        return it->second;

    Node n;
    n.op = f.op();
    n.radius = f.radius();
    for (const auto & t : f.terms()) {
        Ref r;
        if (t.is_variable()) {
            r.slot = slot_of(t.name);
        } else {
            auto c = g_.constants().find(t.name);
            if (c == g_.constants().end())
                throw EvalError("unknown constant '@" + t.name + "'");
            r.vertex = c->second;
        }
        n.refs.push_back(r);
    }
    if (f.op() == Op::Colour) {
        auto c = g_.colours().find(f.name());
        if (c == g_.colours().end())
            throw EvalError("unknown colour '" + f.name() + "'");
        n.colour = &c->second;
    } else if (f.op() == Op::Flag) {
        auto c = g_.flags().find(f.name());
        if (c == g_.flags().end())
            throw EvalError("unknown flag '" + f.name() + "'");
        n.flag = c->second;
    } else if (f.is_quantifier()) {
        n.bound_slot = slot_of(f.name());
    }
    for (const auto & c : f.children())
        n.children.push_back(compile(c, seen));

    if (!f.is_atom()) {
        for (const auto & v : free_variables(f))
            n.free_slots.push_back(slot_of(v));
        const auto size = static_cast<std::size_t>(std::max(g_.size(), 1));
        std::size_t cells = 1;
        bool fits = true;
        for (std::size_t i = 0; i < n.free_slots.size() && fits; ++i) {
            if (cells > (std::size_t{1} << 62) / size)
                fits = false;
            cells *= size;
        }
        n.memo = fits;
        n.dense = fits && cells <= kDenseLimit;
        n.cells = cells;
    }

    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(n));
    seen.emplace(f.id(), id);
    return id;
}

const std::vector<Dist> & Evaluator::dist_row(int v)
{
    auto & row = dist_rows_[v];
    if (!row)
        row = std::make_unique<std::vector<Dist>>(bfs_from(g_, v));
    return *row;
}

bool Evaluator::run(int id)
{
    Node & n = nodes_[id];
    if (!n.memo)
        return compute(n);

    std::uint64_t key = 0;
    for (int s : n.free_slots)
        key = key * static_cast<std::uint64_t>(g_.size()) + static_cast<std::uint64_t>(vals_[s]);
    if (n.dense) {
        if (n.table.empty())
            n.table.assign(n.cells, -1);
        auto cached = n.table[key];
        if (cached >= 0)
            return cached != 0;
        bool r = compute(n);
        n.table[key] = r ? 1 : 0;
        return r;
    }
    if (auto it = n.sparse.find(key); it != n.sparse.end())
        return it->second;
    bool r = compute(n);
    if (n.sparse.size() >= kSparseLimit)
        n.sparse.clear();
    n.sparse.emplace(key, r);
    return r;
}

bool Evaluator::compute(Node & n)
{
    switch (n.op) {
    case Op::True:
        return true;
    case Op::False:
        return false;
    case Op::Edge:
        return g_.adjacent(value(n.refs[0]), value(n.refs[1]));
    case Op::Colour:
        return n.colour->test(value(n.refs[0]));
    case Op::Equal:
        return value(n.refs[0]) == value(n.refs[1]);
    case Op::Flag:
        return n.flag;
    case Op::Dist:
        return dist_row(value(n.refs[0]))[value(n.refs[1])] <= n.radius;
    case Op::Not:
        return !run(n.children[0]);
    case Op::And:
        for (int c : n.children)
            if (!run(c))
                return false;
        return true;
    case Op::Or:
        for (int c : n.children)
            if (run(c))
                return true;
        return false;
    case Op::Xor: {
        bool parity = false;
        for (int c : n.children)
            parity ^= run(c);
        return parity;
    }
    case Op::Implies:
        return !run(n.children[0]) || run(n.children[1]);
    case Op::Exists:
    case Op::Forall: {
        const int slot = n.bound_slot;
        const int body = n.children[0];
        const bool want = n.op == Op::Exists;
        const int saved = vals_[slot];
        bool result = !want;
        for (int v = 0; v < g_.size(); ++v) {
            vals_[slot] = v;
            if (run(body) == want) {
                result = want;
                break;
            }
        }
        vals_[slot] = saved;
        return result;
    }
    }
    return false;
}

bool Evaluator::operator()(const std::vector<int> & args)
{
    if (args.size() != param_slots_.size())
        throw EvalError("expected " + std::to_string(param_slots_.size()) + " arguments, got " +
                        std::to_string(args.size()));
    std::fill(vals_.begin(), vals_.end(), -1);
    for (std::size_t i = 0; i < args.size(); ++i) {
        g_.check_vertex(args[i]);
        vals_[param_slots_[i]] = args[i];
    }
    for (std::size_t i = 0; i < root_free_.size(); ++i)
        if (vals_[root_free_[i]] < 0)
            throw EvalError("unbound variable '" + root_free_names_[i] + "'");
    return run(root_);
}

bool Evaluator::eval(const Assignment & a)
{
    std::fill(vals_.begin(), vals_.end(), -1);
    for (const auto & [name, v] : a) {
        auto it = slots_.find(name);
        if (it == slots_.end())
            continue;
        g_.check_vertex(v);
        vals_[it->second] = v;
    }
    for (std::size_t i = 0; i < root_free_.size(); ++i)
        if (vals_[root_free_[i]] < 0)
            throw EvalError("unbound variable '" + root_free_names_[i] + "'");
    return run(root_);
}

bool evaluate(const Graph & g, const Formula & f, const Assignment & a)
{
    Evaluator ev(g, f);
    return ev.eval(a);
}

RangeResult range_of(const Graph & g, const Formula & phi, const std::vector<int> & U)
{
    for (const auto & v : free_variables(phi))
        if (v != "x" && v != "y")
            throw EvalError("range_of: formula has free variable '" + v + "', expected only x and y");
    Evaluator ev(g, phi, {"x", "y"});
    RangeResult out;
    for (int u : U) {
        const auto dist = bfs_from(g, u);
        for (int v : U) {
            if (!ev({u, v}))
                continue;
            out.satisfied_any = true;
            out.value = std::max(out.value, dist[v]);
        }
    }
    return out;
}

RangeResult range_of(const Graph & g, const Formula & phi)
{
    std::vector<int> all(static_cast<std::size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v)
        all[v] = v;
    return range_of(g, phi, all);
}

} // namespace fomc
