#include "fomc/formula.hpp"

#include <algorithm>
#include <functional>

namespace fomc {

bool Formula::is_atom() const
{
    switch (op()) {
    case Op::True:
    case Op::False:
    case Op::Edge:
    case Op::Colour:
    case Op::Equal:
    case Op::Flag:
    case Op::Dist:
        return true;
    default:
        return false;
    }
}

bool Formula::operator==(const Formula & other) const
{
    if (node_ == other.node_)
        return true;
    const Node & a = *node_;
    const Node & b = *other.node_;
    return a.op == b.op && a.terms == b.terms && a.name == b.name && a.radius == b.radius &&
           a.children == b.children;
}

namespace fo {
namespace {
Formula make(Op op, std::vector<Term> terms = {}, std::string name = {}, Dist radius = 0,
             std::vector<Formula> children = {})
{
    Formula::Node n;
    n.op = op;
    n.terms = std::move(terms);
    n.name = std::move(name);
    n.radius = radius;
    n.children = std::move(children);
    return Formula(std::move(n));
}
} // namespace

Formula truth(bool value) { return make(value ? Op::True : Op::False); }
Formula edge(Term a, Term b) { return make(Op::Edge, {std::move(a), std::move(b)}); }
Formula colour(std::string name, Term t) { return make(Op::Colour, {std::move(t)}, std::move(name)); }
Formula equal(Term a, Term b) { return make(Op::Equal, {std::move(a), std::move(b)}); }
Formula not_equal(Term a, Term b) { return negate(equal(std::move(a), std::move(b))); }
Formula flag(std::string name) { return make(Op::Flag, {}, std::move(name)); }
Formula dist_le(Dist r, Term a, Term b) { return make(Op::Dist, {std::move(a), std::move(b)}, {}, r); }
Formula negate(Formula f) { return make(Op::Not, {}, {}, 0, {std::move(f)}); }

Formula conj(std::vector<Formula> parts)
{
    if (parts.empty())
        return truth(true);
    if (parts.size() == 1)
        return parts.front();
    return make(Op::And, {}, {}, 0, std::move(parts));
}

Formula disj(std::vector<Formula> parts)
{
    if (parts.empty())
        return truth(false);
    if (parts.size() == 1)
        return parts.front();
    return make(Op::Or, {}, {}, 0, std::move(parts));
}

Formula exclusive_or(Formula a, Formula b) { return make(Op::Xor, {}, {}, 0, {std::move(a), std::move(b)}); }
Formula implies(Formula a, Formula b) { return make(Op::Implies, {}, {}, 0, {std::move(a), std::move(b)}); }
Formula exists(std::string var, Formula body) { return make(Op::Exists, {}, std::move(var), 0, {std::move(body)}); }
Formula forall(std::string var, Formula body) { return make(Op::Forall, {}, std::move(var), 0, {std::move(body)}); }
} // namespace fo

namespace {

void collect_free(const Formula & f, std::set<std::string> & bound, std::set<std::string> & out)
{
    for (const auto & t : f.terms())
        if (t.is_variable() && !bound.count(t.name))
            out.insert(t.name);
    if (f.is_quantifier()) {
        bool fresh = bound.insert(f.name()).second;
        collect_free(f.children()[0], bound, out);
        if (fresh)
            bound.erase(f.name());
        return;
    }
    for (const auto & c : f.children())
        collect_free(c, bound, out);
}

void collect_names(const Formula & f, std::set<std::string> & out)
{
    for (const auto & t : f.terms())
        if (t.is_variable())
            out.insert(t.name);
    if (f.is_quantifier())
        out.insert(f.name());
    for (const auto & c : f.children())
        collect_names(c, out);
}

} // namespace

std::set<std::string> free_variables(const Formula & f)
{
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

std::set<std::string> variable_names(const Formula & f)
{
    std::set<std::string> out;
    collect_names(f, out);
    return out;
}

int quantifier_rank(const Formula & f)
{
    int best = 0;
    for (const auto & c : f.children())
        best = std::max(best, quantifier_rank(c));
    return best + (f.is_quantifier() ? 1 : 0);
}

std::size_t length(const Formula & f)
{
    std::size_t total = 1 + f.terms().size() + (f.is_quantifier() ? 1 : 0);
    for (const auto & c : f.children())
        total += length(c);
    return total;
}

std::size_t count_op(const Formula & f, Op op)
{
    std::size_t total = f.op() == op ? 1 : 0;
    for (const auto & c : f.children())
        total += count_op(c, op);
    return total;
}

namespace {

int precedence(const Formula & f)
{
    switch (f.op()) {
    case Op::Implies:
        return 1;
    case Op::Xor:
        return 2;
    case Op::Or:
        return 3;
    case Op::And:
        return 4;
    case Op::Not:
        // t != t prints as an atom
        return f.children()[0].op() == Op::Equal ? 6 : 5;
    case Op::Exists:
    case Op::Forall:
        return 0;
    default:
        return 6;
    }
}

void print(const Formula & f, std::string & out);

void print_operand(const Formula & f, int min_prec, std::string & out)
{
    if (f.is_quantifier() || precedence(f) < min_prec) {
        out += '(';
        print(f, out);
        out += ')';
    } else {
        print(f, out);
    }
}

void print(const Formula & f, std::string & out)
{
    const auto & t = f.terms();
    switch (f.op()) {
    case Op::True:
        out += "true";
        return;
    case Op::False:
        out += "false";
        return;
    case Op::Edge:
        out += "E(" + t[0].to_string() + "," + t[1].to_string() + ")";
        return;
    case Op::Colour:
        out += "U_" + f.name() + "(" + t[0].to_string() + ")";
        return;
    case Op::Equal:
        out += t[0].to_string() + "=" + t[1].to_string();
        return;
    case Op::Flag:
        out += "flag(" + f.name() + ")";
        return;
    case Op::Dist:
        out += "dist<=" + std::to_string(f.radius()) + "(" + t[0].to_string() + "," + t[1].to_string() + ")";
        return;
    case Op::Not: {
        const auto & c = f.children()[0];
        if (c.op() == Op::Equal) {
            out += c.terms()[0].to_string() + "!=" + c.terms()[1].to_string();
            return;
        }
        out += '~';
        print_operand(c, 5, out);
        return;
    }
    case Op::And:
    case Op::Or:
    case Op::Xor: {
        // Children of the same kind are parenthesized so nesting survives a round trip.
        const int p = precedence(f);
        const char * sep = f.op() == Op::And ? " & " : f.op() == Op::Or ? " | " : " ^ ";
        bool first = true;
        for (const auto & c : f.children()) {
            if (!first)
                out += sep;
            first = false;
            print_operand(c, p + 1, out);
        }
        return;
    }
    case Op::Implies:
        print_operand(f.children()[0], 2, out);
        out += " -> ";
        print_operand(f.children()[1], 1, out);
        return;
    case Op::Exists:
    case Op::Forall:
        out += f.op() == Op::Exists ? "exists " : "forall ";
        out += f.name() + ". ";
        print(f.children()[0], out);
        return;
    }
}

class Substituter {
  public:
    explicit Substituter(std::set<std::string> used) : used_(std::move(used)) {}

    Formula run(const Formula & f, const std::map<std::string, Term> & subst)
    {
        if (subst.empty())
            return f;
        if (f.is_quantifier())
            return quantifier(f, subst);

        Formula::Node n;
        n.op = f.op();
        n.name = f.name();
        n.radius = f.radius();
        n.terms = f.terms();
        bool changed = false;
        for (auto & t : n.terms) {
            if (!t.is_variable())
                continue;
            auto it = subst.find(t.name);
            if (it != subst.end()) {
                t = it->second;
                changed = true;
            }
        }
        for (const auto & c : f.children()) {
            n.children.push_back(run(c, subst));
            changed = changed || !(n.children.back().id() == c.id());
        }
        return changed ? Formula(std::move(n)) : f;
    }

  private:
    Formula quantifier(const Formula & f, const std::map<std::string, Term> & subst)
    {
        const Formula & body = f.children()[0];
        auto inner = subst;
        inner.erase(f.name());
        auto free = free_variables(body);
        for (auto it = inner.begin(); it != inner.end();) {
            if (!free.count(it->first))
                it = inner.erase(it);
            else
                ++it;
        }
        if (inner.empty())
            return f;

        bool captures = false;
        for (const auto & [_, t] : inner)
            captures = captures || (t.is_variable() && t.name == f.name());
        std::string var = f.name();
        if (captures) {
            var = fresh();
            inner[f.name()] = Term::var(var);
        }
        Formula::Node n;
        n.op = f.op();
        n.name = var;
        n.children.push_back(run(body, inner));
        return Formula(std::move(n));
    }

    std::string fresh()
    {
        for (;;) {
            std::string name = "v" + std::to_string(counter_++);
            if (used_.insert(name).second)
                return name;
        }
    }

    std::set<std::string> used_;
    int counter_ = 0;
};

} // namespace

std::string to_string(const Formula & f)
{
    std::string out;
    print(f, out);
    return out;
}

Formula substitute(const Formula & f, const std::map<std::string, Term> & subst)
{
    auto used = variable_names(f);
    for (const auto & [name, t] : subst) {
        used.insert(name);
        if (t.is_variable())
            used.insert(t.name);
    }
    return Substituter(std::move(used)).run(f, subst);
}

Formula rewrite_edges(const Formula & rho, const Formula & zeta)
{
    for (const auto & v : free_variables(zeta))
        if (v != "x" && v != "y")
            throw FormulaError("rewrite_edges: zeta has free variable '" + v + "', expected only x and y");

    std::function<Formula(const Formula &)> walk = [&](const Formula & f) -> Formula {
        if (f.op() == Op::Edge) {
            const auto & t = f.terms();
            return fo::exclusive_or(f, substitute(zeta, {{"x", t[0]}, {"y", t[1]}}));
        }
        if (f.children().empty())
            return f;
        Formula::Node n;
        n.op = f.op();
        n.name = f.name();
        n.radius = f.radius();
        n.terms = f.terms();
        for (const auto & c : f.children())
            n.children.push_back(walk(c));
        return Formula(std::move(n));
    };
    return walk(rho);
}

} // namespace fomc
