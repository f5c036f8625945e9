#pragma once

#include "fomc/graph.hpp"

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fomc {

class FormulaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A term is a variable or a named constant ("@name" in text).
struct Term {
    enum class Kind { Variable, Constant };
    Kind kind = Kind::Variable;
    std::string name;

    static Term var(std::string name) { return {Kind::Variable, std::move(name)}; }
    static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }

    bool is_variable() const { return kind == Kind::Variable; }
    std::string to_string() const { return is_variable() ? name : "@" + name; }
    bool operator==(const Term &) const = default;
};

enum class Op {
    True,
    False,
    Edge,    // E(t1, t2)
    Colour,  // U_name(t)
    Equal,   // t1 = t2
    Flag,    // flag(name)
    Dist,    // dist<=r(t1, t2)
    Not,
    And,     // n-ary, >= 2 children
    Or,      // n-ary, >= 2 children
    Xor,     // n-ary, >= 2 children
    Implies, // binary
    Exists,
    Forall,
};

/// Immutable first-order formula over the graph signature. Cheap to copy;
/// subtrees are shared.
class Formula {
  public:
    struct Node {
        Op op = Op::True;
        std::vector<Term> terms;
        std::string name; // colour, flag, or bound variable
        Dist radius = 0;
        std::vector<Formula> children;
    };

    explicit Formula(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

    Op op() const { return node_->op; }
    const std::vector<Term> & terms() const { return node_->terms; }
    const std::string & name() const { return node_->name; }
    Dist radius() const { return node_->radius; }
    const std::vector<Formula> & children() const { return node_->children; }
    const Node * id() const { return node_.get(); }

    bool is_quantifier() const { return op() == Op::Exists || op() == Op::Forall; }
    bool is_atom() const;

    bool operator==(const Formula & other) const;

  private:
    std::shared_ptr<const Node> node_;
};

namespace fo {
Formula truth(bool value);
Formula edge(Term a, Term b);
Formula colour(std::string name, Term t);
Formula equal(Term a, Term b);
Formula not_equal(Term a, Term b);
Formula flag(std::string name);
Formula dist_le(Dist r, Term a, Term b);
Formula negate(Formula f);
/// Empty conjunction is `true`; a single conjunct is returned as is.
Formula conj(std::vector<Formula> parts);
/// Empty disjunction is `false`; a single disjunct is returned as is.
Formula disj(std::vector<Formula> parts);
Formula exclusive_or(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula exists(std::string var, Formula body);
Formula forall(std::string var, Formula body);

inline Term x() { return Term::var("x"); }
inline Term y() { return Term::var("y"); }
} // namespace fo

std::set<std::string> free_variables(const Formula & f);
/// Every variable name occurring anywhere, bound or free.
std::set<std::string> variable_names(const Formula & f);
int quantifier_rank(const Formula & f);
/// Number of symbols: one per node, one per term, one per bound variable.
std::size_t length(const Formula & f);
std::size_t count_op(const Formula & f, Op op);

/// Text form accepted by parse_formula; parse_formula(to_string(f)) == f.
std::string to_string(const Formula & f);

/// Simultaneous capture-avoiding substitution of free variables by terms.
Formula substitute(const Formula & f, const std::map<std::string, Term> & subst);

/// Replaces every edge atom E(t1,t2) of `rho` by E(t1,t2) ^ zeta[x:=t1, y:=t2].
/// Edge atoms inside the inserted copies of zeta are left alone. Throws
/// FormulaError if zeta has free variables other than x and y.
Formula rewrite_edges(const Formula & rho, const Formula & zeta);

} // namespace fomc
