#include "fomc/parser.hpp"

#include <cctype>
#include <set>

namespace fomc {
namespace {

const std::set<std::string> kReserved = {"exists", "forall", "true", "false", "flag", "dist"};

bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
  public:
    explicit Parser(std::string_view text) : s_(text) {}

    Formula parse()
    {
        Formula f = formula();
        skip_ws();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

  private:
    [[noreturn]] void fail(const std::string & msg) const { throw ParseError(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t at, const std::string & msg) const { throw ParseError(at, msg); }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool peek(std::string_view tok)
    {
        skip_ws();
        return s_.substr(pos_, tok.size()) == tok;
    }

    bool accept(std::string_view tok)
    {
        if (!peek(tok))
            return false;
        pos_ += tok.size();
        return true;
    }

    void expect(std::string_view tok)
    {
        if (!accept(tok))
            fail(pos_ >= s_.size() ? "expected '" + std::string(tok) + "', found end of input"
                                   : "expected '" + std::string(tok) + "'");
    }

    // Lowercase word at the cursor without consuming it.
    std::string peek_word()
    {
        skip_ws();
        std::size_t end = pos_;
        while (end < s_.size() && is_name_char(s_[end]))
            ++end;
        return std::string(s_.substr(pos_, end - pos_));
    }

    bool peek_keyword(std::string_view kw)
    {
        return peek_word() == kw;
    }

    std::string variable()
    {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= s_.size())
            fail("expected variable, found end of input");
        if (!std::islower(static_cast<unsigned char>(s_[pos_])))
            fail("expected variable");
        while (pos_ < s_.size() && (std::islower(static_cast<unsigned char>(s_[pos_])) ||
                                    std::isdigit(static_cast<unsigned char>(s_[pos_]))))
            ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        if (kReserved.count(name))
            fail_at(start, "'" + name + "' is reserved");
        return name;
    }

    std::string identifier(const char * what)
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && is_name_char(s_[pos_]))
            ++pos_;
        if (pos_ == start)
            fail(pos_ >= s_.size() ? std::string("expected ") + what + ", found end of input"
                                   : std::string("expected ") + what);
        return std::string(s_.substr(start, pos_ - start));
    }

    Term term()
    {
        skip_ws();
        if (accept("@"))
            return Term::constant(identifier("constant name"));
        return Term::var(variable());
    }

    Formula formula()
    {
        if (peek_keyword("exists") || peek_keyword("forall"))
            return quantifier();
        return implication();
    }

    Formula quantifier()
    {
        bool ex = peek_keyword("exists");
        pos_ += 6;
        std::string v = variable();
        expect(".");
        Formula body = formula();
        return ex ? fo::exists(v, body) : fo::forall(v, body);
    }

    Formula implication()
    {
        Formula lhs = exclusive();
        if (accept("->"))
            return fo::implies(lhs, formula());
        return lhs;
    }

    Formula nary(Op op, std::string_view tok, Formula (Parser::*next)())
    {
        std::vector<Formula> parts{(this->*next)()};
        while (accept(tok))
            parts.push_back((this->*next)());
        if (parts.size() == 1)
            return parts.front();
        Formula::Node n;
        n.op = op;
        n.children = std::move(parts);
        return Formula(std::move(n));
    }

    Formula exclusive() { return nary(Op::Xor, "^", &Parser::disjunction); }
    Formula disjunction() { return nary(Op::Or, "|", &Parser::conjunction); }
    Formula conjunction() { return nary(Op::And, "&", &Parser::unary); }

    Formula unary()
    {
        skip_ws();
        if (accept("~"))
            return fo::negate(unary());
        if (peek_keyword("exists") || peek_keyword("forall"))
            return quantifier();
        if (accept("(")) {
            Formula f = formula();
            expect(")");
            return f;
        }
        return atom();
    }

    Formula atom()
    {
        skip_ws();
        if (pos_ >= s_.size())
            fail("expected formula, found end of input");
        std::size_t start = pos_;
        std::string word = peek_word();

        if (word == "true" || word == "false") {
            pos_ += word.size();
            return fo::truth(word == "true");
        }
        if (word == "flag") {
            pos_ += 4;
            expect("(");
            skip_ws();
            std::string name = identifier("flag name");
            expect(")");
            return fo::flag(name);
        }
        if (word == "dist") {
            pos_ += 4;
            expect("<=");
            skip_ws();
            std::size_t num_start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (pos_ == num_start)
                fail("expected distance bound");
            unsigned long long r = 0;
            try {
                r = std::stoull(std::string(s_.substr(num_start, pos_ - num_start)));
            } catch (const std::out_of_range &) {
                fail_at(num_start, "distance bound too large");
            }
            if (r >= kInfinity)
                fail_at(num_start, "distance bound too large");
            expect("(");
            Term a = term();
            expect(",");
            Term b = term();
            expect(")");
            return fo::dist_le(static_cast<Dist>(r), a, b);
        }
        if (word == "E" && peek("E(")) {
            pos_ += 1;
            expect("(");
            Term a = term();
            expect(",");
            Term b = term();
            expect(")");
            return fo::edge(a, b);
        }
        if (s_.substr(pos_, 2) == "U_") {
            pos_ += 2;
            std::size_t name_start = pos_;
            while (pos_ < s_.size() && is_name_char(s_[pos_]) && s_[pos_] != '(')
                ++pos_;
            if (pos_ == name_start)
                fail("expected colour name");
            std::string name(s_.substr(name_start, pos_ - name_start));
            expect("(");
            Term t = term();
            expect(")");
            return fo::colour(name, t);
        }
        if (s_[pos_] == '@' || std::islower(static_cast<unsigned char>(s_[pos_]))) {
            Term a = term();
            if (accept("!=")) {
                Term b = term();
                return fo::not_equal(a, b);
            }
            if (accept("=")) {
                Term b = term();
                return fo::equal(a, b);
            }
            fail("expected '=' or '!=' after term");
        }
        fail_at(start, "expected formula");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

} // namespace fomc
