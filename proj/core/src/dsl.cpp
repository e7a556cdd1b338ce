#include "dshift/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <utility>

namespace dshift {
namespace {

struct Token {
    enum class Kind { Int, Ident, Sym, End };
    Kind kind = Kind::End;
    std::string lex;
    SrcPos pos;
};

bool wordy(const Token& t) {
    return t.kind == Token::Kind::Int || t.kind == Token::Kind::Ident;
}
bool cmp_sym(const std::string& s) {
    return s == "<" || s == "<=" || s == ">" || s == ">=" || s == "==" ||
           s == "!=";
}

std::vector<Token> tokenize(const std::string& text, SrcPos origin) {
    std::vector<Token> out;
    SrcPos pos = origin;
    std::size_t i = 0;
    const auto advance = [&](char c) {
        if (c == '\n') {
            ++pos.line;
            pos.col = 1;
        } else {
            ++pos.col;
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(c);
            ++i;
            continue;
        }
        const SrcPos at = pos;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string lex;
            while (i < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[i]))) {
                lex += text[i];
                advance(text[i]);
                ++i;
            }
            out.push_back({Token::Kind::Int, lex, at});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string lex;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) ||
                    text[i] == '_')) {
                lex += text[i];
                advance(text[i]);
                ++i;
            }
            out.push_back({Token::Kind::Ident, lex, at});
            continue;
        }
        // two-char comparison symbols first
        if (i + 1 < text.size()) {
            const std::string two = text.substr(i, 2);
            if (two == "<=" || two == ">=" || two == "==" || two == "!=") {
                out.push_back({Token::Kind::Sym, two, at});
                advance(text[i]);
                advance(text[i + 1]);
                i += 2;
                continue;
            }
        }
        const std::string one(1, c);
        if (one == "+" || one == "-" || one == "*" || one == "^" ||
            one == "(" || one == ")" || one == "," || one == ":" ||
            one == "<" || one == ">" || one == "/") {
            out.push_back({Token::Kind::Sym, one, at});
            advance(c);
            ++i;
            continue;
        }
        throw DslError("PARSE", at, std::string("unexpected character '") +
                                        c + "'");
    }
    out.push_back({Token::Kind::End, "", pos});
    return out;
}

// Deterministic canonical spelling of a token span; round-trips are
// compared on this form.
std::string emit(const std::vector<Token>& toks, std::size_t b,
                 std::size_t e) {
    std::string out;
    for (std::size_t i = b; i < e; ++i) {
        const Token& t = toks[i];
        if (i > b) {
            const Token& p = toks[i - 1];
            const bool space =
                (wordy(t) && wordy(p)) || cmp_sym(t.lex) || cmp_sym(p.lex) ||
                p.lex == "," || p.lex == ":" || t.lex == "and" ||
                p.lex == "and" || (t.kind == Token::Kind::Ident &&
                                   p.lex == ")");
            if (space) out += ' ';
        }
        out += t.lex;
    }
    return out;
}

struct Cursor {
    const std::vector<Token>& toks;
    std::size_t i = 0;

    const Token& peek(std::size_t ahead = 0) const {
        return toks[std::min(i + ahead, toks.size() - 1)];
    }
    const Token& next() { return toks[i++]; }
    bool accept(const std::string& lex) {
        if (peek().lex == lex && peek().kind != Token::Kind::End) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(const std::string& lex, const char* what) {
        if (!accept(lex))
            throw DslError("PARSE", peek().pos,
                           std::string("expected '") + lex + "' (" + what +
                               "), got '" + peek().lex + "'");
    }
};

}  // namespace

struct IntExpr::Node {
    enum class Kind { Num, Var, Add, Sub, Mul, Pow, Neg };
    Kind kind;
    std::int64_t value = 0;
    std::string name;
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const IntExpr::Node>;

NodePtr make_num(std::int64_t v) {
    auto n = std::make_shared<IntExpr::Node>();
    n->kind = IntExpr::Node::Kind::Num;
    n->value = v;
    return n;
}
NodePtr make_var(std::string name) {
    auto n = std::make_shared<IntExpr::Node>();
    n->kind = IntExpr::Node::Kind::Var;
    n->name = std::move(name);
    return n;
}
NodePtr make_bin(IntExpr::Node::Kind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<IntExpr::Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("integer overflow in expression");
    return static_cast<std::int64_t>(v);
}

std::int64_t eval_node(const IntExpr::Node& n, const VarMap& vars) {
    using K = IntExpr::Node::Kind;
    switch (n.kind) {
        case K::Num:
            return n.value;
        case K::Var: {
            auto it = vars.find(n.name);
            if (it == vars.end())
                throw std::out_of_range("unknown variable '" + n.name + "'");
            return it->second;
        }
        case K::Neg:
            return checked(-static_cast<__int128>(eval_node(*n.a, vars)));
        case K::Add:
            return checked(static_cast<__int128>(eval_node(*n.a, vars)) +
                           eval_node(*n.b, vars));
        case K::Sub:
            return checked(static_cast<__int128>(eval_node(*n.a, vars)) -
                           eval_node(*n.b, vars));
        case K::Mul:
            return checked(static_cast<__int128>(eval_node(*n.a, vars)) *
                           eval_node(*n.b, vars));
        case K::Pow: {
            const std::int64_t base = eval_node(*n.a, vars);
            const std::int64_t exp = eval_node(*n.b, vars);
            if (exp < 0)
                throw std::domain_error("negative exponent in expression");
            __int128 acc = 1;
            for (std::int64_t v = 0; v < exp; ++v)
                acc = static_cast<__int128>(checked(acc)) * base;
            return checked(acc);
        }
    }
    throw std::logic_error("bad node");
}

NodePtr parse_expr(Cursor& c);

NodePtr parse_atom(Cursor& c) {
    const Token& t = c.peek();
    if (t.kind == Token::Kind::Int) {
        c.next();
        return make_num(std::strtoll(t.lex.c_str(), nullptr, 10));
    }
    if (t.kind == Token::Kind::Ident) {
        c.next();
        return make_var(t.lex);
    }
    if (c.accept("(")) {
        NodePtr inner = parse_expr(c);
        c.expect(")", "closing parenthesis");
        return inner;
    }
    throw DslError("PARSE", t.pos,
                   "expected integer, variable or '(', got '" + t.lex + "'");
}

NodePtr parse_factor(Cursor& c);

NodePtr parse_power(Cursor& c) {
    NodePtr base = parse_atom(c);
    if (c.accept("^"))
        return make_bin(IntExpr::Node::Kind::Pow, base, parse_factor(c));
    return base;
}

NodePtr parse_factor(Cursor& c) {
    if (c.accept("-")) {
        auto n = std::make_shared<IntExpr::Node>();
        n->kind = IntExpr::Node::Kind::Neg;
        n->a = parse_factor(c);
        return n;
    }
    return parse_power(c);
}

NodePtr parse_term(Cursor& c) {
    NodePtr lhs = parse_factor(c);
    while (c.accept("*"))
        lhs = make_bin(IntExpr::Node::Kind::Mul, lhs, parse_factor(c));
    return lhs;
}

NodePtr parse_expr(Cursor& c) {
    NodePtr lhs = parse_term(c);
    for (;;) {
        if (c.accept("+"))
            lhs = make_bin(IntExpr::Node::Kind::Add, lhs, parse_term(c));
        else if (c.accept("-"))
            lhs = make_bin(IntExpr::Node::Kind::Sub, lhs, parse_term(c));
        else
            return lhs;
    }
}

IntExpr parse_int_expr(Cursor& c) {
    const std::size_t first = c.i;
    NodePtr root = parse_expr(c);
    return IntExpr(root, emit(c.toks, first, c.i));
}

std::int64_t const_eval(const IntExpr& e, SrcPos at) {
    try {
        return e.eval({});
    } catch (const std::out_of_range& ex) {
        throw DslError("PARSE", at,
                       std::string(ex.what()) +
                           " in constant set expression");
    } catch (const std::exception& ex) {
        throw DslError("VALIDATION", at, ex.what());
    }
}

}  // namespace

std::int64_t IntExpr::eval(const VarMap& vars) const {
    return eval_node(*root_, vars);
}

SetExpr SetExpr::parse(const std::string& text, SrcPos origin) {
    const std::vector<Token> toks = tokenize(text, origin);
    Cursor c{toks};
    SetExpr out;
    const SrcPos at = c.peek().pos;
    if (c.accept("range")) {
        out.kind_ = Kind::Range;
        c.expect("(", "range");
        const IntExpr lo = parse_int_expr(c);
        c.expect(",", "range");
        const IntExpr hi = parse_int_expr(c);
        c.expect(")", "range");
        out.lo_ = const_eval(lo, at);
        out.hi_ = const_eval(hi, at);
        if (out.lo_ > out.hi_)
            throw DslError("VALIDATION", at, "empty range (lo > hi)");
    } else if (c.accept("list")) {
        out.kind_ = Kind::List;
        c.expect("(", "list");
        do {
            out.elements_.push_back(const_eval(parse_int_expr(c), at));
        } while (c.accept(","));
        c.expect(")", "list");
        std::sort(out.elements_.begin(), out.elements_.end());
    } else if (c.accept("family")) {
        out.kind_ = Kind::Family;
        const Token& var = c.peek();
        if (var.kind != Token::Kind::Ident)
            throw DslError("PARSE", var.pos, "expected family variable");
        out.family_var_ = var.lex;
        c.next();
        c.expect(">=", "family bound");
        c.expect("0", "family bound");
        c.expect(":", "family");
        c.expect("range", "family body");
        c.expect("(", "family body");
        out.family_.push_back(parse_int_expr(c));
        c.expect(",", "family body");
        out.family_.push_back(parse_int_expr(c));
        c.expect(")", "family body");
        // decidability: the lower endpoint must increase strictly in s
        std::int64_t prev_lo = 0;
        for (std::int64_t s = 0; s <= 32; ++s) {
            std::int64_t lo, hi;
            try {
                lo = out.family_[0].eval({{out.family_var_, s}});
                hi = out.family_[1].eval({{out.family_var_, s}});
            } catch (const std::overflow_error&) {
                break;  // endpoints left int64 range; search stops earlier
            } catch (const std::exception& ex) {
                throw DslError("PARSE", at, ex.what());
            }
            if (lo > hi)
                throw DslError("NONMONOTONE-FAMILY", at,
                               "empty block at " + out.family_var_ + "=" +
                                   std::to_string(s));
            if (s > 0 && lo <= prev_lo)
                throw DslError("NONMONOTONE-FAMILY", at,
                               "lower endpoint not strictly increasing at " +
                                   out.family_var_ + "=" + std::to_string(s));
            prev_lo = lo;
        }
    } else {
        throw DslError("PARSE", at,
                       "expected range(...), list(...) or family ...");
    }
    if (c.peek().kind != Token::Kind::End)
        throw DslError("PARSE", c.peek().pos,
                       "trailing input after set expression");
    out.source_ = emit(toks, 0, toks.size() - 1);
    return out;
}

bool SetExpr::contains(std::int64_t x) const {
    switch (kind_) {
        case Kind::Range:
            return lo_ <= x && x <= hi_;
        case Kind::List:
            return std::binary_search(elements_.begin(), elements_.end(), x);
        case Kind::Family:
            for (std::int64_t s = 0; s <= 63; ++s) {
                std::int64_t lo;
                try {
                    lo = family_[0].eval({{family_var_, s}});
                } catch (const std::overflow_error&) {
                    return false;
                }
                if (lo > x) return false;
                try {
                    if (x <= family_[1].eval({{family_var_, s}})) return true;
                } catch (const std::overflow_error&) {
                    return true;  // hi beyond int64 range, x >= lo
                }
            }
            return false;
    }
    return false;
}

Predicate Predicate::parse(const std::string& text, SrcPos origin) {
    const std::vector<Token> toks = tokenize(text, origin);
    Cursor c{toks};
    Predicate out;
    do {
        if (c.peek().kind == Token::Kind::Ident && c.peek(1).lex == "in") {
            IntExpr var = parse_int_expr(c);  // single identifier
            c.expect("in", "set membership");
            const Token& name = c.peek();
            if (name.kind != Token::Kind::Ident)
                throw DslError("PARSE", name.pos, "expected set name");
            c.next();
            out.atoms_.emplace_back(Op::InSet, std::move(var),
                                    IntExpr(nullptr, ""), name.lex);
            continue;
        }
        IntExpr lhs = parse_int_expr(c);
        const Token& op = c.peek();
        Op code;
        if (op.lex == "<")
            code = Op::Lt;
        else if (op.lex == "<=")
            code = Op::Le;
        else if (op.lex == ">")
            code = Op::Gt;
        else if (op.lex == ">=")
            code = Op::Ge;
        else if (op.lex == "==")
            code = Op::Eq;
        else if (op.lex == "!=")
            code = Op::Ne;
        else
            throw DslError("PARSE", op.pos,
                           "expected comparison operator, got '" + op.lex +
                               "'");
        c.next();
        IntExpr rhs = parse_int_expr(c);
        out.atoms_.emplace_back(code, std::move(lhs), std::move(rhs), "");
    } while (c.accept("and"));
    if (c.peek().kind != Token::Kind::End)
        throw DslError("PARSE", c.peek().pos,
                       "trailing input after predicate");
    out.source_ = emit(toks, 0, toks.size() - 1);
    return out;
}

bool Predicate::eval(const VarMap& vars, const SetEnv& sets) const {
    for (const Atom& a : atoms_) {
        const std::int64_t l = a.lhs.eval(vars);
        bool ok = false;
        switch (a.op) {
            case Op::InSet: {
                auto it = sets.find(a.set_name);
                ok = it != sets.end() && it->second.contains(l);
                break;
            }
            case Op::Lt: ok = l < a.rhs.eval(vars); break;
            case Op::Le: ok = l <= a.rhs.eval(vars); break;
            case Op::Gt: ok = l > a.rhs.eval(vars); break;
            case Op::Ge: ok = l >= a.rhs.eval(vars); break;
            case Op::Eq: ok = l == a.rhs.eval(vars); break;
            case Op::Ne: ok = l != a.rhs.eval(vars); break;
        }
        if (!ok) return false;
    }
    return true;
}

void Predicate::check_sets(const SetEnv& sets, SrcPos at) const {
    for (const Atom& a : atoms_)
        if (a.op == Op::InSet && sets.find(a.set_name) == sets.end())
            throw DslError("VALIDATION", at,
                           "unknown set '" + a.set_name + "'");
}

double parse_weight_value(const std::string& text, SrcPos origin) {
    std::string t = text;
    t.erase(0, t.find_first_not_of(" \t"));
    const std::size_t last = t.find_last_not_of(" \t");
    t.erase(last == std::string::npos ? 0 : last + 1);
    if (t.empty()) throw DslError("PARSE", origin, "empty weight value");
    double value;
    const std::size_t slash = t.find('/');
    char* end = nullptr;
    if (slash != std::string::npos) {
        const double num = std::strtod(t.substr(0, slash).c_str(), &end);
        const double den = std::strtod(t.substr(slash + 1).c_str(), &end);
        if (den == 0.0)
            throw DslError("VALIDATION", origin, "zero denominator");
        value = num / den;
    } else {
        value = std::strtod(t.c_str(), &end);
        if (end == t.c_str())
            throw DslError("PARSE", origin, "bad weight value '" + t + "'");
    }
    if (!(value > 0.0))
        throw DslError("VALIDATION", origin,
                       "weight values must be positive (got '" + t + "')");
    return value;
}

}  // namespace dshift
