#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace dshift {

struct SrcPos {
    std::size_t line = 1;
    std::size_t col = 1;
};

// Diagnostic with a stable code (PARSE, VALIDATION, NONMONOTONE-FAMILY)
// and the absolute source position.
struct DslError : std::runtime_error {
    DslError(std::string code_, SrcPos pos_, const std::string& msg)
        : std::runtime_error(code_ + " at " + std::to_string(pos_.line) +
                             ":" + std::to_string(pos_.col) + ": " + msg),
          code(std::move(code_)),
          pos(pos_) {}
    std::string code;
    SrcPos pos;
};

using VarMap = std::map<std::string, std::int64_t>;

// An integer expression over named variables: integers, identifiers, and
// + - * ^ with standard precedence (^ binds tightest, right-associative).
// Evaluation is checked in 128-bit and errors out on int64 overflow.
class IntExpr {
  public:
    std::int64_t eval(const VarMap& vars) const;
    const std::string& source() const { return source_; }  // canonical form

    struct Node;
    IntExpr(std::shared_ptr<const Node> root, std::string source)
        : root_(std::move(root)), source_(std::move(source)) {}

  private:
    std::shared_ptr<const Node> root_;
    std::string source_;
};

// An intensional integer set: range(lo, hi), list(...), or
// family s>=0: range(e1(s), e2(s)) with strictly increasing endpoints
// (membership then decides by bounded search in s).
class SetExpr {
  public:
    // Parses the whole text; `origin` anchors diagnostics when the text
    // is embedded in a larger file.
    static SetExpr parse(const std::string& text, SrcPos origin = {});

    bool contains(std::int64_t x) const;
    const std::string& source() const { return source_; }  // canonical form

  private:
    SetExpr() = default;

    enum class Kind { Range, List, Family };
    Kind kind_ = Kind::Range;
    std::int64_t lo_ = 0, hi_ = 0;           // Range
    std::vector<std::int64_t> elements_;     // List (sorted)
    std::vector<IntExpr> family_;            // Family: e1(s), e2(s)
    std::string family_var_;
    std::string source_;
};

using SetEnv = std::map<std::string, SetExpr>;

// A conjunction of atoms `expr cmp expr` and `var in SETNAME`, evaluated
// against named index components; the motivating instances are the
// four-case diagonal weight rules (predicates over k and n).
class Predicate {
  public:
    static Predicate parse(const std::string& text, SrcPos origin = {});

    bool eval(const VarMap& vars, const SetEnv& sets) const;
    const std::string& source() const { return source_; }  // canonical form

    // VALIDATION when a referenced set name is missing from the
    // environment; called once at spec-build time.
    void check_sets(const SetEnv& sets, SrcPos at) const;

  private:
    enum class Op { Lt, Le, Gt, Ge, Eq, Ne, InSet };
    struct Atom {
        Op op;
        IntExpr lhs;
        IntExpr rhs;          // unused for InSet
        std::string set_name;  // InSet only
        Atom(Op o, IntExpr l, IntExpr r, std::string s)
            : op(o), lhs(std::move(l)), rhs(std::move(r)),
              set_name(std::move(s)) {}
    };
    std::vector<Atom> atoms_;
    std::string source_;
};

// A positive weight value: INT, INT/INT, or decimal literal.
double parse_weight_value(const std::string& text, SrcPos origin = {});

// Ordered first-match-wins rule list with a mandatory default.
struct WeightRule {
    Predicate when;
    double value;
    std::string value_source;  // literal as written, for round-trips
};

struct WeightRuleList {
    std::vector<WeightRule> rules;
    double fallback = 1.0;
    std::string fallback_source = "1";

    double value_at(const VarMap& vars, const SetEnv& sets) const {
        for (const WeightRule& r : rules)
            if (r.when.eval(vars, sets)) return r.value;
        return fallback;
    }
};

}  // namespace dshift
