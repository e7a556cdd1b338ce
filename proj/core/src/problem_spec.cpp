#include "dshift/problem_spec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dshift {
namespace {

std::string trim(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// head word of `rest`, advancing past it; pos tracks the column of the
// returned word for diagnostics
std::string take_word(std::string& rest, SrcPos& pos) {
    std::size_t b = 0;
    while (b < rest.size() && std::isspace(static_cast<unsigned char>(rest[b])))
        ++b;
    std::size_t e = b;
    while (e < rest.size() && !std::isspace(static_cast<unsigned char>(rest[e])))
        ++e;
    const std::string word = rest.substr(b, e - b);
    pos.col += b;
    rest = rest.substr(e);
    return word;
}

std::int64_t parse_int(const std::string& word, SrcPos at) {
    try {
        std::size_t used = 0;
        const std::int64_t v = std::stoll(word, &used);
        if (used != word.size()) throw std::invalid_argument(word);
        return v;
    } catch (const std::exception&) {
        throw DslError("PARSE", at, "expected integer, got '" + word + "'");
    }
}

std::size_t parse_count(const std::string& word, SrcPos at) {
    const std::int64_t v = parse_int(word, at);
    if (v < 0) throw DslError("VALIDATION", at, "expected count >= 0");
    return static_cast<std::size_t>(v);
}

std::string format_number(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// identity of a shift block up to its power, for the duplicate check
std::string shift_body_key(const ShiftSpec& s) {
    std::string key = "translate " + std::to_string(s.step);
    for (const WeightRule& r : s.weights.rules)
        key += "|" + r.when.source() + ":" + r.value_source;
    return key + "|default:" + s.weights.fallback_source;
}

void emit_rules(std::ostringstream& out, const WeightRuleList& w) {
    for (const WeightRule& r : w.rules)
        out << "  rule " << r.when.source() << " : " << r.value_source << "\n";
    out << "  default " << w.fallback_source << "\n";
}

WindowGrowth capped_linear(IndexSpace space, std::size_t cap) {
    return [space, cap](std::size_t k) {
        return space.window(cap == 0 ? k : std::min(k, cap));
    };
}

}  // namespace

SetEnv ProblemSpec::set_env() const {
    SetEnv env;
    for (const auto& [name, set] : sets) env.emplace(name, set);
    return env;
}

ProblemSpec parse_spec(const std::string& text) {
    ProblemSpec spec;
    spec.window = 4;

    enum class Block { None, Shift, Ows };
    Block block = Block::None;
    bool block_has_default = false;
    bool saw_version = false, saw_check = false, saw_schedule = false;

    WeightRuleList* rules = nullptr;  // rule sink of the open block

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        std::string rest = line;
        SrcPos pos{line_no, raw.find_first_not_of(" \t") + 1};
        const std::string head = take_word(rest, pos);
        SrcPos at = pos;  // column of the head word

        if (block != Block::None) {
            if (head == "end") {
                if (!block_has_default)
                    throw DslError("VALIDATION", at,
                                   "block needs a default rule");
                block = Block::None;
                rules = nullptr;
                continue;
            }
            if (head == "rule") {
                const std::size_t colon = rest.find(':');
                if (colon == std::string::npos)
                    throw DslError("PARSE", at, "rule needs ': value'");
                SrcPos pred_at{line_no, pos.col + head.size() + 1};
                Predicate when =
                    Predicate::parse(rest.substr(0, colon), pred_at);
                const std::string value_text = trim(rest.substr(colon + 1));
                const double value = parse_weight_value(value_text, at);
                rules->rules.push_back({std::move(when), value, value_text});
                continue;
            }
            if (head == "default") {
                rules->fallback_source = trim(rest);
                rules->fallback = parse_weight_value(rules->fallback_source, at);
                block_has_default = true;
                continue;
            }
            if (block == Block::Shift) {
                ShiftSpec& s = spec.shifts.back();
                if (head == "map") {
                    SrcPos p2 = pos;
                    const std::string kind = take_word(rest, p2);
                    if (kind != "translate")
                        throw DslError("PARSE", p2,
                                       "unknown map kind '" + kind + "'");
                    SrcPos p3 = p2;
                    s.step = parse_int(take_word(rest, p3), p3);
                    continue;
                }
                if (head == "power") {
                    SrcPos p2 = pos;
                    s.power = parse_count(take_word(rest, p2), p2);
                    continue;
                }
            } else {
                OwsSpec& o = spec.ows.back();
                if (head == "direction") {
                    const std::string d = trim(rest);
                    if (d == "forward")
                        o.direction = OwsDirection::Forward;
                    else if (d == "backward")
                        o.direction = OwsDirection::Backward;
                    else
                        throw DslError("PARSE", at,
                                       "direction must be forward or backward");
                    continue;
                }
                if (head == "power") {
                    SrcPos p2 = pos;
                    o.power = parse_count(take_word(rest, p2), p2);
                    continue;
                }
                if (head == "bound") {
                    o.bound_source = trim(rest);
                    o.bound = parse_weight_value(o.bound_source, at);
                    continue;
                }
            }
            throw DslError("PARSE", at,
                           "unknown block directive '" + head + "'");
        }

        if (head == "version") {
            SrcPos p2 = pos;
            spec.version = static_cast<int>(parse_int(take_word(rest, p2), p2));
            if (spec.version != 1)
                throw DslError("VALIDATION", p2, "unsupported version");
            saw_version = true;
        } else if (head == "set") {
            SrcPos p2 = pos;
            const std::string name = take_word(rest, p2);
            if (name.empty())
                throw DslError("PARSE", p2, "set needs a name");
            for (const auto& [n, _] : spec.sets)
                if (n == name)
                    throw DslError("VALIDATION", p2,
                                   "duplicate set '" + name + "'");
            SrcPos expr_at{line_no, p2.col + name.size() + 1};
            spec.sets.emplace_back(name, SetExpr::parse(rest, expr_at));
        } else if (head == "space") {
            SrcPos p2 = pos;
            spec.space_kind = take_word(rest, p2);
            if (spec.space_kind != "naturals" && spec.space_kind != "integers" &&
                spec.space_kind != "grid")
                throw DslError("VALIDATION", p2,
                               "space must be naturals, integers or grid");
            if (!trim(rest).empty()) {
                SrcPos p3 = p2;
                if (take_word(rest, p3) != "p")
                    throw DslError("PARSE", p3, "expected 'p <exponent>'");
                spec.p = parse_weight_value(trim(rest), p3);
                if (spec.p < 1.0)
                    throw DslError("VALIDATION", p3, "need p >= 1");
            }
        } else if (head == "shift") {
            ShiftSpec s;
            const std::string flag = trim(rest);
            if (flag == "reuse")
                s.reuse = true;
            else if (!flag.empty())
                throw DslError("PARSE", at, "unexpected '" + flag + "'");
            block_has_default = s.reuse;  // reuse blocks carry no rules
            spec.shifts.push_back(std::move(s));
            rules = &spec.shifts.back().weights;
            block = Block::Shift;
        } else if (head == "ows") {
            spec.ows.emplace_back();
            rules = &spec.ows.back().weights;
            block = Block::Ows;
            block_has_default = false;
        } else if (head == "check") {
            spec.check = trim(rest);
            if (spec.check != "hyper" && spec.check != "super" &&
                spec.check != "ows" && spec.check != "ows-powers" &&
                spec.check != "criterion")
                throw DslError("VALIDATION", at,
                               "unknown check '" + spec.check + "'");
            saw_check = true;
        } else if (head == "mode") {
            spec.mode = trim(rest);
            if (spec.mode != "general" && spec.mode != "same-map" &&
                spec.mode != "escaping")
                throw DslError("VALIDATION", at,
                               "unknown mode '" + spec.mode + "'");
        } else if (head == "tuple") {
            SrcPos p2 = pos;
            spec.tuple = parse_count(take_word(rest, p2), p2);
        } else if (head == "schedule") {
            SrcPos p2 = pos;
            std::string body = trim(rest);
            if (body.rfind("search", 0) == 0) {
                std::string args = body.substr(6);
                SrcPos p3 = p2;
                spec.search_k = parse_count(take_word(args, p3), p3);
                SrcPos p4 = p3;
                spec.search_n_max = parse_count(take_word(args, p4), p4);
            } else if (body.rfind("list(", 0) == 0 && body.back() == ')') {
                std::string inner = body.substr(5, body.size() - 6);
                std::istringstream items(inner);
                std::string item;
                while (std::getline(items, item, ','))
                    spec.schedule.push_back(parse_count(trim(item), p2));
                if (spec.schedule.empty())
                    throw DslError("PARSE", p2, "empty schedule list");
            } else {
                throw DslError("PARSE", p2,
                               "schedule needs list(...) or search K n_max");
            }
            saw_schedule = true;
        } else if (head == "window") {
            SrcPos p2 = pos;
            spec.window = parse_count(take_word(rest, p2), p2);
        } else if (head == "horizon") {
            SrcPos p2 = pos;
            spec.horizon = parse_count(take_word(rest, p2), p2);
        } else {
            throw DslError("PARSE", at, "unknown directive '" + head + "'");
        }
    }

    const SrcPos end{line_no + 1, 1};
    if (block != Block::None)
        throw DslError("PARSE", end, "unterminated block (missing 'end')");
    if (!saw_version) throw DslError("VALIDATION", end, "missing version line");
    if (!saw_check) throw DslError("VALIDATION", end, "missing check line");
    if (!saw_schedule && spec.check != "criterion")
        throw DslError("VALIDATION", end, "missing schedule line");
    if (spec.schedule.empty() && saw_schedule &&
        (spec.search_k == 0 || spec.search_n_max < spec.search_k))
        throw DslError("VALIDATION", end, "need search K >= 1 and n_max >= K");

    const SetEnv env = spec.set_env();
    const auto check_rule_sets = [&](const WeightRuleList& w) {
        for (const WeightRule& r : w.rules) r.when.check_sets(env, end);
    };

    // resolve reuse, reject silent duplicates
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < spec.shifts.size(); ++i) {
        ShiftSpec& s = spec.shifts[i];
        if (s.reuse) {
            if (i == 0)
                throw DslError("VALIDATION", end,
                               "first shift cannot be 'reuse'");
            s.step = spec.shifts[i - 1].step;
            s.weights = spec.shifts[i - 1].weights;
        }
        check_rule_sets(s.weights);
        const std::string key = shift_body_key(s);
        if (!s.reuse &&
            std::find(keys.begin(), keys.end(), key) != keys.end())
            throw DslError("VALIDATION", end,
                           "duplicated shift body; pair distinct powers with "
                           "distinct shift entries or mark the block 'reuse'");
        keys.push_back(key);
    }
    for (const OwsSpec& o : spec.ows) check_rule_sets(o.weights);

    const bool scalar_check = spec.check == "hyper" || spec.check == "super" ||
                              spec.check == "criterion";
    if (scalar_check) {
        if (spec.shifts.size() < 2)
            throw DslError("VALIDATION", end,
                           "check '" + spec.check + "' needs >= 2 shifts");
        if (spec.space_kind == "grid")
            throw DslError("VALIDATION", end,
                           "shift blocks need a scalar space kind");
        for (std::size_t i = 1; i < spec.shifts.size(); ++i)
            if (spec.shifts[i].power <= spec.shifts[i - 1].power)
                throw DslError("VALIDATION", end,
                               "shift powers must be strictly increasing");
    } else {
        if (spec.ows.empty())
            throw DslError("VALIDATION", end,
                           "check '" + spec.check + "' needs an ows block");
        if (spec.space_kind != "grid")
            throw DslError("VALIDATION", end, "ows checks need space grid");
        if (spec.check == "ows-powers" && spec.tuple < 2)
            throw DslError("VALIDATION", end, "ows-powers needs tuple >= 2");
        if (spec.check == "ows") {
            if (spec.ows.size() < 2)
                throw DslError("VALIDATION", end,
                               "check 'ows' needs >= 2 ows blocks");
            for (std::size_t i = 1; i < spec.ows.size(); ++i)
                if (spec.ows[i].power <= spec.ows[i - 1].power)
                    throw DslError("VALIDATION", end,
                                   "ows powers must be strictly increasing");
        }
    }
    return spec;
}

std::string serialize_spec(const ProblemSpec& spec) {
    std::ostringstream out;
    out << "version " << spec.version << "\n\n";
    for (const auto& [name, set] : spec.sets)
        out << "set " << name << " " << set.source() << "\n";
    if (!spec.sets.empty()) out << "\n";
    out << "space " << spec.space_kind;
    if (spec.space_kind != "grid") out << " p " << format_number(spec.p);
    out << "\n\n";
    for (const ShiftSpec& s : spec.shifts) {
        out << (s.reuse ? "shift reuse\n" : "shift\n");
        if (!s.reuse) out << "  map translate " << s.step << "\n";
        out << "  power " << s.power << "\n";
        if (!s.reuse) emit_rules(out, s.weights);
        out << "end\n\n";
    }
    for (const OwsSpec& o : spec.ows) {
        out << "ows\n  direction "
            << (o.direction == OwsDirection::Forward ? "forward" : "backward")
            << "\n  power " << o.power << "\n  bound " << o.bound_source
            << "\n";
        emit_rules(out, o.weights);
        out << "end\n\n";
    }
    out << "check " << spec.check << "\n";
    out << "mode " << spec.mode << "\n";
    if (spec.check == "ows-powers") out << "tuple " << spec.tuple << "\n";
    if (!spec.schedule.empty()) {
        out << "schedule list(";
        for (std::size_t i = 0; i < spec.schedule.size(); ++i)
            out << (i ? ", " : "") << spec.schedule[i];
        out << ")\n";
    } else {
        out << "schedule search " << spec.search_k << " " << spec.search_n_max
            << "\n";
    }
    out << "window " << spec.window << "\n";
    out << "horizon " << spec.horizon << "\n";
    return out.str();
}

ShiftTuple build_tuple(const ProblemSpec& spec) {
    const IndexSpace ispace = spec.space_kind == "naturals"
                                  ? IndexSpace::naturals()
                                  : IndexSpace::integers();
    const SpaceModel space =
        SpaceModel::weighted_lp(ispace, spec.p, [](Index) { return 0.0; });
    const SetEnv env = spec.set_env();
    std::vector<PseudoShift> shifts;
    std::vector<std::size_t> powers;
    for (const ShiftSpec& s : spec.shifts) {
        shifts.emplace_back(space, ShiftMap::translate(ispace, s.step),
                            [w = s.weights, env](Index i) {
                                return LogScalar::from_real(
                                    w.value_at({{"i", i.a}}, env));
                            });
        powers.push_back(s.power);
    }
    return ShiftTuple(std::move(shifts), std::move(powers));
}

OwsOperator build_ows(const ProblemSpec& spec, std::size_t index) {
    const OwsSpec& o = spec.ows.at(index);
    const SetEnv env = spec.set_env();
    return {DiagonalWeightFamily::from_values(
                [w = o.weights, env](std::int64_t k, std::int64_t n) {
                    return w.value_at({{"k", k}, {"n", n}}, env);
                },
                o.bound),
            o.direction};
}

CertificateReport run_spec(const ProblemSpec& spec) {
    if (spec.check == "criterion")
        throw CheckError("PARAM-RANGE",
                         "check 'criterion' yields a pointwise report, not a "
                         "certificate");

    const bool scalar_check = spec.check == "hyper" || spec.check == "super";
    const IndexSpace window_space =
        scalar_check ? (spec.space_kind == "naturals" ? IndexSpace::naturals()
                                                      : IndexSpace::integers())
                     : IndexSpace::grid();
    const WindowGrowth windows = capped_linear(window_space, spec.window);

    // tuple view used by both the generic checks and the schedule search
    std::vector<PseudoShift> shifts;
    std::vector<std::size_t> powers;
    if (scalar_check) {
        const ShiftTuple t = build_tuple(spec);
        for (std::size_t l = 0; l < t.size(); ++l) {
            shifts.push_back(t.shift(l));
            powers.push_back(t.power(l));
        }
    } else if (spec.check == "ows") {
        for (std::size_t i = 0; i < spec.ows.size(); ++i) {
            shifts.push_back(ows_to_pseudoshift(build_ows(spec, i)));
            powers.push_back(spec.ows[i].power);
        }
    } else {
        const PseudoShift shift = ows_to_pseudoshift(build_ows(spec));
        for (std::size_t r = 1; r <= spec.tuple; ++r) {
            shifts.push_back(shift);
            powers.push_back(r);
        }
    }
    const ShiftTuple tuple(shifts, powers);

    Schedule schedule = Schedule::user({1});
    if (!spec.schedule.empty()) {
        schedule = Schedule::user(spec.schedule);
    } else {
        const CheckKind kind =
            spec.check == "hyper" ? CheckKind::Hyper : CheckKind::Super;
        const ScheduleSearchResult found = search_schedule(
            tuple, kind, spec.search_k, spec.search_n_max, windows);
        if (!found.schedule)
            throw CheckError(
                "SCHEDULE-NOT-FOUND",
                "search exhausted n_max = " +
                    std::to_string(spec.search_n_max) + " at k = " +
                    std::to_string(found.blocking_k) + " (margin " +
                    std::to_string(found.margin) + ")");
        schedule = *found.schedule;
    }

    const DscMode mode = spec.mode == "same-map"  ? DscMode::SameMap
                         : spec.mode == "escaping" ? DscMode::Escaping
                                                   : DscMode::General;
    if (spec.check == "hyper")
        return check_dhc(tuple, schedule, windows, spec.horizon);
    if (spec.check == "super")
        return check_dsc(tuple, schedule, windows, mode, spec.horizon);
    if (spec.check == "ows") {
        std::vector<OwsOperator> ops;
        for (std::size_t i = 0; i < spec.ows.size(); ++i)
            ops.push_back(build_ows(spec, i));
        return check_ows_dsc(ops, powers, schedule, windows);
    }
    return check_ows_powers_dsc(build_ows(spec), spec.tuple, schedule,
                                spec.window);
}

}  // namespace dshift
