#include "dshift/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dshift {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log of the (H1) forward quantity ||(prod b)^{-1} e_{phi^{rn}(i)}||; the
// addition order matches the s_map coefficient so the two agree bitwise.
double h1_forward_log(const ShiftTuple& t, std::size_t l, std::size_t n,
                      Index i) {
    const PseudoShift& T = t.shift(l);
    const std::size_t steps = t.power(l) * n;
    const LogScalar fp = forward_product(T, i, steps);
    const Index landing =
        *T.map().iterate(i, static_cast<std::int64_t>(steps));
    return -fp.log_mag + t.space().basis_lognorm(landing);
}

// log of the (H1) backward quantity ||(prod b) e_{psi^{rn}(i)}||.
double h1_backward_log(const ShiftTuple& t, std::size_t l, std::size_t n,
                       Index i) {
    const PseudoShift& T = t.shift(l);
    const auto [product, landing] = backward_product(T, i, t.power(l) * n);
    return product.log_mag + t.space().basis_lognorm(landing);
}

struct H2Value {
    double log = kNegInf;
    std::optional<Index> landing;
};

// log || T_{apply_l}^{r n} S_{via_s, n} e_i || with the general landing
// psi_{apply_l}^{...}(phi_{via_s}^{...}(i)); addition order matches the
// power_apply-of-s_map coefficient bitwise.
H2Value h2_value(const ShiftTuple& t, std::size_t apply_l, std::size_t via_s,
                 std::size_t n, Index i) {
    const PseudoShift& Tl = t.shift(apply_l);
    const PseudoShift& Ts = t.shift(via_s);
    const std::size_t fsteps = t.power(via_s) * n;
    const std::size_t bsteps = t.power(apply_l) * n;
    const LogScalar fp = forward_product(Ts, i, fsteps);
    const Index start =
        *Ts.map().iterate(i, static_cast<std::int64_t>(fsteps));
    const auto [product, landing] = backward_product(Tl, start, bsteps);
    return {(-fp.log_mag + product.log_mag) +
                t.space().basis_lognorm(landing),
            landing};
}

std::string index_str(const ShiftTuple& t, Index i) {
    return t.space().index_space().to_string(i);
}

// Corollary 3.2 assertion: with one shared map the general (H2) landings
// collapse to psi^{(r_l-r_s)n}(i) (condition (i)) and phi^{(r_l-r_s)n}(i)
// (condition (ii)).
void assert_same_map_landing(const ShiftTuple& t, std::size_t l,
                             std::size_t s, std::size_t n, Index i,
                             const std::optional<Index>& general,
                             bool condition_i, std::size_t k) {
    const std::int64_t diff =
        static_cast<std::int64_t>((t.power(l) - t.power(s)) * n);
    const std::optional<Index> simplified =
        t.shift(l).map().iterate(i, condition_i ? -diff : diff);
    if (simplified == general) return;
    throw CheckError(
        "MODE-HYPOTHESIS-FAILED",
        std::string("same-map landing mismatch for (H2)") +
            (condition_i ? "(i)" : "(ii)") + " at i=" + index_str(t, i) +
            ", l=" + std::to_string(l + 1) + ", s=" + std::to_string(s + 1) +
            ", k=" + std::to_string(k));
}

// The full grid slice at one schedule step; shared by the checkers and the
// schedule search so both see byte-identical quantities.
void append_grid(std::vector<GridEntry>& out, const ShiftTuple& t,
                 CheckKind kind, DscMode mode, std::size_t k, std::size_t n,
                 const std::vector<Index>& window) {
    const std::size_t N = t.size();
    if (kind == CheckKind::Hyper) {
        for (std::size_t l = 0; l < N; ++l)
            for (const Index i : window) {
                out.push_back({"(H1)-forward", k, {i},
                               static_cast<int>(l + 1), 0,
                               h1_forward_log(t, l, n, i)});
                out.push_back({"(H1)-backward", k, {i},
                               static_cast<int>(l + 1), 0,
                               h1_backward_log(t, l, n, i)});
            }
    } else if (mode != DscMode::Escaping) {
        for (std::size_t l = 0; l < N; ++l)
            for (std::size_t s = 0; s < N; ++s)
                for (const Index i : window)
                    for (const Index j : window)
                        out.push_back({"(H1)", k, {i, j},
                                       static_cast<int>(l + 1),
                                       static_cast<int>(s + 1),
                                       h1_forward_log(t, l, n, i) +
                                           h1_backward_log(t, s, n, j)});
    }
    for (std::size_t l = 1; l < N; ++l)
        for (std::size_t s = 0; s < l; ++s)
            for (const Index i : window) {
                if (!(kind == CheckKind::Super && mode == DscMode::Escaping)) {
                    const H2Value vi = h2_value(t, l, s, n, i);
                    if (kind == CheckKind::Super && mode == DscMode::SameMap)
                        assert_same_map_landing(t, l, s, n, i, vi.landing,
                                                true, k);
                    out.push_back({"(H2)-i", k, {i}, static_cast<int>(l + 1),
                                   static_cast<int>(s + 1), vi.log});
                }
                const H2Value vii = h2_value(t, s, l, n, i);
                if (kind == CheckKind::Super && mode == DscMode::SameMap)
                    assert_same_map_landing(t, l, s, n, i, vii.landing,
                                            false, k);
                out.push_back({"(H2)-ii", k, {i}, static_cast<int>(l + 1),
                               static_cast<int>(s + 1), vii.log});
            }
}

std::size_t scan_window_size(const std::vector<Index>& last_window) {
    return std::max<std::size_t>(last_window.size(), 8);
}

CertificateReport run_check(const ShiftTuple& t, const Schedule& schedule,
                            const WindowGrowth& windows, CheckKind kind,
                            DscMode mode, std::size_t horizon) {
    schedule.validate();
    CertificateReport report;
    report.check = kind == CheckKind::Hyper ? "hyper" : "super";
    report.schedule = schedule.steps;

    const std::size_t K = schedule.steps.size();
    const std::vector<Index> last_window = windows(K);
    const std::size_t wsize = scan_window_size(last_window);
    const std::size_t N = t.size();

    if (kind == CheckKind::Hyper || mode == DscMode::SameMap)
        for (std::size_t l = 0; l < N; ++l) {
            const PeriodicityReport pr =
                has_periodic_point(t.shift(l).map(), wsize, wsize);
            report.preconditions.push_back(
                {"periodic-points l=" + std::to_string(l + 1),
                 !pr.found() && !pr.self_check_violation,
                 pr.found()
                     ? "periodic point " + index_str(t, pr.periodic[0].first) +
                           " of period " +
                           std::to_string(pr.periodic[0].second)
                     : "none found on window " + std::to_string(wsize) +
                           ", periods <= " + std::to_string(wsize)});
            if (kind == CheckKind::Super) break;  // one shared map
        }
    if (kind == CheckKind::Super)
        for (std::size_t l = 0; l < N; ++l) {
            const RunAwayReport rr = is_run_away(t.shift(l).map(), t.power(l),
                                                 wsize, horizon);
            report.preconditions.push_back(
                {"run-away l=" + std::to_string(l + 1), rr.pass,
                 rr.pass ? "n0=" + std::to_string(rr.n0)
                         : "recurrence within horizon " +
                               std::to_string(horizon)});
        }
    for (std::size_t l = 1; l < N; ++l)
        for (std::size_t s = 0; s < l; ++s) {
            const RunAwayReport rr =
                run_away_with(t.shift(s).map(), t.power(s), t.shift(l).map(),
                              t.power(l), wsize, horizon);
            report.preconditions.push_back(
                {"run-away-with s=" + std::to_string(s + 1) +
                     ",l=" + std::to_string(l + 1),
                 rr.pass,
                 rr.pass ? "n0=" + std::to_string(rr.n0)
                         : "overlap within horizon " +
                               std::to_string(horizon)});
        }
    if (kind == CheckKind::Super && mode == DscMode::Escaping) {
        const std::size_t esc_horizon = std::max(
            horizon, t.power(N - 1) * schedule.steps.back());
        for (std::size_t l = 0; l < N; ++l) {
            const EscapeReport er = escapes_range(
                t.shift(l).map(), last_window.size(), esc_horizon);
            if (!er.all_escaped()) {
                std::string stuck;
                for (const auto& [i, at] : er.escape_at)
                    if (!at) {
                        stuck = index_str(t, i);
                        break;
                    }
                throw CheckError("MODE-HYPOTHESIS-FAILED",
                                 "index " + stuck +
                                     " not certified escaping for phi_" +
                                     std::to_string(l + 1) + " at horizon " +
                                     std::to_string(esc_horizon));
            }
            report.preconditions.push_back(
                {"escape l=" + std::to_string(l + 1), true,
                 "all window indices escape by step " +
                     std::to_string(er.max_escape_step())});
        }
    }

    for (std::size_t k = 1; k <= K; ++k) {
        const std::vector<Index> window = windows(k);
        report.window_sizes.push_back(window.size());
        append_grid(report.grid, t, kind, mode, k, schedule.steps[k - 1],
                    window);
    }
    assign_verdict(report);
    compute_fits(report);
    return report;
}

}  // namespace

ShiftTuple::ShiftTuple(std::vector<PseudoShift> shifts,
                       std::vector<std::size_t> powers)
    : shifts_(std::move(shifts)), powers_(std::move(powers)) {
    if (shifts_.size() < 2)
        throw CheckError("PARAM-RANGE", "a tuple needs at least two shifts");
    if (powers_.size() != shifts_.size())
        throw CheckError("PARAM-RANGE", "one power per shift required");
    if (powers_.front() < 1)
        throw CheckError("PARAM-RANGE", "powers must be >= 1");
    for (std::size_t l = 1; l < powers_.size(); ++l)
        if (powers_[l] <= powers_[l - 1])
            throw CheckError("PARAM-RANGE",
                             "powers must be strictly increasing");
    const SpaceModel& first = shifts_.front().space();
    for (const PseudoShift& T : shifts_)
        if (!(T.space().index_space() == first.index_space()) ||
            T.space().kind() != first.kind() || T.space().p() != first.p())
            throw CheckError("SPACE-MISMATCH",
                             "all shifts must share one space model");
}

void Schedule::validate() const {
    if (steps.empty() || steps.front() < 1)
        throw CheckError("SCHEDULE-NOT-INCREASING",
                         "schedule must start with n_1 >= 1");
    for (std::size_t k = 1; k < steps.size(); ++k)
        if (steps[k] <= steps[k - 1])
            throw CheckError("SCHEDULE-NOT-INCREASING",
                             "n_" + std::to_string(k + 1) +
                                 " does not exceed n_" + std::to_string(k));
}

WindowGrowth linear_windows(IndexSpace space) {
    return [space](std::size_t k) { return space.window(k); };
}

WindowGrowth fixed_window(std::vector<Index> window) {
    return [window](std::size_t) { return window; };
}

CertificateReport check_dhc(const ShiftTuple& problem,
                            const Schedule& schedule,
                            const WindowGrowth& windows,
                            std::size_t precondition_horizon) {
    return run_check(problem, schedule, windows, CheckKind::Hyper,
                     DscMode::General, precondition_horizon);
}

CertificateReport check_dsc(const ShiftTuple& problem,
                            const Schedule& schedule,
                            const WindowGrowth& windows, DscMode mode,
                            std::size_t precondition_horizon) {
    return run_check(problem, schedule, windows, CheckKind::Super, mode,
                     precondition_horizon);
}

ScheduleSearchResult search_schedule(const ShiftTuple& problem,
                                     CheckKind kind, std::size_t K,
                                     std::size_t n_max,
                                     const WindowGrowth& windows) {
    if (K < 1 || n_max < K)
        throw CheckError("PARAM-RANGE", "need K >= 1 and n_max >= K");
    std::vector<std::size_t> steps;
    std::vector<GridEntry> scratch;
    for (std::size_t k = 1; k <= K; ++k) {
        const std::vector<Index> window = windows(k);
        const std::size_t prev = steps.empty() ? 0 : steps.back();
        double best_margin = std::numeric_limits<double>::infinity();
        bool found = false;
        for (std::size_t n = prev + 1; n <= n_max && !found; ++n) {
            scratch.clear();
            append_grid(scratch, problem, kind, DscMode::General, k, n,
                        window);
            // worst value seen up to (and including) the first violation;
            // a lower bound on the slice maximum, enough for the margin
            double max_log = kNegInf;
            bool ok = true;
            for (const GridEntry& e : scratch) {
                max_log = std::max(max_log, e.log_magnitude);
                if (!meets_threshold(e.log_magnitude, k)) {
                    ok = false;
                    break;
                }
            }
            best_margin = std::min(
                best_margin,
                std::exp(max_log + std::log(static_cast<double>(k))));
            if (ok) {
                steps.push_back(n);
                found = true;
            }
        }
        if (!found) return {std::nullopt, k, best_margin};
    }
    Schedule schedule{std::move(steps), Schedule::Provenance::Searched};
    return {schedule, 0, 0.0};
}

CriterionReport verify_criterion_pointwise(
    const ShiftTuple& problem, const Schedule& schedule,
    const std::vector<Index>& basis_window, CheckKind kind) {
    schedule.validate();
    CriterionReport report;
    report.kind = kind;
    const SpaceModel& space = problem.space();
    const std::size_t N = problem.size();
    for (std::size_t k = 1; k <= schedule.steps.size(); ++k) {
        const std::size_t n = schedule.steps[k - 1];
        for (std::size_t l = 0; l < N; ++l)
            for (const Index i : basis_window) {
                const FinVector ei = FinVector::basis(space.index_space(), i);
                const double t_log = space.vector_lognorm(power_apply(
                    problem.shift(l), ei, problem.power(l) * n));
                report.entries.push_back({"T-power", k, i,
                                          static_cast<int>(l + 1), 0, t_log,
                                          meets_threshold(t_log, k)});
                const double s_log = space.vector_lognorm(
                    s_map(problem.shift(l), problem.power(l), n, i));
                report.entries.push_back({"S-map", k, i,
                                          static_cast<int>(l + 1), 0, s_log,
                                          meets_threshold(s_log, k)});
                for (std::size_t s = 0; s < N; ++s) {
                    FinVector image = power_apply(
                        problem.shift(l),
                        s_map(problem.shift(s), problem.power(s), n, i),
                        problem.power(l) * n);
                    if (s == l) {
                        image = image - ei;
                        report.diagonal_exact &= image.is_zero();
                    }
                    const double r_log = space.vector_lognorm(image);
                    report.entries.push_back({"residual", k, i,
                                              static_cast<int>(l + 1),
                                              static_cast<int>(s + 1), r_log,
                                              meets_threshold(r_log, k)});
                }
                if (kind == CheckKind::Super) {
                    FinVector s_sum(space.index_space());
                    for (std::size_t s = 0; s < N; ++s)
                        s_sum = s_sum + s_map(problem.shift(s),
                                              problem.power(s), n, i);
                    const double p_log =
                        t_log + space.vector_lognorm(s_sum);
                    report.entries.push_back({"super-product", k, i,
                                              static_cast<int>(l + 1), 0,
                                              p_log,
                                              meets_threshold(p_log, k)});
                }
            }
    }
    return report;
}

std::pair<FinVector, std::vector<double>> synthesize_vector(
    const ShiftTuple& problem, std::size_t n,
    const std::vector<FinVector>& targets, const FinVector& base) {
    if (n < 1) throw CheckError("PARAM-RANGE", "need n >= 1");
    if (targets.size() != problem.size())
        throw CheckError("PARAM-RANGE", "one target per shift required");
    FinVector x = base;
    for (std::size_t l = 0; l < problem.size(); ++l)
        x = x + s_map_linear(problem.shift(l), problem.power(l), n,
                             targets[l]);
    std::vector<double> residuals;
    residuals.reserve(problem.size());
    for (std::size_t l = 0; l < problem.size(); ++l)
        residuals.push_back(problem.space().vector_norm(
            power_apply(problem.shift(l), x, problem.power(l) * n) -
            targets[l]));
    return {x, residuals};
}

}  // namespace dshift
