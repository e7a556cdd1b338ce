#include "dshift/shift_map.hpp"

#include <algorithm>
#include <set>

namespace dshift {

PeriodicityReport has_periodic_point(const ShiftMap& map,
                                     std::size_t window_size,
                                     std::size_t max_period) {
    PeriodicityReport report;
    report.window_size = window_size;
    report.max_period = max_period;
    const auto window = map.space().window(window_size);
    for (Index i : window) {
        Index cur = i;
        for (std::size_t m = 1; m <= max_period; ++m) {
            cur = map.forward(cur);
            if (cur == i) {
                report.periodic.emplace_back(i, m);
                break;
            }
        }
    }
    if (report.periodic.empty() && max_period >= window_size) {
        std::set<Index> in_window(window.begin(), window.end());
        bool maps_into_itself = !window.empty();
        for (Index i : window)
            if (!in_window.count(map.forward(i))) {
                maps_into_itself = false;
                break;
            }
        report.self_check_violation = maps_into_itself;
    }
    return report;
}

namespace {

std::set<Index> iterate_image(const ShiftMap& map, const std::vector<Index>& base,
                              std::size_t steps) {
    std::set<Index> image;
    for (Index i : base) image.insert(*map.iterate(i, static_cast<std::int64_t>(steps)));
    return image;
}

RunAwayReport run_away_scan(const ShiftMap& map_a, std::size_t power_a,
                            const ShiftMap& map_b, std::size_t power_b,
                            bool against_self, std::size_t window_size,
                            std::size_t horizon) {
    RunAwayReport report;
    report.window_size = window_size;
    report.horizon = horizon;
    const auto window = map_a.space().window(window_size);
    const std::set<Index> base(window.begin(), window.end());

    std::optional<std::size_t> candidate_n0;
    for (std::size_t n = 1; n <= horizon; ++n) {
        const auto image_a = iterate_image(map_a, window, power_a * n);
        std::optional<Index> overlap;
        if (against_self) {
            for (Index i : image_a)
                if (base.count(i)) {
                    overlap = i;
                    break;
                }
        } else {
            const auto image_b = iterate_image(map_b, window, power_b * n);
            for (Index i : image_a)
                if (image_b.count(i)) {
                    overlap = i;
                    break;
                }
        }
        if (overlap) {
            report.witness = {*overlap, n};
            candidate_n0.reset();
        } else if (!candidate_n0) {
            candidate_n0 = n;
        }
    }
    if (candidate_n0) {
        report.pass = true;
        report.n0 = *candidate_n0;
        report.witness.reset();
    }
    return report;
}

}  // namespace

RunAwayReport is_run_away(const ShiftMap& map, std::size_t power,
                          std::size_t window_size, std::size_t horizon) {
    return run_away_scan(map, power, map, power, /*against_self=*/true,
                         window_size, horizon);
}

RunAwayReport run_away_with(const ShiftMap& map_a, std::size_t power_a,
                            const ShiftMap& map_b, std::size_t power_b,
                            std::size_t window_size, std::size_t horizon) {
    return run_away_scan(map_a, power_a, map_b, power_b,
                         /*against_self=*/false, window_size, horizon);
}

EscapeReport escapes_range(const ShiftMap& map, std::size_t window_size,
                           std::size_t horizon) {
    EscapeReport report;
    report.window_size = window_size;
    report.horizon = horizon;
    for (Index i : map.space().window(window_size)) {
        // i lies in phi^n(I) iff psi^n(i) is defined
        std::optional<std::size_t> escape;
        std::optional<Index> back = i;
        for (std::size_t n = 1; n <= horizon; ++n) {
            back = back ? map.backward(*back) : std::nullopt;
            if (back) {
                escape.reset();
            } else if (!escape) {
                escape = n;
            }
        }
        report.escape_at.emplace_back(i, escape);
    }
    return report;
}

}  // namespace dshift
