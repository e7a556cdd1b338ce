#pragma once

#include <cstdlib>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "dshift/index_space.hpp"

namespace dshift {

// An injective self-map phi of an index set together with its partial
// inverse psi, defined exactly on phi(I). Iterates are evaluated lazily;
// a backward iterate that leaves phi(I) yields nullopt (the "undefined"
// value of the zero-weight convention, not an error).
class ShiftMap {
  public:
    using Forward = std::function<Index(Index)>;
    using Backward = std::function<std::optional<Index>(Index)>;

    ShiftMap(IndexSpace space, Forward forward, Backward backward)
        : space_(std::move(space)),
          forward_(std::move(forward)),
          backward_(std::move(backward)) {}

    // phi(i) = i + step on Z (any step != 0) or N (step >= 1); on N the
    // inverse is partial. Also serves the bi-infinite path: step m of the
    // parent map par(v) = v + 1 is translate(m).
    static ShiftMap translate(IndexSpace space, std::int64_t step) {
        const bool naturals = space.kind() == IndexKind::Naturals;
        return ShiftMap(
            space,
            [step](Index i) { return Index::scalar(i.a + step); },
            [step, naturals](Index i) -> std::optional<Index> {
                const std::int64_t back = i.a - step;
                if (naturals && back < 0) return std::nullopt;
                return Index::scalar(back);
            });
    }

    // phi(k, n) = (k, n + step) on N x Z; bijective in the second
    // coordinate, so psi is total.
    static ShiftMap grid_translate(IndexSpace space, std::int64_t step) {
        return ShiftMap(
            space,
            [step](Index i) { return Index::pair(i.a, i.b + step); },
            [step](Index i) -> std::optional<Index> {
                return Index::pair(i.a, i.b - step);
            });
    }

    // Finite-table map given by the image of each slot.
    static ShiftMap from_table(IndexSpace space,
                               std::vector<std::int64_t> image) {
        std::unordered_map<std::int64_t, std::int64_t> inverse;
        for (std::size_t m = 0; m < image.size(); ++m)
            inverse.emplace(image[m], static_cast<std::int64_t>(m));
        return ShiftMap(
            space,
            [image](Index i) {
                return Index::scalar(image.at(static_cast<std::size_t>(i.a)));
            },
            [inverse](Index i) -> std::optional<Index> {
                auto it = inverse.find(i.a);
                if (it == inverse.end()) return std::nullopt;
                return Index::scalar(it->second);
            });
    }

    const IndexSpace& space() const { return space_; }
    Index forward(Index i) const { return forward_(i); }
    std::optional<Index> backward(Index i) const { return backward_(i); }

    // phi^n for n >= 0, psi^|n| for n < 0.
    std::optional<Index> iterate(Index i, std::int64_t n) const {
        if (n >= 0) {
            for (std::int64_t v = 0; v < n; ++v) i = forward_(i);
            return i;
        }
        std::optional<Index> cur = i;
        for (std::int64_t v = 0; v < -n && cur; ++v) cur = backward_(*cur);
        return cur;
    }

  private:
    IndexSpace space_;
    Forward forward_;
    Backward backward_;
};

// ---- finite-certificate searches ----
//
// Negative results below are "not found within the stated window and
// horizon", never proofs over the infinite index set; every report carries
// its search bounds so a reader can tell what was actually checked.

struct PeriodicityReport {
    std::size_t window_size = 0;
    std::size_t max_period = 0;
    // (index, least period M) for every periodic point found in the window
    std::vector<std::pair<Index, std::size_t>> periodic;
    // pigeonhole self-check: an injective map sending the window into
    // itself must have a periodic point of period <= window size; if the
    // search still came back empty the harness itself is broken
    bool self_check_violation = false;

    bool found() const { return !periodic.empty(); }
};

struct RunAwayReport {
    bool pass = false;
    std::size_t n0 = 0;  // valid when pass
    std::size_t window_size = 0;
    std::size_t horizon = 0;
    // overlapping index and the step at which it recurs, when pass == false
    std::optional<std::pair<Index, std::size_t>> witness;
};

struct EscapeReport {
    std::size_t window_size = 0;
    std::size_t horizon = 0;
    // per window index: smallest n <= horizon with i outside phi^m(I) for
    // all m in [n, horizon], or nullopt (NOT-ESCAPED within the horizon)
    std::vector<std::pair<Index, std::optional<std::size_t>>> escape_at;

    bool all_escaped() const {
        for (const auto& [i, n] : escape_at)
            if (!n) return false;
        return true;
    }
    std::size_t max_escape_step() const {
        std::size_t m = 0;
        for (const auto& [i, n] : escape_at)
            if (n && *n > m) m = *n;
        return m;
    }
};

PeriodicityReport has_periodic_point(const ShiftMap& map,
                                     std::size_t window_size,
                                     std::size_t max_period);

// Smallest n0 <= horizon with (phi^power)^n(I0) disjoint from I0 for all
// n in [n0, horizon], I0 = window(window_size).
RunAwayReport is_run_away(const ShiftMap& map, std::size_t power,
                          std::size_t window_size, std::size_t horizon);

// Same with two iterate sequences: (phiA^powerA)^n(I0) vs
// (phiB^powerB)^n(I0).
RunAwayReport run_away_with(const ShiftMap& map_a, std::size_t power_a,
                            const ShiftMap& map_b, std::size_t power_b,
                            std::size_t window_size, std::size_t horizon);

// For each window index, the first n after which it stays outside
// phi^m(I) up to the horizon.
EscapeReport escapes_range(const ShiftMap& map, std::size_t window_size,
                           std::size_t horizon);

}  // namespace dshift
