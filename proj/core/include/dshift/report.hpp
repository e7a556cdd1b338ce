#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dshift/index_space.hpp"
#include "dshift/shift_map.hpp"

namespace dshift {

enum class Verdict { PassCertificate, Fail, Inconclusive };

std::string to_string(Verdict v);

// Comparison slack on top of log(1/k); absorbs float noise from long log
// sums where a quantity sits exactly on the threshold (several of the
// golden verdicts do).
inline constexpr double kThresholdSlack = 1e-9;

inline double log_threshold(std::size_t k) {
    return -std::log(static_cast<double>(k));
}
inline bool meets_threshold(double log_value, std::size_t k) {
    return log_value <= log_threshold(k) + kThresholdSlack;
}

// One evaluated quantity: |condition| at step k of the schedule, at the
// given window indices (one index for single-term families, two for the
// paired d-supercyclicity family).
struct GridEntry {
    std::string condition;  // e.g. "H1-forward", "H2-i"
    std::size_t k = 0;
    std::vector<Index> indices;
    int l = 0;  // operator labels; 0 when not applicable
    int s = 0;
    double log_magnitude = 0.0;
};

struct PreconditionNote {
    std::string name;
    bool satisfied_in_sample = false;
    std::string detail;
};

// Advisory least-squares fit of log_magnitude against k per condition
// family; only reported, never part of the verdict.
struct FamilyFit {
    std::string condition;
    int l = 0;
    int s = 0;
    double slope = 0.0;  // d(log value)/dk
    std::size_t points = 0;
};

struct CertificateReport {
    std::string check;  // "hyper", "super", "ows", "ows-powers"
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::size_t> schedule;
    std::vector<std::size_t> window_sizes;  // |I_k| per k
    std::vector<GridEntry> grid;
    std::optional<GridEntry> witness;  // set unless verdict is PASS
    std::vector<PreconditionNote> preconditions;
    std::vector<FamilyFit> fits;
    double max_cross_check_discrepancy = 0.0;  // ows vs generic route
    // Machine-readable caveat: a pass is a finite certificate over the
    // stated windows and schedule, not the infinite limit condition.
    std::string caveat =
        "finite certificate: quantities checked against 1/k thresholds on "
        "the stated windows only; no claim about the infinite condition";
};

// Verdict rule: PASS when the final row (k = K, the largest windows and
// tightest thresholds) meets 1/K everywhere; earlier-row violations alone
// are the oscillation the proofs' subsequence scheme absorbs by re-picking
// n_k. A final-row violation yields FAIL when its family shows no decay
// across k (witness = worst such entry), INCONCLUSIVE when every violating
// family decays but the tested K cannot settle it.
void assign_verdict(CertificateReport& report);

// Advisory decay fits, grouped by (condition, l, s).
void compute_fits(CertificateReport& report);

}  // namespace dshift
