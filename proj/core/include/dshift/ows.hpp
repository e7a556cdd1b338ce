#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "dshift/criteria.hpp"
#include "dshift/pseudo_shift.hpp"
#include "dshift/report.hpp"

namespace dshift {

// A uniformly bounded family {A_n} of positive invertible diagonal
// operators on K, given by the diagonal entries a_{k,n} = <A_n f_k, f_k>
// in log form (so inverses are plain negations).
struct DiagonalWeightFamily {
    using LogEntryFn = std::function<double(std::int64_t k, std::int64_t n)>;

    LogEntryFn log_entry;
    double bound = 1.0;  // declared uniform bound M; reported only

    static DiagonalWeightFamily from_values(
        std::function<double(std::int64_t, std::int64_t)> value,
        double bound = 1.0) {
        return {[value = std::move(value)](std::int64_t k, std::int64_t n) {
                    return std::log(value(k, n));
                },
                bound};
    }
};

enum class OwsDirection { Forward, Backward };

// A bilateral operator-weighted shift on l^2(Z, K); forward sends slot j
// to j+1 through A_j, backward sends j to j-1 through A_j.
struct OwsOperator {
    DiagonalWeightFamily weights;
    OwsDirection direction = OwsDirection::Forward;
};

// log prod_{v=lo}^{hi} a_{k,v}, accumulated in ascending v (the order all
// OWS-side quantities and their fixtures use); 0 for an empty range.
// With inverse, the negated sum (diagonal inverse entries).
double ows_product_log(const OwsOperator& T, std::int64_t k, std::int64_t lo,
                       std::int64_t hi, bool inverse = false);

// T^n x by the coordinate product formulas: forward
// y_j = prod_{s=0}^{n-1} A_{j+s-n} x_{j-n}, backward
// y_j = prod_{s=1}^{n} A_{j+s} x_{j+n}; diagonal per (k, j) pair.
FinVector ows_apply(const OwsOperator& T, const FinVector& x, std::size_t n);

// The identification of a forward OWS with a pseudo-shift over N x Z:
// phi(i, j) = (i, j-1), b_{i,j} = a_{i,j-1}, on the Hilbert space with
// orthonormal e_{i,j}. Single application agrees with ows_apply(.,.,1)
// coefficient-exactly.
PseudoShift ows_to_pseudoshift(const OwsOperator& T);

// d-supercyclicity certificate for N forward OWS operators with powers
// r_1 < ... < r_N: the pairwise A-product family and the two mixed
// families, evaluated natively from the A-products and cross-checked
// entry-by-entry against the generic checker on the identified
// pseudo-shifts (max discrepancy recorded in the report).
CertificateReport check_ows_dsc(const std::vector<OwsOperator>& ops,
                                const std::vector<std::size_t>& powers,
                                const Schedule& schedule,
                                const WindowGrowth& windows);

// d-supercyclicity certificate for the powers T, T^2, ..., T^N of one
// forward OWS under the one-sided inverse-bound hypothesis: the three
// condition families over K-indices i <= k_window (the sampled inverse
// bound is reported as a precondition, never proved).
CertificateReport check_ows_powers_dsc(const OwsOperator& T, std::size_t N,
                                       const Schedule& schedule,
                                       std::size_t k_window);

}  // namespace dshift
