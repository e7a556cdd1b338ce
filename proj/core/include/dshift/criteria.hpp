#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dshift/pseudo_shift.hpp"
#include "dshift/report.hpp"

namespace dshift {

// Structured failure of a checker precondition or input contract; `code`
// is a stable machine-readable tag (SCHEDULE-NOT-INCREASING,
// SPACE-MISMATCH, MODE-HYPOTHESIS-FAILED, PARAM-RANGE, ...).
struct CheckError : std::runtime_error {
    CheckError(std::string code_, const std::string& msg)
        : std::runtime_error(code_ + ": " + msg), code(std::move(code_)) {}
    std::string code;
};

// N >= 2 pseudo-shifts over one space with strictly increasing powers
// r_1 < ... < r_N; the problem instance T_1^{r_1}, ..., T_N^{r_N}.
class ShiftTuple {
  public:
    ShiftTuple(std::vector<PseudoShift> shifts, std::vector<std::size_t> powers);

    std::size_t size() const { return shifts_.size(); }
    const PseudoShift& shift(std::size_t l) const { return shifts_[l]; }
    std::size_t power(std::size_t l) const { return powers_[l]; }
    const SpaceModel& space() const { return shifts_.front().space(); }

  private:
    std::vector<PseudoShift> shifts_;
    std::vector<std::size_t> powers_;
};

struct Schedule {
    enum class Provenance { UserGiven, Searched };

    std::vector<std::size_t> steps;  // n_1 < n_2 < ... < n_K, each >= 1
    Provenance provenance = Provenance::UserGiven;

    static Schedule user(std::vector<std::size_t> steps) {
        Schedule s{std::move(steps), Provenance::UserGiven};
        s.validate();
        return s;
    }
    void validate() const;  // throws CheckError(SCHEDULE-NOT-INCREASING)
};

// I_k as a function of k; the default grows linearly along the canonical
// enumeration (|I_k| = k), fixed windows serve single-vertex checks.
using WindowGrowth = std::function<std::vector<Index>(std::size_t)>;

WindowGrowth linear_windows(IndexSpace space);
WindowGrowth fixed_window(std::vector<Index> window);

enum class CheckKind { Hyper, Super };
enum class DscMode { General, SameMap, Escaping };

// d-Hypercyclicity certificate (the (H1)/(H2) grids of the 1/k scheme):
// for every k <= K, i in I_k and l, the forward term
// ||(prod_{v<r_l n_k} b^(l)_{phi_l^v(i)})^-1 e_{phi_l^{r_l n_k}(i)}|| and
// backward term ||(prod_{v<=r_l n_k} b^(l)_{psi_l^v(i)}) e_{psi_l^{r_l n_k}(i)}||,
// plus the two mixed (H2) terms for every pair s < l. Preconditions
// (periodic points, run-away-with) are sampled and reported, never proved.
CertificateReport check_dhc(const ShiftTuple& problem, const Schedule& schedule,
                            const WindowGrowth& windows,
                            std::size_t precondition_horizon = 64);

// d-Supercyclicity certificate: (H1) is the product of the forward term at
// (i, l) and the backward term at (j, s) over all window pairs and all
// (l, s); (H2) as in check_dhc. mode=same-map additionally asserts the
// simplified landings psi^{(r_l-r_s)n_k}(i) / phi^{(r_l-r_s)n_k}(i);
// mode=escaping requires every window index to escape phi_l^n(I) and then
// checks only the (H2)(ii) family, the rest being identically zero.
CertificateReport check_dsc(const ShiftTuple& problem, const Schedule& schedule,
                            const WindowGrowth& windows, DscMode mode,
                            std::size_t precondition_horizon = 64);

struct ScheduleSearchResult {
    std::optional<Schedule> schedule;  // nullopt: NOT-FOUND
    std::size_t blocking_k = 0;        // set on NOT-FOUND
    // min over candidate n of (worst grid value) * k at the blocking k;
    // >= 1 exactly when no candidate certifies
    double margin = 0.0;
};

// Greedy schedule construction mirroring the proofs' inductive step: for
// k = 1..K take the smallest n_k > n_{k-1} whose whole grid at I_k meets
// the 1/k threshold; deterministic by construction.
ScheduleSearchResult search_schedule(const ShiftTuple& problem, CheckKind kind,
                                     std::size_t K, std::size_t n_max,
                                     const WindowGrowth& windows);

// One tabulated quantity of the pointwise criterion check on a basis
// vector: quantity is "T-power" (||T_l^{r_l n_k} e_i||), "S-map"
// (||S_{l,n_k} e_i||), "residual" (||T_l^{r_l n_k} S_{s,n_k} e_i -
// delta_{s,l} e_i||) or "super-product" (Definition-(ii) product).
struct CriterionEntry {
    std::string quantity;
    std::size_t k = 0;
    Index i;
    int l = 0;
    int s = 0;
    double log_magnitude = 0.0;
    bool below_threshold = false;
};

struct CriterionReport {
    CheckKind kind = CheckKind::Hyper;
    std::vector<CriterionEntry> entries;
    // every diagonal residual (s == l) cancelled to the exact zero vector
    bool diagonal_exact = true;
};

CriterionReport verify_criterion_pointwise(const ShiftTuple& problem,
                                           const Schedule& schedule,
                                           const std::vector<Index>& basis_window,
                                           CheckKind kind);

// x = base + sum_l S_{l,n}(target_l) and the residuals
// ||T_l^{r_l n} x - target_l||; the quantities the criteria drive to 0.
std::pair<FinVector, std::vector<double>> synthesize_vector(
    const ShiftTuple& problem, std::size_t n,
    const std::vector<FinVector>& targets, const FinVector& base);

}  // namespace dshift
