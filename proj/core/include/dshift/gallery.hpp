#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dshift/criteria.hpp"
#include "dshift/ows.hpp"

namespace dshift {

// The bi-infinite path tree (the unique connected rootless directed tree
// with outdegree <= 1): vertices labelled by Z, par(v) = v + 1, base
// vertex omega* = 0, lambda_u = (1/s1)^d on the ancestor side and
// (1/s2)^d on the descendant side with d = dist(u, omega*). Shifts
// S1 = par, S2 = par^2, powers (1, 2), unit weights, on L^p(T, lambda).
ShiftTuple build_tree_example(double s1 = 2.0, double s2 = 2.0,
                              double p = 2.0);

// Unilateral backward weighted shifts on l^2(N): T_l e_0 = 0 and
// T_l e_j = a_l(j) e_{j-1}; as pseudo-shifts b_i = a_l(i+1),
// phi(i) = i + 1. weight[l](j) supplies a_{l,j} for j >= 1.
ShiftTuple build_unilateral_example(
    std::vector<std::function<double(std::int64_t)>> weight,
    std::vector<std::size_t> powers);

// Membership in the piecewise-rule index sets of the bilateral OWS
// example: C = U_s {2^{2s+1}-(2s+1), ..., 2^{2s+1}-1},
// D = U_s {2^{2s+1}, ..., 2^{2s+1}+2s}, E = U_s {-2^{2s+1}}.
bool in_c_set(std::int64_t n);
bool in_d_set(std::int64_t n);
bool in_e_set(std::int64_t n);

// a_{k,n}: 1/2 on C and 2 on D for k <= n, 2 on E for k <= -n, else 1.
double example_4_3_entry(std::int64_t k, std::int64_t n);

// The bilateral forward OWS with the C/D/E weight rules; the problem
// instance is (T, T^2).
OwsOperator build_example_4_3();

// A named fixture: constructing it with default parameters and running
// the named mode reproduces the expected verdict.
struct GalleryEntry {
    std::string name;
    std::string summary;
    std::vector<std::string> modes;  // accepted --mode values, first = default
    std::function<CertificateReport(const std::string& mode)> run;
    std::map<std::string, Verdict> expected;  // mode -> golden verdict
};

const std::vector<GalleryEntry>& gallery();

// nullptr when no entry carries the name.
const GalleryEntry* find_gallery_entry(const std::string& name);

}  // namespace dshift
