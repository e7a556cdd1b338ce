#include "dshift/gallery.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

namespace dshift {
namespace {

Schedule ramp(std::size_t K) {
    std::vector<std::size_t> steps;
    for (std::size_t k = 1; k <= K; ++k) steps.push_back(k);
    return Schedule::user(std::move(steps));
}

Schedule example_4_3_schedule(std::size_t K) {
    std::vector<std::size_t> steps;
    for (std::size_t k = 1; k <= K; ++k)
        steps.push_back(std::size_t(1) << (2 * k + 1));  // n_k = 2^{2k+1}
    return Schedule::user(std::move(steps));
}

CertificateReport run_tree(const std::string& mode) {
    if (mode != "hyper")
        throw CheckError("PARAM-RANGE",
                         "example-2-3 supports mode 'hyper' only");
    // the paper's displayed limits are taken at the base vertex
    return check_dhc(build_tree_example(), ramp(6),
                     fixed_window({Index::scalar(0)}));
}

CertificateReport run_unilateral(const std::string& mode) {
    if (mode != "super")
        throw CheckError("PARAM-RANGE",
                         "example-3-4 supports mode 'super' only");
    const auto two = [](std::int64_t) { return 2.0; };
    const ShiftTuple tuple = build_unilateral_example({two, two}, {1, 2});
    return check_dsc(tuple, ramp(6), linear_windows(IndexSpace::naturals()),
                     DscMode::Escaping);
}

CertificateReport run_example_4_3(const std::string& mode) {
    const OwsOperator T = build_example_4_3();
    const Schedule schedule = example_4_3_schedule(5);
    if (mode == "super")
        return check_ows_powers_dsc(T, 2, schedule, 4);
    if (mode == "hyper") {
        const PseudoShift shift = ows_to_pseudoshift(T);
        const ShiftTuple tuple({shift, shift}, {1, 2});
        return check_dhc(tuple, schedule,
                         linear_windows(IndexSpace::grid()));
    }
    throw CheckError("PARAM-RANGE",
                     "example-4-3 supports modes 'super' and 'hyper'");
}

}  // namespace

ShiftTuple build_tree_example(double s1, double s2, double p) {
    if (!(1.0 < s1 && s1 <= s2))
        throw CheckError("PARAM-RANGE", "need 1 < s1 <= s2");
    if (!(p >= 1.0)) throw CheckError("PARAM-RANGE", "need p >= 1");
    const IndexSpace vertices = IndexSpace::tree_path();
    const TreeSpace tree = TreeSpace::from_parent(
        vertices, [](Index v) { return Index::scalar(v.a + 1); },
        [s1, s2](Index v) {
            // positive labels are the ancestors of omega* = 0
            const double base = v.a > 0 ? s1 : s2;
            return -static_cast<double>(std::llabs(v.a)) * std::log(base);
        },
        p);
    const SpaceModel space = SpaceModel::tree_lp(tree);
    const auto unit = [](Index) { return LogScalar::one(); };
    return ShiftTuple({PseudoShift(space, ShiftMap::translate(vertices, 1), unit),
                       PseudoShift(space, ShiftMap::translate(vertices, 2), unit)},
                      {1, 2});
}

ShiftTuple build_unilateral_example(
    std::vector<std::function<double(std::int64_t)>> weight,
    std::vector<std::size_t> powers) {
    const IndexSpace naturals = IndexSpace::naturals();
    const SpaceModel space =
        SpaceModel::weighted_lp(naturals, 2.0, [](Index) { return 0.0; });
    std::vector<PseudoShift> shifts;
    shifts.reserve(weight.size());
    for (auto& a : weight)
        shifts.emplace_back(space, ShiftMap::translate(naturals, 1),
                            [a = std::move(a)](Index i) {
                                return LogScalar::from_real(a(i.a + 1));
                            });
    return ShiftTuple(std::move(shifts), std::move(powers));
}

bool in_c_set(std::int64_t n) {
    for (int s = 0; s <= 30; ++s) {
        const std::int64_t p = std::int64_t(1) << (2 * s + 1);
        if (p - (2 * s + 1) > n) return false;
        if (n <= p - 1) return true;
    }
    return false;
}

bool in_d_set(std::int64_t n) {
    for (int s = 0; s <= 30; ++s) {
        const std::int64_t p = std::int64_t(1) << (2 * s + 1);
        if (p > n) return false;
        if (n <= p + 2 * s) return true;
    }
    return false;
}

bool in_e_set(std::int64_t n) {
    if (n >= -1) return false;
    const std::int64_t m = -n;
    if ((m & (m - 1)) != 0) return false;  // power of two
    int exponent = 0;
    for (std::int64_t v = m; v > 1; v >>= 1) ++exponent;
    return exponent % 2 == 1;  // 2^{2s+1}
}

double example_4_3_entry(std::int64_t k, std::int64_t n) {
    if (in_c_set(n)) return k <= n ? 0.5 : 1.0;
    if (in_d_set(n)) return k <= n ? 2.0 : 1.0;
    if (in_e_set(n)) return k <= -n ? 2.0 : 1.0;
    return 1.0;
}

OwsOperator build_example_4_3() {
    return {DiagonalWeightFamily::from_values(example_4_3_entry, 2.0),
            OwsDirection::Forward};
}

const std::vector<GalleryEntry>& gallery() {
    static const std::vector<GalleryEntry> entries = {
        {"example-2-3",
         "shifts par, par^2 on the weighted L^p of the bi-infinite path tree",
         {"hyper"},
         run_tree,
         {{"hyper", Verdict::PassCertificate}}},
        {"example-3-4",
         "unilateral backward weighted shifts on l^2(N), escaping mode",
         {"super"},
         run_unilateral,
         {{"super", Verdict::PassCertificate}}},
        {"example-4-3",
         "bilateral operator-weighted shift (T, T^2) with the C/D/E rules",
         {"super", "hyper"},
         run_example_4_3,
         {{"super", Verdict::PassCertificate}, {"hyper", Verdict::Fail}}},
    };
    return entries;
}

const GalleryEntry* find_gallery_entry(const std::string& name) {
    for (const GalleryEntry& e : gallery())
        if (e.name == name) return &e;
    return nullptr;
}

}  // namespace dshift
