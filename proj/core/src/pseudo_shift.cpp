#include "dshift/pseudo_shift.hpp"

#include <vector>

namespace dshift {

FinVector apply(const PseudoShift& T, const FinVector& x) {
    FinVector out(x.space());
    for (const auto& [i, c] : x.terms()) {
        const std::optional<Index> target = T.map().backward(i);
        if (!target) continue;  // b_{psi(i)} = 0, e_{psi(i)} = 0
        out.add_term(*target, c * T.weight(*target));
    }
    return out;
}

LogScalar forward_product(const PseudoShift& T, Index i, std::size_t n) {
    std::vector<Index> chain;
    chain.reserve(n);
    Index cur = i;
    for (std::size_t v = 0; v < n; ++v) {
        chain.push_back(cur);
        cur = T.map().forward(cur);
    }
    LogScalar product = LogScalar::one();
    for (std::size_t v = n; v-- > 0;) product *= T.weight(chain[v]);
    return product;
}

ProductAtLanding backward_product(const PseudoShift& T, Index i,
                                  std::size_t n) {
    LogScalar product = LogScalar::one();
    std::optional<Index> cur = i;
    for (std::size_t v = 1; v <= n; ++v) {
        cur = T.map().backward(*cur);
        if (!cur) return {LogScalar::zero(), std::nullopt};
        product *= T.weight(*cur);
    }
    return {product, cur};
}

FinVector power_apply(const PseudoShift& T, const FinVector& x,
                      std::size_t n) {
    if (n == 0) return x;
    FinVector out(x.space());
    for (const auto& [i, c] : x.terms()) {
        const auto [product, landing] = backward_product(T, i, n);
        if (!landing) continue;
        out.add_term(*landing, c * product);
    }
    return out;
}

FinVector s_map(const PseudoShift& T, std::size_t r, std::size_t n, Index i) {
    const std::size_t steps = r * n;
    const LogScalar coeff = forward_product(T, i, steps).inverse();
    const Index landing =
        *T.map().iterate(i, static_cast<std::int64_t>(steps));
    return FinVector(T.space().index_space(),
                     {{landing, coeff}});
}

FinVector s_map_linear(const PseudoShift& T, std::size_t r, std::size_t n,
                       const FinVector& x) {
    FinVector out(x.space());
    for (const auto& [i, c] : x.terms()) {
        const FinVector image = s_map(T, r, n, i);
        for (const auto& [j, d] : image.terms()) out.add_term(j, c * d);
    }
    return out;
}

}  // namespace dshift
