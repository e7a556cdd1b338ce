#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "dshift/log_scalar.hpp"
#include "dshift/shift_map.hpp"
#include "dshift/space_model.hpp"

namespace dshift {

// The weighted pseudo-shift T_{b,phi}: (x_i) -> (b_i x_{phi(i)}), with the
// zero convention b_{psi(i)} = 0, e_{psi(i)} = 0 off phi(I). Weights are
// non-zero on every genuine index and exposed in log form.
class PseudoShift {
  public:
    using WeightFn = std::function<LogScalar(Index)>;

    PseudoShift(SpaceModel space, ShiftMap map, WeightFn weight)
        : space_(std::move(space)),
          map_(std::move(map)),
          weight_(std::move(weight)) {}

    const SpaceModel& space() const { return space_; }
    const ShiftMap& map() const { return map_; }
    LogScalar weight(Index i) const { return weight_(i); }

  private:
    SpaceModel space_;
    ShiftMap map_;
    WeightFn weight_;
};

// A weight product together with where the iterate chain landed; the pair
// lets callers form ||product * e_landing|| without re-iterating.
struct ProductAtLanding {
    LogScalar product;
    std::optional<Index> landing;  // nullopt: fell off phi(I), product zero
};

// T x, one application: sum over the support of b_{psi(i)} c_i e_{psi(i)},
// undefined targets contributing zero.
FinVector apply(const PseudoShift& T, const FinVector& x);

// b_{n,i} = prod_{v=0}^{n-1} b_{phi^v(i)}. Factors are accumulated from
// v = n-1 down to 0, the same order the backward walk of T^n visits them,
// so that T^{rn} (S_{l,n} e_i) cancels to e_i exactly in the log.
LogScalar forward_product(const PseudoShift& T, Index i, std::size_t n);

// prod_{v=1}^{n} b_{psi^v(i)} together with psi^n(i); exact zero with an
// undefined landing as soon as one psi step leaves phi(I).
ProductAtLanding backward_product(const PseudoShift& T, Index i,
                                  std::size_t n);

// T^n x via the backward products of its basis terms; agrees with n-fold
// apply.
FinVector power_apply(const PseudoShift& T, const FinVector& x,
                      std::size_t n);

// S_{l,n} e_i = (prod_{v=0}^{rn-1} b_{phi^v(i)})^{-1} e_{phi^{rn}(i)},
// the right inverse of T^{rn} on basis vectors.
FinVector s_map(const PseudoShift& T, std::size_t r, std::size_t n, Index i);

// Linear extension of s_map to finite vectors.
FinVector s_map_linear(const PseudoShift& T, std::size_t r, std::size_t n,
                       const FinVector& x);

}  // namespace dshift
