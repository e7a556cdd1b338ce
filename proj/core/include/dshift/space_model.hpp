#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dshift/index_space.hpp"
#include "dshift/log_scalar.hpp"

namespace dshift {

// A finitely supported vector: support sorted by the space enumeration,
// zero coefficients dropped, coefficients held in log form so that scaled
// basis vectors with magnitudes like 2^(+-8192) stay representable.
class FinVector {
  public:
    using Term = std::pair<Index, LogScalar>;

    explicit FinVector(IndexSpace space) : space_(std::move(space)) {}

    FinVector(IndexSpace space, std::vector<Term> terms)
        : space_(std::move(space)) {
        for (auto& [i, c] : terms) add_term(i, c);
    }

    static FinVector basis(const IndexSpace& space, Index i) {
        return FinVector(space, {{i, LogScalar::one()}});
    }

    const IndexSpace& space() const { return space_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Index i, LogScalar c) {
        if (c.is_zero()) return;
        const std::size_t r = space_.rank(i);
        auto it = std::lower_bound(
            terms_.begin(), terms_.end(), r,
            [this](const Term& t, std::size_t rank) {
                return space_.rank(t.first) < rank;
            });
        if (it != terms_.end() && it->first == i) {
            const LogScalar sum = it->second + c;
            if (sum.is_zero())
                terms_.erase(it);
            else
                it->second = sum;
        } else {
            terms_.insert(it, {i, c});
        }
    }

    LogScalar coefficient(Index i) const {
        for (const auto& [j, c] : terms_)
            if (j == i) return c;
        return LogScalar::zero();
    }

    FinVector scaled(LogScalar c) const {
        FinVector out(space_);
        if (c.is_zero()) return out;
        for (const auto& [i, t] : terms_) out.terms_.emplace_back(i, t * c);
        return out;
    }

    friend FinVector operator+(const FinVector& x, const FinVector& y) {
        FinVector out = x;
        for (const auto& [i, c] : y.terms_) out.add_term(i, c);
        return out;
    }
    friend FinVector operator-(const FinVector& x, const FinVector& y) {
        FinVector out = x;
        for (const auto& [i, c] : y.terms_) out.add_term(i, c.negated());
        return out;
    }

  private:
    IndexSpace space_;
    std::vector<Term> terms_;
};

// A directed tree with outdegree <= 1: a total parent map, its partial
// inverse chi, and positive vertex weights lambda. The only infinite
// built-in is the bi-infinite path (Z-labelled vertices, par(v) = v + 1);
// finite tables allow arbitrary small trees in tests.
class TreeSpace {
  public:
    using ParentFn = std::function<Index(Index)>;
    using LogLambdaFn = std::function<double(Index)>;

    // Validates acyclicity and outdegree <= 1 on the given window.
    // Throws TreeError with a CYCLE or OUTDEGREE witness otherwise.
    static TreeSpace from_parent(IndexSpace vertices, ParentFn parent,
                                 LogLambdaFn log_lambda, double p,
                                 std::size_t check_window = 32);

    const IndexSpace& vertices() const { return vertices_; }
    double p() const { return p_; }
    Index parent(Index v) const { return parent_(v); }
    std::optional<Index> child(Index v) const;  // partial inverse of parent
    double log_lambda(Index v) const { return log_lambda_(v); }

  private:
    TreeSpace(IndexSpace vertices, ParentFn parent, LogLambdaFn log_lambda,
              double p)
        : vertices_(std::move(vertices)),
          parent_(std::move(parent)),
          log_lambda_(std::move(log_lambda)),
          p_(p) {}

    IndexSpace vertices_;
    ParentFn parent_;
    LogLambdaFn log_lambda_;
    double p_;
};

struct TreeError : std::runtime_error {
    enum Kind { Cycle, Outdegree };
    TreeError(Kind k, Index w, const std::string& msg)
        : std::runtime_error(msg), kind(k), witness(w) {}
    Kind kind;
    Index witness;
};

enum class SpaceKind { WeightedLp, TreeLp, ZKHilbert };

// A norm model for one of the three Banach sequence spaces the checkers
// run over. Basis norms are carried as log-magnitudes throughout; the norm
// of a general finite vector exponentiates per term with a max-shift.
class SpaceModel {
  public:
    using LogNormFn = std::function<double(Index)>;

    // ||e_i|| supplied directly as log ||e_i|| (user table or rule set).
    static SpaceModel weighted_lp(IndexSpace index_space, double p,
                                  LogNormFn basis_lognorm) {
        check_p(p);
        return SpaceModel(std::move(index_space), SpaceKind::WeightedLp, p,
                          std::move(basis_lognorm));
    }

    // L^p(T, lambda): ||e_v|| = lambda_v^(1/p).
    static SpaceModel tree_lp(const TreeSpace& tree) {
        const double p = tree.p();
        check_p(p);
        return SpaceModel(
            tree.vertices(), SpaceKind::TreeLp, p,
            [tree](Index v) { return tree.log_lambda(v) / tree.p(); });
    }

    // l^2(Z, K) over N x Z; the e_(i,j) are orthonormal.
    static SpaceModel zk_hilbert(IndexSpace grid_space) {
        return SpaceModel(std::move(grid_space), SpaceKind::ZKHilbert, 2.0,
                          [](Index) { return 0.0; });
    }

    const IndexSpace& index_space() const { return index_space_; }
    SpaceKind kind() const { return kind_; }
    double p() const { return p_; }

    // log ||e_i||; -inf for the undefined index (zero-vector convention).
    double basis_lognorm(std::optional<Index> i) const {
        if (!i) return -std::numeric_limits<double>::infinity();
        return basis_lognorm_(*i);
    }

    // log ||sum c_i e_i|| via ||x||^p = sum |c_i|^p ||e_i||^p (holds for
    // all three kinds on finite supports); -inf for the zero vector. The
    // max-shift keeps coefficients like 2^(+-8192) in range.
    double vector_lognorm(const FinVector& x) const {
        if (x.is_zero()) return -std::numeric_limits<double>::infinity();
        double shift = -std::numeric_limits<double>::infinity();
        for (const auto& [i, c] : x.terms())
            shift = std::max(shift, c.log_mag + basis_lognorm_(i));
        double acc = 0.0;
        for (const auto& [i, c] : x.terms())
            acc += std::exp(p_ * (c.log_mag + basis_lognorm_(i) - shift));
        return shift + std::log(acc) / p_;
    }

    double vector_norm(const FinVector& x) const {
        return std::exp(vector_lognorm(x));
    }

  private:
    SpaceModel(IndexSpace index_space, SpaceKind kind, double p,
               LogNormFn basis_lognorm)
        : index_space_(std::move(index_space)),
          kind_(kind),
          p_(p),
          basis_lognorm_(std::move(basis_lognorm)) {}

    static void check_p(double p) {
        if (!(p >= 1.0)) throw std::invalid_argument("exponent p must be >= 1");
    }

    IndexSpace index_space_;
    SpaceKind kind_;
    double p_;
    LogNormFn basis_lognorm_;
};

}  // namespace dshift
