#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dshift {

// One point of a countable index set. Scalar kinds (Z, N, tree vertices,
// finite tables) use component `a`; the grid N x Z uses (a, b) = (k, n).
struct Index {
    std::int64_t a = 0;
    std::int64_t b = 0;

    static Index scalar(std::int64_t v) { return {v, 0}; }
    static Index pair(std::int64_t k, std::int64_t n) { return {k, n}; }

    friend bool operator==(const Index&, const Index&) = default;
    friend auto operator<=>(const Index&, const Index&) = default;
};

struct IndexHash {
    std::size_t operator()(const Index& i) const {
        return std::hash<std::int64_t>{}(i.a) ^
               (std::hash<std::int64_t>{}(i.b) * 0x9e3779b97f4a7c15ull);
    }
};

enum class IndexKind { Integers, Naturals, Grid, TreePath, Table };

// A countable index set given intensionally: a kind, a membership test and
// a fixed injective enumeration i_1, i_2, ... realising I. Windows are the
// finite prefixes of that enumeration. Nothing infinite is materialised.
//
// Canonical enumerations: Z as 0, 1, -1, 2, -2, ...; N as 0, 1, 2, ...;
// N x Z by diagonal interleaving of (k, enumeration of Z). The tree-path
// kind is the bi-infinite path with Z-labelled vertices and enumerates
// like Z.
class IndexSpace {
  public:
    static IndexSpace integers() { return IndexSpace(IndexKind::Integers); }
    static IndexSpace naturals() { return IndexSpace(IndexKind::Naturals); }
    static IndexSpace grid() { return IndexSpace(IndexKind::Grid); }
    static IndexSpace tree_path() { return IndexSpace(IndexKind::TreePath); }
    static IndexSpace table(std::vector<std::string> names) {
        IndexSpace s(IndexKind::Table);
        s.table_names_ = std::move(names);
        return s;
    }

    IndexKind kind() const { return kind_; }
    bool finite() const { return kind_ == IndexKind::Table; }
    std::size_t table_size() const { return table_names_.size(); }

    // m-th index of the enumeration, m = 0, 1, 2, ...
    Index at(std::size_t m) const {
        switch (kind_) {
            case IndexKind::Naturals:
                return Index::scalar(static_cast<std::int64_t>(m));
            case IndexKind::Integers:
            case IndexKind::TreePath:
                return Index::scalar(z_at(m));
            case IndexKind::Grid: {
                // diagonal t = k + (rank of n in the Z enumeration)
                std::size_t t = 0;
                while ((t + 1) * (t + 2) / 2 <= m) ++t;
                const std::size_t k = m - t * (t + 1) / 2;
                return Index::pair(static_cast<std::int64_t>(k), z_at(t - k));
            }
            case IndexKind::Table:
                if (m >= table_names_.size())
                    throw std::out_of_range("table index enumeration exhausted");
                return Index::scalar(static_cast<std::int64_t>(m));
        }
        throw std::logic_error("bad kind");
    }

    // Inverse of at(); used to keep vector supports in enumeration order.
    std::size_t rank(Index i) const {
        switch (kind_) {
            case IndexKind::Naturals:
            case IndexKind::Table:
                return static_cast<std::size_t>(i.a);
            case IndexKind::Integers:
            case IndexKind::TreePath:
                return z_rank(i.a);
            case IndexKind::Grid: {
                const std::size_t t =
                    static_cast<std::size_t>(i.a) + z_rank(i.b);
                return t * (t + 1) / 2 + static_cast<std::size_t>(i.a);
            }
        }
        throw std::logic_error("bad kind");
    }

    bool contains(Index i) const {
        switch (kind_) {
            case IndexKind::Integers:
            case IndexKind::TreePath:
                return true;
            case IndexKind::Naturals:
                return i.a >= 0;
            case IndexKind::Grid:
                return i.a >= 0;
            case IndexKind::Table:
                return i.a >= 0 &&
                       static_cast<std::size_t>(i.a) < table_names_.size();
        }
        return false;
    }

    std::vector<Index> window(std::size_t k) const {
        if (kind_ == IndexKind::Table && k > table_names_.size())
            k = table_names_.size();
        std::vector<Index> w;
        w.reserve(k);
        for (std::size_t m = 0; m < k; ++m) w.push_back(at(m));
        return w;
    }

    std::string to_string(Index i) const {
        switch (kind_) {
            case IndexKind::Grid:
                return "(" + std::to_string(i.a) + "," + std::to_string(i.b) +
                       ")";
            case IndexKind::Table:
                return table_names_.at(static_cast<std::size_t>(i.a));
            default:
                return std::to_string(i.a);
        }
    }

    friend bool operator==(const IndexSpace& x, const IndexSpace& y) {
        return x.kind_ == y.kind_ && x.table_names_ == y.table_names_;
    }

  private:
    explicit IndexSpace(IndexKind k) : kind_(k) {}

    static std::int64_t z_at(std::size_t m) {
        // 0, 1, -1, 2, -2, ...
        if (m % 2 == 1) return static_cast<std::int64_t>((m + 1) / 2);
        return -static_cast<std::int64_t>(m / 2);
    }
    static std::size_t z_rank(std::int64_t v) {
        return v > 0 ? static_cast<std::size_t>(2 * v - 1)
                     : static_cast<std::size_t>(-2 * v);
    }

    IndexKind kind_;
    std::vector<std::string> table_names_;
};

}  // namespace dshift
