#include "dshift/space_model.hpp"

#include <algorithm>
#include <unordered_map>

namespace dshift {

TreeSpace TreeSpace::from_parent(IndexSpace vertices, ParentFn parent,
                                 LogLambdaFn log_lambda, double p,
                                 std::size_t check_window) {
    // outdegree check: two window vertices with a common parent
    std::unordered_map<Index, Index, IndexHash> seen_parent;
    const auto window = vertices.window(check_window);
    for (Index v : window) {
        const Index u = parent(v);
        auto [it, inserted] = seen_parent.emplace(u, v);
        if (!inserted && it->second != v)
            throw TreeError(TreeError::Outdegree, u,
                            "vertex " + vertices.to_string(u) +
                                " has two children in the window");
    }
    // cycle check: following par from any window vertex must not return
    for (Index v : window) {
        Index cur = v;
        for (std::size_t step = 0; step < check_window; ++step) {
            cur = parent(cur);
            if (cur == v)
                throw TreeError(TreeError::Cycle, v,
                                "parent chain from " + vertices.to_string(v) +
                                    " cycles back");
        }
    }
    return TreeSpace(std::move(vertices), std::move(parent),
                     std::move(log_lambda), p);
}

std::optional<Index> TreeSpace::child(Index v) const {
    if (vertices_.kind() == IndexKind::TreePath ||
        vertices_.kind() == IndexKind::Integers) {
        // the usual labelling has par(v) = v + 1; verify before using
        const Index candidate = Index::scalar(v.a - 1);
        if (parent_(candidate) == v) return candidate;
    }
    // invert over a bounded enumeration prefix
    const std::size_t limit =
        vertices_.finite() ? vertices_.table_size() : 4096;
    for (std::size_t m = 0; m < limit; ++m) {
        const Index u = vertices_.at(m);
        if (parent_(u) == v) return u;
    }
    return std::nullopt;
}

}  // namespace dshift
