#pragma once

// Predecessor forests on an initial segment 0..N-1 of the naturals, their
// rho-closed windows, successor fibres and fresh-node separation.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <memory>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cascade/errors.hpp"

namespace cascade {

using NodeId = std::uint32_t;
using NodeSet = std::set<NodeId>;

/// A total regressive map pred : {1..N-1} -> {0..N-1} with pred(x) < x.
/// Node 0 is the unique root. Copies share the underlying tables.
class PredecessorForest {
public:
    /// `pred_of_nonroot[k]` is the predecessor of node `k + 1`.
    PredecessorForest(std::size_t universe_size, std::vector<NodeId> pred_of_nonroot) {
        if (universe_size == 0) {
            throw DomainError("predecessor forest needs at least the root node");
        }
        if (pred_of_nonroot.size() != universe_size - 1) {
            throw DomainError("predecessor map must be total on 1..N-1 (got " +
                              std::to_string(pred_of_nonroot.size()) + " entries for N=" +
                              std::to_string(universe_size) + ")");
        }
        auto data = std::make_shared<Data>();
        data->pred.reserve(universe_size);
        data->pred.push_back(0);  // unused slot for the root
        data->children.resize(universe_size);
        for (std::size_t k = 0; k < pred_of_nonroot.size(); ++k) {
            const auto node = static_cast<NodeId>(k + 1);
            const NodeId p = pred_of_nonroot[k];
            if (p >= node) {
                throw DomainError("predecessor map is not regressive at node " +
                                  std::to_string(node));
            }
            data->pred.push_back(p);
            data->children[p].push_back(node);
        }
        data_ = std::move(data);
    }

    /// Builds a forest from explicit `{child, parent}` pairs; every node 1..N-1
    /// must appear exactly once as a child.
    static PredecessorForest from_pairs(std::size_t universe_size,
                                        std::initializer_list<std::pair<NodeId, NodeId>> pairs) {
        return from_pairs(universe_size, std::vector<std::pair<NodeId, NodeId>>(pairs));
    }

    static PredecessorForest from_pairs(std::size_t universe_size,
                                        const std::vector<std::pair<NodeId, NodeId>>& pairs) {
        if (universe_size == 0) {
            throw DomainError("predecessor forest needs at least the root node");
        }
        std::vector<NodeId> pred(universe_size - 1);
        std::vector<bool> seen(universe_size, false);
        for (auto [child, parent] : pairs) {
            if (child == 0 || child >= universe_size) {
                throw DomainError("node " + std::to_string(child) + " cannot carry a predecessor");
            }
            if (seen[child]) {
                throw DomainError("node " + std::to_string(child) + " assigned twice");
            }
            seen[child] = true;
            pred[child - 1] = parent;
        }
        for (std::size_t x = 1; x < universe_size; ++x) {
            if (!seen[x]) {
                throw DomainError("predecessor missing for node " + std::to_string(x));
            }
        }
        return PredecessorForest(universe_size, std::move(pred));
    }

    std::size_t size() const noexcept { return data_->children.size(); }

    bool contains(NodeId x) const noexcept { return x < size(); }

    NodeId pred(NodeId x) const {
        check_node(x);
        if (x == 0) {
            throw DomainError("the root has no predecessor");
        }
        return data_->pred[x];
    }

    /// The successor fibre of `x`, ascending.
    std::span<const NodeId> children(NodeId x) const {
        check_node(x);
        return data_->children[x];
    }

    void check_node(NodeId x) const {
        if (!contains(x)) {
            throw DomainError("node " + std::to_string(x) + " outside universe of size " +
                              std::to_string(size()));
        }
    }

    friend bool operator==(const PredecessorForest& a, const PredecessorForest& b) {
        return a.data_ == b.data_ || a.data_->pred == b.data_->pred;
    }

private:
    struct Data {
        std::vector<NodeId> pred;
        std::vector<std::vector<NodeId>> children;
    };
    std::shared_ptr<const Data> data_;
};

/// A finite rho-closed node set inside a forest. Closedness is checked on
/// construction, so every Window in circulation is a genuine rho-window.
class Window {
public:
    Window(PredecessorForest forest, const NodeSet& nodes)
        : forest_(std::move(forest)), nodes_(nodes.begin(), nodes.end()) {
        for (NodeId x : nodes_) {
            forest_.check_node(x);
            if (x != 0 && !nodes.contains(forest_.pred(x))) {
                throw DomainError("node set is not rho-closed: " + std::to_string(x) +
                                  " present but its predecessor " +
                                  std::to_string(forest_.pred(x)) + " is missing");
            }
        }
    }

    /// The empty window.
    explicit Window(PredecessorForest forest) : forest_(std::move(forest)) {}

    const PredecessorForest& forest() const noexcept { return forest_; }
    std::span<const NodeId> nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    bool empty() const noexcept { return nodes_.empty(); }

    bool contains(NodeId x) const noexcept {
        return std::binary_search(nodes_.begin(), nodes_.end(), x);
    }

    /// Position of `x` in the ascending node order.
    std::size_t index_of(NodeId x) const {
        auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
        if (it == nodes_.end() || *it != x) {
            throw DomainError("node " + std::to_string(x) + " not in window");
        }
        return static_cast<std::size_t>(it - nodes_.begin());
    }

    NodeSet as_set() const { return NodeSet(nodes_.begin(), nodes_.end()); }

    friend bool operator==(const Window& a, const Window& b) {
        return a.nodes_ == b.nodes_ && a.forest_ == b.forest_;
    }

private:
    PredecessorForest forest_;
    std::vector<NodeId> nodes_;
};

inline std::vector<NodeId> successors(const PredecessorForest& forest, NodeId x) {
    auto c = forest.children(x);
    return {c.begin(), c.end()};
}

/// Smallest rho-closed superset of `nodes`.
inline Window rho_closure(const PredecessorForest& forest, const NodeSet& nodes) {
    NodeSet closed;
    for (NodeId x : nodes) {
        forest.check_node(x);
        // Walk towards the root until we hit something already collected.
        while (closed.insert(x).second && x != 0) {
            x = forest.pred(x);
        }
    }
    return Window(forest, closed);
}

inline bool is_rho_closed(const PredecessorForest& forest, const NodeSet& nodes) {
    for (NodeId x : nodes) {
        forest.check_node(x);
        if (x != 0 && !nodes.contains(forest.pred(x))) {
            return false;
        }
    }
    return true;
}

/// Union of two windows over the same forest; rho-closed again.
inline Window window_union(const Window& a, const Window& b) {
    if (!(a.forest() == b.forest())) {
        throw DomainError("windows over different forests");
    }
    NodeSet u = a.as_set();
    u.insert(b.nodes().begin(), b.nodes().end());
    return Window(a.forest(), u);
}

struct SeparationPair {
    NodeId beta;
    NodeId gamma;

    friend bool operator==(const SeparationPair&, const SeparationPair&) = default;
};

/// Picks the two least nodes gamma < beta outside A u pred[A]. Then beta and
/// gamma avoid A, gamma is not a successor of beta (successors lie above beta),
/// and no successor of beta lies in A (beta is nobody's predecessor in A).
inline SeparationPair fresh_separation(const Window& support) {
    const auto& forest = support.forest();
    NodeSet blocked = support.as_set();
    for (NodeId x : support.nodes()) {
        if (x != 0) {
            blocked.insert(forest.pred(x));
        }
    }
    std::vector<NodeId> fresh;
    for (NodeId x = 0; x < forest.size() && fresh.size() < 2; ++x) {
        if (!blocked.contains(x)) {
            fresh.push_back(x);
        }
    }
    if (fresh.size() < 2) {
        throw CapacityError("universe of size " + std::to_string(forest.size()) +
                            " has fewer than two nodes outside A and pred[A]");
    }
    return {fresh[1], fresh[0]};
}

/// Uniform regressive map on 1..n-1: pred(x) is drawn uniformly from 0..x-1.
inline PredecessorForest random_forest(std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw DomainError("random forest needs n >= 1");
    }
    std::mt19937_64 rng(seed);
    std::vector<NodeId> pred;
    pred.reserve(n - 1);
    for (std::size_t x = 1; x < n; ++x) {
        std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(x - 1));
        pred.push_back(pick(rng));
    }
    return PredecessorForest(n, std::move(pred));
}

}  // namespace cascade
