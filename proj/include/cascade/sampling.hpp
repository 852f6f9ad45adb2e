#pragma once

// Random and exhaustive instance generation for the verification harness.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "cascade/box.hpp"
#include "cascade/condition.hpp"
#include "cascade/forest.hpp"
#include "cascade/names.hpp"
#include "cascade/toggle_set.hpp"

namespace cascade {

using Rng = std::mt19937_64;

inline std::size_t uniform_index(Rng& rng, std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

inline bool coin(Rng& rng) { return uniform_index(rng, 2) == 1; }

/// Every regressive map on a universe of n nodes ((n-1)! of them).
inline std::vector<PredecessorForest> all_forests(std::size_t n) {
    std::vector<PredecessorForest> out;
    std::vector<NodeId> pred(n == 0 ? 0 : n - 1, 0);
    while (true) {
        out.emplace_back(n, pred);
        // Mixed-radix increment: digit k ranges over 0..k.
        std::size_t k = 0;
        while (k < pred.size() && pred[k] == k) {
            pred[k] = 0;
            ++k;
        }
        if (k == pred.size()) {
            return out;
        }
        ++pred[k];
    }
}

/// Every rho-closed subset of the universe (universe of at most 20 nodes).
inline std::vector<Window> closed_subsets(const PredecessorForest& forest) {
    std::vector<Window> out;
    const std::size_t n = forest.size();
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        NodeSet s;
        for (NodeId x = 0; x < n; ++x) {
            if ((mask >> x) & 1U) {
                s.insert(x);
            }
        }
        if (is_rho_closed(forest, s)) {
            out.emplace_back(forest, s);
        }
    }
    return out;
}

/// A random rho-window of exactly `size` nodes (size <= universe), grown from
/// the root by adding random nodes whose predecessor is already present.
inline Window random_window(const PredecessorForest& forest, std::size_t size, Rng& rng) {
    NodeSet nodes;
    if (size == 0) {
        return Window(forest);
    }
    nodes.insert(0);
    while (nodes.size() < std::min(size, forest.size())) {
        std::vector<NodeId> frontier;
        for (NodeId x : nodes) {
            for (NodeId y : forest.children(x)) {
                if (!nodes.contains(y)) {
                    frontier.push_back(y);
                }
            }
        }
        nodes.insert(frontier[uniform_index(rng, frontier.size())]);
    }
    return Window(forest, nodes);
}

/// A random rho-closed subset of `window` (possibly empty).
inline Window random_subwindow(const Window& window, Rng& rng) {
    NodeSet nodes;
    const std::size_t target = uniform_index(rng, window.size() + 1);
    while (nodes.size() < target) {
        std::vector<NodeId> frontier;
        for (NodeId x : window.nodes()) {
            if (!nodes.contains(x) && (x == 0 || nodes.contains(window.forest().pred(x)))) {
                frontier.push_back(x);
            }
        }
        nodes.insert(frontier[uniform_index(rng, frontier.size())]);
    }
    return Window(window.forest(), nodes);
}

inline Condition random_condition(const CoordinateBox& box, std::size_t max_entries, Rng& rng) {
    Condition q;
    const std::size_t entries = uniform_index(rng, std::min(max_entries, box.size()) + 1);
    while (q.size() < entries) {
        q.set(box.coordinate_at(uniform_index(rng, box.size())), coin(rng));
    }
    return q;
}

/// A random finite or cofinite toggle set avoiding `avoid`, drawn from bits
/// below `bit_bound` (cofinite sets list all of `avoid` as exceptions).
inline ToggleSet random_toggle_avoiding(const BitSet& avoid, Bit bit_bound, Rng& rng) {
    std::vector<Bit> bits;
    if (coin(rng)) {
        for (Bit n = 0; n < bit_bound; ++n) {
            if (!avoid.contains(n) && coin(rng)) {
                bits.push_back(n);
            }
        }
        return ToggleSet::finite(bits);
    }
    bits.assign(avoid.begin(), avoid.end());
    for (Bit n = 0; n < bit_bound; ++n) {
        if (coin(rng)) {
            bits.push_back(n);
        }
    }
    return ToggleSet::cofinite(bits);
}

inline ToggleSet random_toggle(Bit bit_bound, Rng& rng) { return random_toggle_avoiding({}, bit_bound, rng); }

/// A random name supported by A: each group of pairs shares one condition
/// over the rows of A and runs through every assignment of a few coordinates
/// off A, so the off-A part never matters.
inline RawName random_supported_name(const CoordinateBox& box, const Window& support, Rng& rng,
                                     std::size_t max_groups = 3, Natural natural_bound = 4) {
    std::vector<Coordinate> on_support;
    std::vector<Coordinate> off_support;
    for (std::size_t k = 0; k < box.size(); ++k) {
        const auto c = box.coordinate_at(k);
        (support.contains(c.node) ? on_support : off_support).push_back(c);
    }
    RawName name;
    const std::size_t groups = uniform_index(rng, max_groups + 1);
    for (std::size_t gi = 0; gi < groups; ++gi) {
        const auto m = static_cast<Natural>(uniform_index(rng, natural_bound));
        Condition base;
        if (!on_support.empty()) {
            const std::size_t entries = uniform_index(rng, std::min<std::size_t>(3, on_support.size()) + 1);
            while (base.size() < entries) {
                base.set(on_support[uniform_index(rng, on_support.size())], coin(rng));
            }
        }
        std::vector<Coordinate> free;
        if (!off_support.empty()) {
            const std::size_t count = uniform_index(rng, std::min<std::size_t>(2, off_support.size()) + 1);
            while (free.size() < count) {
                const auto c = off_support[uniform_index(rng, off_support.size())];
                if (std::find(free.begin(), free.end(), c) == free.end()) {
                    free.push_back(c);
                }
            }
        }
        for (std::uint32_t pattern = 0; pattern < (1U << free.size()); ++pattern) {
            Condition p = base;
            for (std::size_t j = 0; j < free.size(); ++j) {
                p.set(free[j], (pattern >> j) & 1U);
            }
            name.pairs.emplace_back(m, std::move(p));
        }
    }
    return name;
}

/// A random box over a sub-window of a random forest with at most
/// `max_coordinates` coordinates.
inline CoordinateBox random_box(Rng& rng, std::size_t max_coordinates, std::size_t universe = 7) {
    const auto forest = random_forest(universe, rng());
    const Row rows = static_cast<Row>(1 + uniform_index(rng, 2));
    const Bit bits = static_cast<Bit>(1 + uniform_index(rng, 2));
    const std::size_t max_nodes = std::max<std::size_t>(1, max_coordinates / (rows * bits));
    const std::size_t nodes = 1 + uniform_index(rng, std::min(max_nodes, universe));
    return CoordinateBox(random_window(forest, nodes, rng), rows, bits);
}

}  // namespace cascade
