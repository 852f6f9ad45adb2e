#pragma once

// Brute-force reference computations. None of these call the algorithm they
// are used to check; they work from the raw predecessor map and definitions.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "cascade/cascade.hpp"

namespace oracle {

using namespace cascade;

/// Star of x inside the node set k, from the predecessor map alone.
inline std::set<NodeId> star(const PredecessorForest& forest, const std::vector<NodeId>& k, NodeId x) {
    std::set<NodeId> s{x};
    for (NodeId y : k) {
        if (y != 0 && forest.pred(y) == x) {
            s.insert(y);
        }
    }
    return s;
}

inline std::set<NodeId> symmetric_difference(const std::set<NodeId>& a, const std::set<NodeId>& b) {
    std::set<NodeId> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

/// Every coefficient set S subset of k whose stars sum to `target`.
inline std::vector<std::set<NodeId>> star_span_solutions(const PredecessorForest& forest,
                                                         const std::vector<NodeId>& k,
                                                         const std::set<NodeId>& target) {
    std::vector<std::set<NodeId>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k.size()); ++mask) {
        std::set<NodeId> sum;
        std::set<NodeId> coeffs;
        for (std::size_t j = 0; j < k.size(); ++j) {
            if ((mask >> j) & 1U) {
                coeffs.insert(k[j]);
                sum = symmetric_difference(sum, star(forest, k, k[j]));
            }
        }
        if (sum == target) {
            out.push_back(coeffs);
        }
    }
    return out;
}

/// Closure by repeated predecessor steps until nothing changes.
inline std::set<NodeId> closure(const PredecessorForest& forest, std::set<NodeId> nodes) {
    bool grew = true;
    while (grew) {
        grew = false;
        for (NodeId x : std::set<NodeId>(nodes)) {
            if (x != 0 && nodes.insert(forest.pred(x)).second) {
                grew = true;
            }
        }
    }
    return nodes;
}

/// The four separation clauses for (beta, gamma) against A.
inline bool separation_clauses_hold(const PredecessorForest& forest, const std::set<NodeId>& a, NodeId beta,
                                    NodeId gamma) {
    if (a.contains(beta) || a.contains(gamma) || beta == gamma) {
        return false;
    }
    for (NodeId y = 1; y < forest.size(); ++y) {
        if (forest.pred(y) == beta && (y == gamma || a.contains(y))) {
            return false;
        }
    }
    return true;
}

/// Generator word acting on q, coordinate by coordinate.
inline Condition apply_word(const PredecessorForest& forest, const std::vector<GeneratorSpec>& word,
                            const Condition& q) {
    Condition out;
    for (const auto& [c, v] : q) {
        std::size_t flips = 0;
        for (const auto& g : word) {
            const bool on_row = c.node == g.node || (c.node != 0 && forest.pred(c.node) == g.node);
            if (on_row && c.row == g.row && g.toggle.contains(c.bit)) {
                ++flips;
            }
        }
        out.set(c, (flips % 2 == 1) ? !v : v);
    }
    return out;
}

/// label(q) = label(q') implies label(q+v) = label(q'+v), checked on all triples.
inline bool translation_invariant(const std::vector<std::uint32_t>& labels) {
    const auto n = static_cast<std::uint32_t>(labels.size());
    for (std::uint32_t q = 0; q < n; ++q) {
        for (std::uint32_t r = 0; r < n; ++r) {
            for (std::uint32_t v = 0; v < n; ++v) {
                if (labels[q] == labels[r] && labels[q ^ v] != labels[r ^ v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Orbits by breadth-first search over the generators only.
inline std::set<std::set<std::uint32_t>> orbits(std::size_t n, const std::vector<Permutation>& generators) {
    std::set<std::set<std::uint32_t>> out;
    std::vector<bool> seen(n, false);
    for (std::uint32_t x = 0; x < n; ++x) {
        if (seen[x]) {
            continue;
        }
        std::set<std::uint32_t> orbit{x};
        std::vector<std::uint32_t> stack{x};
        while (!stack.empty()) {
            const auto y = stack.back();
            stack.pop_back();
            for (const auto& g : generators) {
                if (orbit.insert(g[y]).second) {
                    stack.push_back(g[y]);
                }
            }
        }
        for (auto y : orbit) {
            seen[y] = true;
        }
        out.insert(orbit);
    }
    return out;
}

/// Every partial condition on the box as its sorted (index, value) list, in
/// lexicographic order (a proper prefix sorts first).
inline std::vector<std::vector<std::pair<std::size_t, int>>> all_packets_sorted(std::size_t coordinates) {
    std::vector<std::vector<std::pair<std::size_t, int>>> out;
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < coordinates; ++j) {
        total *= 3;
    }
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::pair<std::size_t, int>> tokens;
        std::uint64_t rest = code;
        for (std::size_t j = 0; j < coordinates; ++j, rest /= 3) {
            if (rest % 3 != 0) {
                tokens.emplace_back(j, static_cast<int>(rest % 3) - 1);
            }
        }
        out.push_back(tokens);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Evaluation straight from the definition: m is in x[g] iff some (m, p) of
/// the name has every entry of p matching g.
inline std::set<Natural> evaluate(const RawName& name, const Assignment& g) {
    std::set<Natural> out;
    for (const auto& [m, p] : name.pairs) {
        bool all = true;
        for (const auto& [c, v] : p) {
            all = all && g.at(c) == v;
        }
        if (all) {
            out.insert(m);
        }
    }
    return out;
}

/// Every total assignment on a box of at most 20 coordinates.
template <typename F>
void for_each_assignment(const CoordinateBox& box, F&& f) {
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << box.size()); ++pattern) {
        Assignment g(box);
        for (std::size_t k = 0; k < box.size(); ++k) {
            g.set(k, (pattern >> k) & 1U);
        }
        f(g);
    }
}

}  // namespace oracle
