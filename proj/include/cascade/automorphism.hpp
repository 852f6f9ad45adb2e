#pragma once

// Cascade generators and the abelian group they generate, stored in
// row-toggle normal form.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cascade/condition.hpp"
#include "cascade/errors.hpp"
#include "cascade/f2linalg.hpp"
#include "cascade/forest.hpp"
#include "cascade/toggle_set.hpp"

namespace cascade {

/// One factor tau_{node,row,toggle}.
struct GeneratorSpec {
    NodeId node = 0;
    Row row = 0;
    ToggleSet toggle;

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Element of the cascade group: the accumulated toggle set of every row.
/// Rows with an empty toggle set are omitted, so equal elements have equal
/// representations. Only generators and their products can be built.
class CascadeAutomorphism {
public:
    using RowToggles = std::map<RowId, ToggleSet>;

    static CascadeAutomorphism identity(PredecessorForest forest) {
        return CascadeAutomorphism(std::move(forest), {});
    }

    /// Toggles row (x, i) along s and every row (y, i) with y in Succ(x).
    static CascadeAutomorphism generator(const PredecessorForest& forest, NodeId x, Row i,
                                         const ToggleSet& s) {
        forest.check_node(x);
        if (s.empty()) {
            throw DegenerateInputError("generator with empty toggle set is the identity");
        }
        RowToggles toggles;
        toggles.emplace(RowId{x, i}, s);
        for (NodeId y : forest.children(x)) {
            toggles.emplace(RowId{y, i}, s);
        }
        return CascadeAutomorphism(forest, std::move(toggles));
    }

    const PredecessorForest& forest() const noexcept { return forest_; }
    const RowToggles& row_toggles() const noexcept { return toggles_; }
    bool is_identity() const noexcept { return toggles_.empty(); }

    ToggleSet toggles_at(NodeId x, Row i) const {
        auto it = toggles_.find(RowId{x, i});
        return it == toggles_.end() ? ToggleSet{} : it->second;
    }

    /// Group product. The group is abelian of exponent 2 on rows, so this is
    /// the row-wise symmetric difference.
    friend CascadeAutomorphism operator*(const CascadeAutomorphism& a, const CascadeAutomorphism& b) {
        if (!(a.forest_ == b.forest_)) {
            throw DomainError("composing automorphisms over different forests");
        }
        RowToggles out = a.toggles_;
        for (const auto& [row, s] : b.toggles_) {
            auto [it, inserted] = out.try_emplace(row, s);
            if (!inserted) {
                it->second ^= s;
                if (it->second.empty()) {
                    out.erase(it);
                }
            }
        }
        return CascadeAutomorphism(a.forest_, std::move(out));
    }

    CascadeAutomorphism& operator*=(const CascadeAutomorphism& b) { return *this = *this * b; }

    /// Flips the entry at (x, i, n) iff n lies in the toggle set of row (x, i).
    Condition operator()(const Condition& q) const {
        Condition::Map out;
        for (const auto& [c, v] : q) {
            auto it = toggles_.find(RowId{c.node, c.row});
            const bool flip = it != toggles_.end() && it->second.contains(c.bit);
            out.emplace_hint(out.end(), c, v != flip);
        }
        return Condition(std::move(out));
    }

    friend bool operator==(const CascadeAutomorphism& a, const CascadeAutomorphism& b) {
        return a.toggles_ == b.toggles_ && a.forest_ == b.forest_;
    }

private:
    CascadeAutomorphism(PredecessorForest forest, RowToggles toggles)
        : forest_(std::move(forest)), toggles_(std::move(toggles)) {}

    PredecessorForest forest_;
    RowToggles toggles_;
};

inline CascadeAutomorphism generator(const PredecessorForest& forest, NodeId x, Row i, const ToggleSet& s) {
    return CascadeAutomorphism::generator(forest, x, i, s);
}

inline CascadeAutomorphism compose(const CascadeAutomorphism& a, const CascadeAutomorphism& b) {
    return a * b;
}

inline Condition apply(const CascadeAutomorphism& tau, const Condition& q) { return tau(q); }

/// C(q, beta, i): bits at which q constrains row (beta, i) or a successor row.
inline BitSet shield_set(const Condition& q, NodeId beta, Row i, const PredecessorForest& forest) {
    forest.check_node(beta);
    const auto succ = forest.children(beta);
    BitSet bits;
    for (const auto& [c, v] : q) {
        if (c.row != i) {
            continue;
        }
        if (c.node == beta || std::binary_search(succ.begin(), succ.end(), c.node)) {
            bits.insert(c.bit);
        }
    }
    return bits;
}

/// Membership in Fix(A): no row over A is toggled.
inline bool fixes_rows_over(const CascadeAutomorphism& tau, const Window& support) {
    if (!(tau.forest() == support.forest())) {
        throw DomainError("automorphism and window live over different forests");
    }
    for (const auto& [row, s] : tau.row_toggles()) {
        if (support.contains(row.node)) {
            return false;
        }
    }
    return true;
}

/// Recovers a generator word whose product is `tau`. Per row index, the
/// cofinite-flag pattern is solved once with full generators, then each bit of
/// the remaining finite pattern with single-bit generators, both through the
/// star-span solver on the window of toggled nodes.
inline std::vector<GeneratorSpec> factorize(const CascadeAutomorphism& tau) {
    const auto& forest = tau.forest();
    std::map<Row, NodeSet> nodes_per_row;
    for (const auto& [row, s] : tau.row_toggles()) {
        nodes_per_row[row.row].insert(row.node);
    }

    std::vector<GeneratorSpec> word;
    for (const auto& [row, nodes] : nodes_per_row) {
        // Generators may spill onto successor rows outside the closure; the
        // full universe is closed under successors, so work there.
        NodeSet universe;
        for (NodeId x = 0; x < forest.size(); ++x) {
            universe.insert(x);
        }
        const Window window(forest, universe);

        F2Vector tail(window);
        for (NodeId x : nodes) {
            tail.set(x, tau.toggles_at(x, row).is_cofinite());
        }
        std::map<NodeId, ToggleSet> residual;
        for (NodeId x : solve_star_span(window, tail)) {
            word.push_back({x, row, ToggleSet::everything()});
            residual[x] ^= ToggleSet::everything();
            for (NodeId y : forest.children(x)) {
                residual[y] ^= ToggleSet::everything();
            }
        }
        BitSet bits;
        for (NodeId x : nodes) {
            residual[x] ^= tau.toggles_at(x, row);
        }
        for (const auto& [x, s] : residual) {
            if (s.is_cofinite()) {
                throw std::logic_error("tail pattern not cancelled by star-span solution");
            }
            bits.insert(s.exceptions().begin(), s.exceptions().end());
        }
        for (Bit n : bits) {
            F2Vector pattern(window);
            for (const auto& [x, s] : residual) {
                pattern.set(x, s.contains(n));
            }
            for (NodeId x : solve_star_span(window, pattern)) {
                word.push_back({x, row, ToggleSet::single(n)});
            }
        }
    }
    return word;
}

inline CascadeAutomorphism product(const PredecessorForest& forest, const std::vector<GeneratorSpec>& word) {
    auto result = CascadeAutomorphism::identity(forest);
    for (const auto& g : word) {
        result *= generator(forest, g.node, g.row, g.toggle);
    }
    return result;
}

/// Builds pi in Fix(A) with pi(p') = q' on the padded common domain.
///
/// K is the rho-closure of the non-A nodes mentioned by p' or q'. K may share
/// nodes with A (predecessors of non-A nodes can lie in A), but the
/// difference vectors vanish on A, and back-substitution runs parents first,
/// so the star-span coefficients on K n A come out zero.
inline CascadeAutomorphism transport(const Condition& p, const Condition& q, const Window& support) {
    const auto& forest = support.forest();
    const auto [pp, qq] = pad_common_domain(p, q);

    NodeSet outside;
    for (const auto& [c, v] : pp) {
        forest.check_node(c.node);
        if (support.contains(c.node)) {
            if (qq.get(c) != v) {
                throw PreconditionError("conditions disagree over the support at node " +
                                        std::to_string(c.node) + ", row " + std::to_string(c.row) +
                                        ", bit " + std::to_string(c.bit));
            }
        } else {
            outside.insert(c.node);
        }
    }

    auto pi = CascadeAutomorphism::identity(forest);
    if (outside.empty()) {
        return pi;
    }
    const Window window = rho_closure(forest, outside);

    std::map<std::pair<Row, Bit>, F2Vector> differences;
    for (const auto& [c, v] : pp) {
        if (support.contains(c.node) || v == *qq.get(c)) {
            continue;
        }
        auto [it, fresh] = differences.try_emplace({c.row, c.bit}, window);
        it->second.set(c.node, true);
    }
    for (const auto& [key, diff] : differences) {
        for (NodeId x : solve_star_span(window, diff)) {
            if (support.contains(x)) {
                throw std::logic_error("star-span coefficient landed on the support");
            }
            pi *= generator(forest, x, key.first, ToggleSet::single(key.second));
        }
    }
    return pi;
}

}  // namespace cascade
