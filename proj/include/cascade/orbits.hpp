#pragma once

// Finite 2-group actions and translation-invariant partitions of F2^d.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cascade/errors.hpp"

namespace cascade {

using Permutation = std::vector<std::uint32_t>;

inline Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0U);
    return p;
}

/// (a * b)(x) = a(b(x)).
inline Permutation compose_permutations(const Permutation& a, const Permutation& b) {
    Permutation out(b.size());
    for (std::size_t x = 0; x < b.size(); ++x) {
        out[x] = a[b[x]];
    }
    return out;
}

inline std::size_t permutation_order(const Permutation& p) {
    const auto id = identity_permutation(p.size());
    Permutation power = p;
    std::size_t order = 1;
    while (power != id) {
        power = compose_permutations(p, power);
        ++order;
    }
    return order;
}

/// Cycle notation, fixed points omitted; "()" for the identity.
inline std::string cycle_notation(const Permutation& p) {
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (seen[x] || p[x] == x) {
            continue;
        }
        out += '(';
        for (std::size_t y = x; !seen[y]; y = p[y]) {
            seen[y] = true;
            if (y != x) {
                out += ' ';
            }
            out += std::to_string(y);
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

/// A permutation group of 2-power order, stored as its sorted element list.
class FiniteAction {
public:
    std::size_t set_size() const noexcept { return set_size_; }
    const std::vector<Permutation>& elements() const noexcept { return elements_; }
    std::size_t order() const noexcept { return elements_.size(); }

private:
    FiniteAction(std::size_t n, std::vector<Permutation> elements)
        : set_size_(n), elements_(std::move(elements)) {}

    friend FiniteAction close_group(std::size_t, const std::vector<Permutation>&, std::size_t);

    std::size_t set_size_;
    std::vector<Permutation> elements_;
};

/// Closes the generators under composition. Rejects groups whose order is not
/// a power of 2, naming an element of odd order > 1.
inline FiniteAction close_group(std::size_t set_size, const std::vector<Permutation>& generators,
                                std::size_t max_order = std::size_t{1} << 16) {
    for (const auto& g : generators) {
        if (g.size() != set_size) {
            throw DomainError("generator acts on " + std::to_string(g.size()) + " points, expected " +
                              std::to_string(set_size));
        }
        std::vector<bool> hit(set_size, false);
        for (auto y : g) {
            if (y >= set_size || hit[y]) {
                throw DomainError("generator is not a permutation");
            }
            hit[y] = true;
        }
    }
    std::set<Permutation> group{identity_permutation(set_size)};
    std::deque<Permutation> frontier(group.begin(), group.end());
    while (!frontier.empty()) {
        const Permutation current = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& g : generators) {
            auto next = compose_permutations(g, current);
            if (group.insert(next).second) {
                if (group.size() > max_order) {
                    throw CapacityError("generated group exceeds " + std::to_string(max_order) + " elements");
                }
                frontier.push_back(std::move(next));
            }
        }
    }
    if (!std::has_single_bit(group.size())) {
        for (const auto& g : group) {
            std::size_t order = permutation_order(g);
            if (std::has_single_bit(order)) {
                continue;
            }
            // Strip the 2-part of the order to land on an element of odd order.
            Permutation witness = g;
            while (order % 2 == 0) {
                witness = compose_permutations(witness, witness);
                order /= 2;
            }
            throw CertificateError("not a 2-group: order " + std::to_string(group.size()) + ", element " +
                                   cycle_notation(witness) + " has odd order " + std::to_string(order));
        }
        throw std::logic_error("group order is not a power of 2 yet every element has 2-power order");
    }
    return FiniteAction(set_size, std::vector<Permutation>(group.begin(), group.end()));
}

using Orbit = std::vector<std::uint32_t>;

/// Orbits sorted by least element, each orbit ascending.
inline std::vector<Orbit> orbit_partition(const FiniteAction& action) {
    std::vector<Orbit> orbits;
    std::vector<bool> seen(action.set_size(), false);
    for (std::uint32_t x = 0; x < action.set_size(); ++x) {
        if (seen[x]) {
            continue;
        }
        std::set<std::uint32_t> orbit;
        for (const auto& g : action.elements()) {
            orbit.insert(g[x]);
        }
        for (auto y : orbit) {
            seen[y] = true;
        }
        orbits.emplace_back(orbit.begin(), orbit.end());
    }
    return orbits;
}

/// Least point fixed by the whole group. Exists whenever |S| is odd, since
/// orbit sizes divide |G| and hence are powers of 2.
inline std::uint32_t odd_fixed_point(const FiniteAction& action) {
    if (action.set_size() % 2 == 0) {
        throw PreconditionError("fixed point only guaranteed on sets of odd size");
    }
    for (const auto& orbit : orbit_partition(action)) {
        if (orbit.size() == 1) {
            return orbit.front();
        }
    }
    throw std::logic_error("2-group acting on an odd set without a fixed point");
}

/// A labelling of F2^d. Vector q is encoded as an integer whose bit k is its
/// k-th coordinate.
class TranslationPartition {
public:
    TranslationPartition(std::size_t dimension, std::vector<std::uint32_t> labels)
        : dimension_(dimension), labels_(std::move(labels)) {
        if (dimension > 20) {
            throw DomainError("dimension above 20 not supported");
        }
        if (labels_.size() != (std::size_t{1} << dimension)) {
            throw DomainError("labelling must be total on F2^" + std::to_string(dimension));
        }
    }

    std::size_t dimension() const noexcept { return dimension_; }
    const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }
    std::uint32_t label(std::uint32_t q) const { return labels_.at(q); }

private:
    std::size_t dimension_;
    std::vector<std::uint32_t> labels_;
};

/// label(q) = label(q') but label(q + v) != label(q' + v).
struct TranslationWitness {
    std::uint32_t q = 0;
    std::uint32_t q_prime = 0;
    std::uint32_t v = 0;

    friend bool operator==(const TranslationWitness&, const TranslationWitness&) = default;
};

struct QuotientReport {
    bool invariant = false;
    /// Basis of W = {v : v ~ 0} (only meaningful when invariant).
    std::vector<std::uint32_t> subspace_basis;
    /// 2^(d - dim W) when invariant; number of distinct labels otherwise.
    std::size_t class_count = 0;
    std::optional<TranslationWitness> witness;
};

/// Decides translation invariance without the cubic sweep: invariant iff the
/// class W of 0 is a subspace and the classes are exactly its cosets.
inline QuotientReport quotient_analysis(const TranslationPartition& partition) {
    const std::uint32_t size = static_cast<std::uint32_t>(partition.labels().size());
    QuotientReport report;
    {
        std::set<std::uint32_t> distinct(partition.labels().begin(), partition.labels().end());
        report.class_count = distinct.size();
    }
    const std::uint32_t zero_label = partition.label(0);
    std::vector<std::uint32_t> w_members;
    std::vector<bool> in_w(size, false);
    for (std::uint32_t v = 0; v < size; ++v) {
        if (partition.label(v) == zero_label) {
            w_members.push_back(v);
            in_w[v] = true;
        }
    }

    // Grow span(b_1..b_k) one independent member at a time; the first time the
    // span leaves W we have s, b in W with s + b outside W.
    std::vector<std::uint32_t> basis;
    std::vector<std::uint32_t> span{0};
    std::vector<bool> in_span(size, false);
    in_span[0] = true;
    for (std::uint32_t w : w_members) {
        if (in_span[w]) {
            continue;
        }
        const std::size_t old = span.size();
        for (std::size_t k = 0; k < old; ++k) {
            const std::uint32_t s = span[k] ^ w;
            if (!in_w[s]) {
                report.witness = TranslationWitness{0, span[k], w};
                return report;
            }
            span.push_back(s);
            in_span[s] = true;
        }
        basis.push_back(w);
    }
    // span is now exactly W.

    std::map<std::uint32_t, std::size_t> class_size;
    for (std::uint32_t q = 0; q < size; ++q) {
        ++class_size[partition.label(q)];
        for (std::uint32_t b : basis) {
            if (partition.label(q ^ b) != partition.label(q)) {
                report.witness = TranslationWitness{0, b, q};
                return report;
            }
        }
    }
    for (const auto& [label, count] : class_size) {
        if (count == w_members.size()) {
            continue;
        }
        // The class is a union of at least two W-cosets.
        std::optional<std::uint32_t> first;
        for (std::uint32_t q = 0; q < size; ++q) {
            if (partition.label(q) != label) {
                continue;
            }
            if (!first) {
                first = q;
            } else if (!in_w[*first ^ q]) {
                report.witness = TranslationWitness{*first, q, *first};
                return report;
            }
        }
        throw std::logic_error("oversized class without a second coset");
    }

    report.invariant = true;
    report.subspace_basis = basis;
    report.class_count = std::size_t{1} << (partition.dimension() - basis.size());
    return report;
}

}  // namespace cascade
