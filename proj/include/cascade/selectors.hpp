#pragma once

// Equality patterns between rows, the complement-pair swap witness, canonical
// selectors on trace-separated ternary families, and choice lifting through
// products A_t x [k].

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cascade/automorphism.hpp"
#include "cascade/box.hpp"
#include "cascade/condition.hpp"
#include "cascade/errors.hpp"
#include "cascade/forest.hpp"

namespace cascade {

/// Bit n is 1 iff rows (beta, i) and (gamma, i) agree at n, for n < B.
struct EqualityPattern {
    std::vector<std::uint8_t> agree;

    std::size_t window_bits() const noexcept { return agree.size(); }

    std::string to_string() const {
        std::string s;
        for (auto b : agree) {
            s.push_back(b ? '1' : '0');
        }
        return s;
    }

    friend bool operator==(const EqualityPattern&, const EqualityPattern&) = default;
};

inline EqualityPattern equality_pattern(const Assignment& g, NodeId beta, NodeId gamma, Row i) {
    if (beta == gamma) {
        throw DomainError("equality pattern needs two distinct nodes");
    }
    EqualityPattern pattern;
    pattern.agree.reserve(g.box().bits());
    for (Bit n = 0; n < g.box().bits(); ++n) {
        pattern.agree.push_back(g.at({beta, i, n}) == g.at({gamma, i, n}) ? 1 : 0);
    }
    return pattern;
}

struct SwapCertificate {
    bool condition_fixed = false;  // tau(q) = q
    bool fixes_support = false;    // tau in Fix(A)
    bool pattern_flipped = false;  // E flips exactly on s n box at every swept g
    bool exhaustive = false;
    std::size_t assignments = 0;

    bool all_pass() const noexcept { return condition_fixed && fixes_support && pattern_flipped; }
};

struct SwapWitness {
    NodeId beta = 0;
    NodeId gamma = 0;
    Row row = 0;
    BitSet shield;
    ToggleSet toggle;
    SwapCertificate certificate;
};

/// The generator tau_{beta,i,s} with (beta, gamma) fresh for A and s the
/// complement of the shield of q: it fixes q, fixes every row over A, and
/// exchanges the equality pattern of (beta, gamma) with its complement on s.
inline SwapWitness swap_witness(const Condition& q, const Window& support, Row i, const CoordinateBox& box,
                                const SweepOptions& options = {}) {
    if (!(support.forest() == box.forest())) {
        throw DomainError("support window and coordinate box live over different forests");
    }
    const auto& forest = support.forest();
    const auto [beta, gamma] = fresh_separation(support);
    if (!box.nodes().contains(beta) || !box.nodes().contains(gamma) || i >= box.rows()) {
        throw DomainError("coordinate box does not contain rows (" + std::to_string(beta) + "," +
                          std::to_string(i) + ") and (" + std::to_string(gamma) + "," + std::to_string(i) + ")");
    }

    SwapWitness w;
    w.beta = beta;
    w.gamma = gamma;
    w.row = i;
    w.shield = shield_set(q, beta, i, forest);
    w.toggle = ToggleSet::cofinite({w.shield.begin(), w.shield.end()});
    const auto tau = generator(forest, beta, i, w.toggle);

    w.certificate.condition_fixed = tau(q) == q;
    w.certificate.fixes_support = fixes_rows_over(tau, support);
    bool flipped = true;
    const SweepInfo info = sweep_assignments(box, options, [&](const Assignment& g) {
        const auto before = equality_pattern(g, beta, gamma, i);
        const auto after = equality_pattern(g.acted_on_by(tau), beta, gamma, i);
        for (Bit n = 0; n < box.bits(); ++n) {
            if ((before.agree[n] != after.agree[n]) != w.toggle.contains(n)) {
                flipped = false;
                return false;
            }
        }
        return true;
    });
    w.certificate.pattern_flipped = flipped;
    w.certificate.exhaustive = info.exhaustive;
    w.certificate.assignments = info.assignments;
    return w;
}

/// Text block consumed by `cascade demo no-selector`.
inline std::string format_swap_witness(const SwapWitness& w) {
    auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
    std::ostringstream out;
    out << "swap-witness\n";
    out << "beta: " << w.beta << '\n';
    out << "gamma: " << w.gamma << '\n';
    out << "row: " << w.row << '\n';
    out << "shield: {";
    bool first = true;
    for (Bit n : w.shield) {
        out << (first ? "" : ",") << n;
        first = false;
    }
    out << "}\n";
    out << "toggle: " << w.toggle.to_string() << '\n';
    out << "condition-fixed: " << verdict(w.certificate.condition_fixed) << '\n';
    out << "fixes-support: " << verdict(w.certificate.fixes_support) << '\n';
    out << "pattern-flip: " << verdict(w.certificate.pattern_flipped) << " (" << w.certificate.assignments
        << " assignments, " << (w.certificate.exhaustive ? "exhaustive" : "sampled") << ")\n";
    return out.str();
}

/// The nodes of a window W at which one member of a ternary family is supported.
class TraceProfile {
public:
    TraceProfile(Window window, NodeSet nodes) : window_(std::move(window)), nodes_(std::move(nodes)) {
        for (NodeId x : nodes_) {
            if (!window_.contains(x)) {
                throw DomainError("profile node " + std::to_string(x) + " outside its trace window");
            }
        }
    }

    const Window& window() const noexcept { return window_; }
    const NodeSet& nodes() const noexcept { return nodes_; }

    /// Characteristic sequence in the ascending order of W.
    std::vector<std::uint8_t> code() const {
        std::vector<std::uint8_t> c;
        c.reserve(window_.size());
        for (NodeId x : window_.nodes()) {
            c.push_back(nodes_.contains(x) ? 1 : 0);
        }
        return c;
    }

    friend bool operator==(const TraceProfile& a, const TraceProfile& b) {
        return a.nodes_ == b.nodes_ && a.window_ == b.window_;
    }

private:
    Window window_;
    NodeSet nodes_;
};

/// Index of the profile with the lexicographically least code.
inline std::size_t canonical_selector(std::span<const TraceProfile> profiles) {
    if (profiles.size() != 3) {
        throw DomainError("canonical selector expects exactly three profiles");
    }
    for (const auto& p : profiles) {
        if (!(p.window() == profiles[0].window())) {
            throw DomainError("profiles over different trace windows");
        }
    }
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = a + 1; b < 3; ++b) {
            if (profiles[a].nodes() == profiles[b].nodes()) {
                throw NotTraceSeparatedError("profiles " + std::to_string(a) + " and " + std::to_string(b) +
                                             " coincide");
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t j = 1; j < 3; ++j) {
        if (profiles[j].code() < profiles[best].code()) {
            best = j;
        }
    }
    return best;
}

using Element = std::uint32_t;

/// Family {A_t : t in T}, T = {0..size-1}, each A_t a nonempty finite set.
class IndexedFamily {
public:
    explicit IndexedFamily(std::vector<std::set<Element>> members) : members_(std::move(members)) {
        for (std::size_t t = 0; t < members_.size(); ++t) {
            if (members_[t].empty()) {
                throw DomainError("member " + std::to_string(t) + " of the family is empty");
            }
        }
    }

    std::size_t size() const noexcept { return members_.size(); }
    const std::set<Element>& operator[](std::size_t t) const { return members_.at(t); }

private:
    std::vector<std::set<Element>> members_;
};

/// A choice (a_t, j_t) in A_t x [k] for every t.
using ProductChoice = std::vector<std::pair<Element, std::uint32_t>>;

/// Projects a choice function on {A_t x [k]} to one on {A_t}.
inline std::vector<Element> lift_choice(const IndexedFamily& family, std::uint32_t k, const ProductChoice& f) {
    if (k == 0) {
        throw DomainError("product with [0] is empty");
    }
    if (f.size() != family.size()) {
        throw DomainError("choice map must be defined on every index");
    }
    std::vector<Element> choice;
    choice.reserve(f.size());
    for (std::size_t t = 0; t < f.size(); ++t) {
        const auto [a, j] = f[t];
        if (!family[t].contains(a) || j >= k) {
            throw DomainError("f(" + std::to_string(t) + ") = (" + std::to_string(a) + "," + std::to_string(j) +
                              ") lies outside A_t x [k]");
        }
        choice.push_back(a);
    }
    return choice;
}

}  // namespace cascade
