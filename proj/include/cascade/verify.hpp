#pragma once

// Seeded verification suites, one per implemented statement. Each suite
// re-checks the library's outputs against brute-force recomputation and
// reports failures; `cascade verify <id>` is a thin front end.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cascade/automorphism.hpp"
#include "cascade/box.hpp"
#include "cascade/coding.hpp"
#include "cascade/condition.hpp"
#include "cascade/errors.hpp"
#include "cascade/f2linalg.hpp"
#include "cascade/forest.hpp"
#include "cascade/io.hpp"
#include "cascade/names.hpp"
#include "cascade/orbits.hpp"
#include "cascade/sampling.hpp"
#include "cascade/selectors.hpp"

namespace cascade {

struct BoxShape {
    std::size_t nodes = 0;
    Row rows = 0;
    Bit bits = 0;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::optional<std::size_t> trials;
    bool exhaustive = false;
    std::optional<std::size_t> max_window;
    std::optional<std::size_t> dim;
    std::optional<BoxShape> box;
};

struct VerificationReport {
    std::string lemma;
    std::size_t trials = 0;
    bool exhaustive = false;
    std::size_t failure_count = 0;
    std::vector<std::string> failures;  // first few messages
    std::uint64_t seed = 0;
    double elapsed_ms = 0;

    bool ok() const noexcept { return failure_count == 0; }

    void fail(std::string message) {
        ++failure_count;
        if (failures.size() < 20) {
            failures.push_back(std::move(message));
        }
    }

    std::string summary_line() const {
        std::ostringstream out;
        out << "lemma=" << lemma << " trials=" << trials << " exhaustive=" << (exhaustive ? "true" : "false")
            << " failures=" << failure_count << " seed=" << seed << " elapsed_ms=" << static_cast<long long>(elapsed_ms);
        return out.str();
    }

    std::string to_text() const {
        std::ostringstream out;
        out << "[" << (ok() ? "ok" : "FAILED") << "] " << lemma << ": " << trials << " trials"
            << (exhaustive ? " (exhaustive)" : "") << ", " << failure_count << " failures\n";
        for (const auto& f : failures) {
            out << "  - " << f << '\n';
        }
        out << summary_line() << '\n';
        return out.str();
    }
};

class UnknownVerificationError : public DomainError {
public:
    using DomainError::DomainError;
};

inline const std::vector<std::string_view>& verification_ids() {
    static const std::vector<std::string_view> ids{"starspan", "shield",    "fresh",  "abelian", "transport",
                                                   "decision", "normalize", "code",   "odd-fixed", "dyadic",
                                                   "selector", "lift",      "swap"};
    return ids;
}

namespace detail {

// Rank over F2 by plain Gaussian elimination on 64-bit rows (|K| <= 64).
inline std::size_t gf2_rank(std::vector<std::uint64_t> rows) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 64 && rank < rows.size(); ++col) {
        const std::uint64_t bit = std::uint64_t{1} << col;
        auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                                  [&](std::uint64_t r) { return r & bit; });
        if (pivot == rows.end()) {
            continue;
        }
        std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(rank), pivot);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && (rows[r] & bit)) {
                rows[r] ^= rows[rank];
            }
        }
        ++rank;
    }
    return rank;
}

// Star of x inside K read directly off the predecessor map, as a bitmask over
// positions in K's ascending order.
inline std::uint64_t star_mask(const Window& k, NodeId x) {
    std::uint64_t mask = std::uint64_t{1} << k.index_of(x);
    for (NodeId y : k.nodes()) {
        if (y != 0 && k.forest().pred(y) == x) {
            mask |= std::uint64_t{1} << k.index_of(y);
        }
    }
    return mask;
}

inline std::uint64_t vector_mask(const F2Vector& v) {
    std::uint64_t mask = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v.at(k)) {
            mask |= std::uint64_t{1} << k;
        }
    }
    return mask;
}

inline bool fixes_support_directly(const CascadeAutomorphism& tau, const Window& a) {
    return std::none_of(tau.row_toggles().begin(), tau.row_toggles().end(),
                        [&](const auto& entry) { return a.contains(entry.first.node); });
}

// tau(q) computed coordinate by coordinate from a generator word.
inline Condition apply_word(const PredecessorForest& forest, const std::vector<GeneratorSpec>& word,
                            const Condition& q) {
    Condition out = q;
    for (const auto& [c, v] : q) {
        bool flip = false;
        for (const auto& g : word) {
            if (g.row != c.row || !g.toggle.contains(c.bit)) {
                continue;
            }
            if (c.node == g.node || (c.node != 0 && forest.pred(c.node) == g.node)) {
                flip = !flip;
            }
        }
        out.set(c, v != flip);
    }
    return out;
}

inline std::string describe(const Condition& q) { return format_packet(q); }

using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------

inline void verify_starspan(const VerifyOptions& opt, VerificationReport& rep) {
    const std::size_t max_window = std::min<std::size_t>(opt.max_window.value_or(12), 20);
    const std::size_t forests = opt.trials.value_or(200);
    const std::size_t full_sweep = opt.exhaustive ? max_window : std::min<std::size_t>(max_window, 10);
    rep.exhaustive = opt.exhaustive || max_window <= 10;
    Rng rng(opt.seed);
    for (std::size_t t = 0; t < forests; ++t) {
        const auto forest = random_forest(max_window + 4, rng());
        const auto k = random_window(forest, 1 + uniform_index(rng, max_window), rng);
        ++rep.trials;
        const auto m = star_matrix(k);
        if (!m.is_upper_unitriangular()) {
            rep.fail("star matrix not upper unitriangular on window {" + format_nodes(k.nodes()) + "}");
        }
        std::vector<std::uint64_t> cols;
        for (NodeId x : k.nodes()) {
            cols.push_back(star_mask(k, x));
        }
        if (gf2_rank(cols) != k.size()) {
            rep.fail("star vectors dependent on window {" + format_nodes(k.nodes()) + "}");
        }
        auto check_target = [&](std::uint64_t pattern) {
            F2Vector target(k);
            for (std::size_t j = 0; j < k.size(); ++j) {
                target.set_at(j, (pattern >> j) & 1U);
            }
            const auto s = solve_star_span(k, target);
            std::uint64_t sum = 0;
            for (NodeId x : s) {
                sum ^= star_mask(k, x);
            }
            if (sum != pattern) {
                rep.fail("star-span solution does not reconstruct target " + target.to_string());
            }
            return s;
        };
        if (k.size() <= full_sweep) {
            for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k.size()); ++pattern) {
                check_target(pattern);
            }
        } else {
            for (int r = 0; r < 256; ++r) {
                check_target(rng() & ((std::uint64_t{1} << k.size()) - 1));
            }
        }
        if (k.size() <= 6) {
            // Uniqueness: distinct coefficient sets give distinct sums.
            std::set<std::uint64_t> sums;
            for (std::uint64_t s = 0; s < (std::uint64_t{1} << k.size()); ++s) {
                std::uint64_t sum = 0;
                for (std::size_t j = 0; j < k.size(); ++j) {
                    if ((s >> j) & 1U) {
                        sum ^= cols[j];
                    }
                }
                sums.insert(sum);
            }
            if (sums.size() != (std::size_t{1} << k.size())) {
                rep.fail("coefficient sets not unique on window {" + format_nodes(k.nodes()) + "}");
            }
        }
    }
}

inline void verify_shield(const VerifyOptions& opt, VerificationReport& rep) {
    const std::size_t trials = opt.trials.value_or(1000);
    Rng rng(opt.seed);
    auto check = [&](const PredecessorForest& forest, const Condition& q, NodeId beta, Row i, const ToggleSet& s) {
        ++rep.trials;
        const auto c = shield_set(q, beta, i, forest);
        if (!s.disjoint_from(c) || s.empty()) {
            return;
        }
        const auto tau = generator(forest, beta, i, s);
        if (!(tau(q) == q) || !(apply_word(forest, {{beta, i, s}}, q) == q)) {
            rep.fail("shielded generator moved q = " + describe(q) + " at beta=" + std::to_string(beta) +
                     " s=" + s.to_string());
        }
    };
    for (std::size_t t = 0; t < trials; ++t) {
        const auto forest = random_forest(6, rng());
        const auto box = CoordinateBox::full(forest, 3, 6);
        const auto q = random_condition(box, 8, rng);
        const auto beta = static_cast<NodeId>(uniform_index(rng, forest.size()));
        const auto i = static_cast<Row>(uniform_index(rng, 3));
        check(forest, q, beta, i, random_toggle_avoiding(shield_set(q, beta, i, forest), 8, rng));
    }
    // Exhaustive: every condition on every box of at most 8 coordinates in
    // these shapes, every centre, every toggle pattern on bits 0..2.
    const std::vector<BoxShape> shapes{{4, 1, 2}, {2, 2, 2}, {2, 1, 4}, {3, 1, 2}};
    for (const auto& shape : shapes) {
        for (const auto& forest : all_forests(shape.nodes)) {
            const auto box = CoordinateBox::full(forest, shape.rows, shape.bits);
            std::uint64_t total = 1;
            for (std::size_t j = 0; j < box.size(); ++j) {
                total *= 3;
            }
            for (std::uint64_t code = 0; code < total; ++code) {
                Condition q;
                std::uint64_t rest = code;
                for (std::size_t j = 0; j < box.size(); ++j, rest /= 3) {
                    if (rest % 3 != 0) {
                        q.set(box.coordinate_at(j), rest % 3 == 2);
                    }
                }
                for (NodeId beta = 0; beta < forest.size(); ++beta) {
                    const auto c = shield_set(q, beta, 0, forest);
                    for (std::uint32_t mask = 1; mask < 8; ++mask) {
                        std::vector<Bit> bits;
                        for (Bit n = 0; n < 4; ++n) {
                            if ((mask >> n) & 1U) {
                                bits.push_back(n);
                            }
                        }
                        const auto fin = ToggleSet::finite(bits);
                        if (fin.disjoint_from(c)) {
                            check(forest, q, beta, 0, fin);
                        }
                        std::vector<Bit> exceptions(c.begin(), c.end());
                        exceptions.insert(exceptions.end(), bits.begin(), bits.end());
                        check(forest, q, beta, 0, ToggleSet::cofinite(exceptions));
                    }
                }
            }
        }
    }
}

inline void verify_fresh(const VerifyOptions& opt, VerificationReport& rep) {
    const std::size_t max_universe = std::min<std::size_t>(opt.max_window.value_or(6), 8);
    rep.exhaustive = true;
    for (std::size_t n = 1; n <= max_universe; ++n) {
        for (const auto& forest : all_forests(n)) {
            for (const auto& a : closed_subsets(forest)) {
                ++rep.trials;
                std::set<NodeId> blocked = a.as_set();
                for (NodeId x : a.nodes()) {
                    if (x != 0) {
                        blocked.insert(forest.pred(x));
                    }
                }
                const std::size_t free = n - blocked.size();
                const std::string where = "A={" + format_nodes(a.nodes()) + "} N=" + std::to_string(n);
                if (free < 2) {
                    try {
                        (void)fresh_separation(a);
                        rep.fail("expected capacity error for " + where);
                    } catch (const CapacityError&) {
                    }
                    continue;
                }
                const auto [beta, gamma] = fresh_separation(a);
                bool ok = !a.contains(beta) && !a.contains(gamma) && beta != gamma;
                for (NodeId y = 1; y < n; ++y) {
                    if (forest.pred(y) == beta && (y == gamma || a.contains(y))) {
                        ok = false;
                    }
                }
                if (!ok) {
                    rep.fail("separation clauses fail for " + where);
                }
            }
        }
    }
}

inline void verify_abelian(const VerifyOptions& opt, VerificationReport& rep) {
    const std::size_t trials = opt.trials.value_or(500);
    Rng rng(opt.seed);
    for (std::size_t t = 0; t < trials; ++t) {
        ++rep.trials;
        const auto forest = random_forest(2 + uniform_index(rng, 8), rng());
        auto random_word = [&] {
            std::vector<GeneratorSpec> word;
            const std::size_t len = 1 + uniform_index(rng, 6);
            while (word.size() < len) {
                auto s = random_toggle(6, rng);
                if (!s.empty()) {
                    word.push_back({static_cast<NodeId>(uniform_index(rng, forest.size())),
                                    static_cast<Row>(uniform_index(rng, 3)), s});
                }
            }
            return word;
        };
        const auto wa = random_word();
        const auto wb = random_word();
        const auto a = product(forest, wa);
        const auto b = product(forest, wb);
        if (!(a * b == b * a)) {
            rep.fail("products do not commute");
        }
        if (!(a * a).is_identity()) {
            rep.fail("a product is not self-inverse");
        }
        auto reversed = wa;
        std::reverse(reversed.begin(), reversed.end());
        if (!(product(forest, reversed) == a)) {
            rep.fail("reordering a generator word changed the product");
        }
        if (!(product(forest, factorize(a)) == a)) {
            rep.fail("factorization does not reproduce the element");
        }
        // Action on conditions agrees with the word, coordinate by coordinate.
        const auto box = CoordinateBox::full(forest, 3, 8);
        const auto q = random_condition(box, 10, rng);
        if (!(a(q) == apply_word(forest, wa, q))) {
            rep.fail("normal-form action differs from the generator word on " + describe(q));
        }
        // Fix(A) is closed under products.
        Rng sub(rng());
        const auto support = random_window(forest, uniform_index(sub, forest.size() + 1), sub);
        if (fixes_rows_over(a, support) && fixes_rows_over(b, support) && !fixes_rows_over(a * b, support)) {
            rep.fail("Fix(A) not closed under products");
        }
    }
    // Exhaustive: every generator outside a rho-closed A fixes A (universes <= 6).
    for (std::size_t n = 1; n <= 6; ++n) {
        for (const auto& forest : all_forests(n)) {
            for (const auto& support : closed_subsets(forest)) {
                for (NodeId x = 0; x < n; ++x) {
                    if (support.contains(x)) {
                        continue;
                    }
                    ++rep.trials;
                    const auto tau = generator(forest, x, 0, ToggleSet::everything());
                    if (!fixes_rows_over(tau, support) || !fixes_support_directly(tau, support)) {
                        rep.fail("fresh generator at " + std::to_string(x) + " touches A");
                    }
                }
            }
        }
    }
}

inline void verify_transport(const VerifyOptions& opt, VerificationReport& rep) {
    const std::size_t trials = opt.trials.value_or(500);
    Rng rng(opt.seed);
    for (std::size_t t = 0; t < trials; ++t) {
        ++rep.trials;
        const auto forest = random_forest(3 + uniform_index(rng, 6), rng());
        const auto box = CoordinateBox::full(forest, 2, 3);
        const auto support = random_window(forest, uniform_index(rng, forest.size()), rng);
        const auto p = random_condition(box, 8, rng);
        // q agrees with p over A (after padding) and is arbitrary elsewhere.
        Condition q;
        for (const auto& [c, v] : p) {
            if (support.contains(c.node) && (v || coin(rng))) {
                q.set(c, v);
            }
        }
        const auto extra = random_condition(box, 8, rng);
        for (const auto& [c, v] : extra) {
            if (!support.contains(c.node) && q.size() < 8) {
                q.set(c, v);
            }
        }
        const auto pi = transport(p, q, support);
        const auto [pp, qq] = pad_common_domain(p, q);
        if (!fixes_rows_over(pi, support) || !fixes_support_directly(pi, support)) {
            rep.fail("transport left Fix(A) for p=" + describe(p));
        }
        if (!(pi(pp) == qq) || !(apply_word(forest, factorize(pi), pp) == qq)) {
            rep.fail("transport does not map p' to q' for p=" + describe(p) + " q=" + describe(q));
        }
    }
}

inline CoordinateBox box_for(const VerifyOptions& opt, Rng& rng, std::size_t max_coords) {
    if (opt.box) {
        const auto forest = random_forest(opt.box->nodes, rng());
        return CoordinateBox::full(forest, opt.box->rows, opt.box->bits);
    }
    return random_box(rng, max_coords);
}

inline void verify_decision(const VerifyOptions& opt, VerificationReport& rep) {
    const std::size_t trials = opt.trials.value_or(300);
    Rng rng(opt.seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto box = box_for(opt, rng, 14);
        const auto support = random_subwindow(box.nodes(), rng);
        const auto name = random_supported_name(box, support, rng);
        if (!check_support(name, support, box)) {
            rep.fail("generated name not supported");
            continue;
        }
        for (Natural m = 0; m < 4; ++m) {
            // Grow a random condition until it decides m.
            Condition p = random_condition(box, 3, rng);
            while (!decided_value(name, p, m, box)) {
                const auto c = box.coordinate_at(uniform_index(rng, box.size()));
                if (!p.defines(c)) {
                    p.set(c, coin(rng));
                }
            }
            ++rep.trials;
            if (!decision_invariant(name, support, p, m, box)) {
                rep.fail("restriction to A changed the decision of " + std::to_string(m) + " by " + describe(p));
            }
        }
    }
    // A name off the support must be caught.
    const auto forest = PredecessorForest::from_pairs(3, {{1, 0}, {2, 0}});
    const CoordinateBox box(Window(forest, {0, 1, 2}), 1, 1);
    const Window support(forest, {0});
    const Condition p{{{2, 0, 0}, true}};
    const RawName name{{{0, p}}};
    ++rep.trials;
    if (decision_invariant(name, support, p, 0, box)) {
        rep.fail("unsupported name passed decision invariance");
    }
}

// Shared generator for the normalize and code suites.
struct NormalizationCase {
    CoordinateBox box;
    Window support;
    RawName name;
};

inline std::vector<NormalizationCase> normalization_cases(const VerifyOptions& opt, std::size_t count) {
    Rng rng(opt.seed);
    std::vector<NormalizationCase> out;
    while (out.size() < count) {
        auto box = box_for(opt, rng, 14);
        auto support = random_subwindow(box.nodes(), rng);
        auto name = random_supported_name(box, support, rng, 4);
        out.push_back({std::move(box), std::move(support), std::move(name)});
    }
    return out;
}

inline bool same_evaluation_everywhere(const RawName& a, const RawName& b, const CoordinateBox& box,
                                       SweepInfo* info = nullptr) {
    const CompiledName ca(a, box);
    const CompiledName cb(b, box);
    bool same = true;
    const auto sweep = sweep_assignments(box, {}, [&](const Assignment& g) {
        same = ca.members(g) == cb.members(g);
        return same;
    });
    if (info) {
        *info = sweep;
    }
    return same;
}

inline void verify_normalize(const VerifyOptions& opt, VerificationReport& rep) {
    rep.exhaustive = true;
    for (const auto& c : normalization_cases(opt, opt.trials.value_or(100))) {
        ++rep.trials;
        const auto scheme = normalize(c.name, c.support, c.box);
        SweepInfo info;
        if (!same_evaluation_everywhere(c.name, scheme.as_raw_name(), c.box, &info)) {
            rep.fail("normalized scheme evaluates differently over support {" + format_nodes(c.support.nodes()) + "}");
        }
        rep.exhaustive = rep.exhaustive && info.exhaustive;
        // Spot-check the public scheme evaluation against the compiled one.
        Rng rng(opt.seed + rep.trials);
        for (int s = 0; s < 16; ++s) {
            Assignment g(c.box);
            for (std::size_t k = 0; k < c.box.size(); ++k) {
                g.set(k, coin(rng));
            }
            if (evaluate(scheme, g) != evaluate(c.name, g)) {
                rep.fail("scheme evaluation disagrees with the name at a sampled assignment");
            }
        }
        if (!check_support(scheme.as_raw_name(), scheme.support(), c.box)) {
            rep.fail("normalized scheme is not supported by its own support");
        }
    }
}

inline void verify_code(const VerifyOptions& opt, VerificationReport& rep) {
    rep.exhaustive = true;
    for (const auto& c : normalization_cases(opt, opt.trials.value_or(100))) {
        ++rep.trials;
        const auto scheme = normalize(c.name, c.support, c.box);
        const auto code = two_layer_code(scheme, c.box);
        const auto back = decode(code);
        if (!(back == scheme)) {
            rep.fail("decode(code) differs from the scheme");
        }
        SweepInfo info;
        if (!same_evaluation_everywhere(back.as_raw_name(), scheme.as_raw_name(), c.box, &info)) {
            rep.fail("decoded scheme evaluates differently");
        }
        rep.exhaustive = rep.exhaustive && info.exhaustive;
        std::stringstream text;
        write_code(text, code);
        if (!(decode(read_code(text, c.box.forest())) == scheme)) {
            rep.fail("code text round trip changed the scheme");
        }
    }
}

inline std::vector<Permutation> involutions_and_identity(std::size_t n) {
    std::vector<Permutation> out;
    Permutation p = identity_permutation(n);
    do {
        if (compose_permutations(p, p) == identity_permutation(n)) {
            out.push_back(p);
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline void verify_odd_fixed(const VerifyOptions& opt, VerificationReport& rep) {
    const std::size_t max_points = std::min<std::size_t>(opt.max_window.value_or(7), 9);
    rep.exhaustive = true;
    for (std::size_t n = 1; n <= max_points; n += 2) {
        const auto invs = involutions_and_identity(n);
        for (std::size_t a = 0; a < invs.size(); ++a) {
            for (std::size_t b = a; b < invs.size(); ++b) {
                const std::size_t product_order = permutation_order(compose_permutations(invs[a], invs[b]));
                std::optional<FiniteAction> action;
                try {
                    action.emplace(close_group(n, {invs[a], invs[b]}));
                } catch (const CertificateError&) {
                    if (std::has_single_bit(product_order)) {
                        rep.fail("dihedral 2-group rejected");
                    }
                    continue;
                }
                ++rep.trials;
                if (!std::has_single_bit(product_order)) {
                    rep.fail("non-2-group accepted");
                }
                for (const auto& orbit : orbit_partition(*action)) {
                    if (!std::has_single_bit(orbit.size())) {
                        rep.fail("orbit of size " + std::to_string(orbit.size()));
                    }
                }
                const auto x = odd_fixed_point(*action);
                if (invs[a][x] != x || invs[b][x] != x) {
                    rep.fail("reported fixed point " + std::to_string(x) + " moves");
                }
                for (std::uint32_t y = 0; y < x; ++y) {
                    if (invs[a][y] == y && invs[b][y] == y) {
                        rep.fail("fixed point not least");
                    }
                }
            }
        }
    }
}

inline bool invariant_by_brute_force(const TranslationPartition& p) {
    const std::uint32_t size = static_cast<std::uint32_t>(p.labels().size());
    for (std::uint32_t q = 0; q < size; ++q) {
        for (std::uint32_t q2 = 0; q2 < size; ++q2) {
            if (p.label(q) != p.label(q2)) {
                continue;
            }
            for (std::uint32_t v = 0; v < size; ++v) {
                if (p.label(q ^ v) != p.label(q2 ^ v)) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool witness_holds(const TranslationPartition& p, const TranslationWitness& w) {
    return p.label(w.q) == p.label(w.q_prime) && p.label(w.q ^ w.v) != p.label(w.q_prime ^ w.v);
}

// All set partitions of {0..n-1} as restricted growth strings.
inline void for_each_set_partition(std::size_t n, const std::function<void(const std::vector<std::uint32_t>&)>& f) {
    std::vector<std::uint32_t> labels(n, 0);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t pos, std::uint32_t used) {
        if (pos == n) {
            f(labels);
            return;
        }
        for (std::uint32_t l = 0; l <= used && l < n; ++l) {
            labels[pos] = l;
            rec(pos + 1, std::max(used, l + 1));
        }
    };
    if (n == 0) {
        f(labels);
        return;
    }
    labels[0] = 0;
    rec(1, 1);
}

inline void verify_dyadic(const VerifyOptions& opt, VerificationReport& rep) {
    const std::size_t max_dim = std::min<std::size_t>(opt.dim.value_or(3), 4);
    rep.exhaustive = true;
    for (std::size_t d = 0; d <= max_dim; ++d) {
        const std::uint32_t size = 1U << d;
        // Enumerate subspaces as subsets of F2^d containing 0 and closed under +.
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << size); mask += 2) {
            bool closed = true;
            for (std::uint32_t a = 0; a < size && closed; ++a) {
                for (std::uint32_t b = 0; b < size && closed; ++b) {
                    if (((mask >> a) & 1U) && ((mask >> b) & 1U) && !((mask >> (a ^ b)) & 1U)) {
                        closed = false;
                    }
                }
            }
            if (!closed) {
                continue;
            }
            ++rep.trials;
            const std::size_t w_size = static_cast<std::size_t>(std::popcount(mask));
            // Label each coset by its least element, then scramble label ids.
            std::vector<std::uint32_t> labels(size);
            for (std::uint32_t q = 0; q < size; ++q) {
                std::uint32_t least = q;
                for (std::uint32_t w = 0; w < size; ++w) {
                    if ((mask >> w) & 1U) {
                        least = std::min(least, q ^ w);
                    }
                }
                labels[q] = (least * 7919U) ^ 0x55U;
            }
            const TranslationPartition partition(d, labels);
            const auto report = quotient_analysis(partition);
            const std::size_t dim_w = static_cast<std::size_t>(std::countr_zero(w_size));
            if (!report.invariant || report.class_count != (std::size_t{1} << (d - dim_w)) ||
                report.subspace_basis.size() != dim_w || size / w_size != report.class_count) {
                rep.fail("coset partition of a subspace of dimension " + std::to_string(dim_w) + " in F2^" +
                         std::to_string(d) + " misanalysed");
            }
        }
    }
    // Every partition of F2^d (d <= 3) agrees with the cubic brute force; the
    // three-class partitions of F2^2 are all rejected with a valid witness.
    for (std::size_t d = 1; d <= std::min<std::size_t>(max_dim, 3); ++d) {
        for_each_set_partition(std::size_t{1} << d, [&](const std::vector<std::uint32_t>& labels) {
            ++rep.trials;
            const TranslationPartition partition(d, labels);
            const auto report = quotient_analysis(partition);
            const bool expected = invariant_by_brute_force(partition);
            if (report.invariant != expected) {
                rep.fail("invariance verdict differs from brute force in F2^" + std::to_string(d));
            }
            if (!report.invariant && (!report.witness || !witness_holds(partition, *report.witness))) {
                rep.fail("rejection without a valid witness in F2^" + std::to_string(d));
            }
            const std::set<std::uint32_t> classes(labels.begin(), labels.end());
            if (report.invariant && !std::has_single_bit(classes.size())) {
                rep.fail("invariant partition with a non-dyadic class count");
            }
            if (d == 2 && classes.size() == 3 && report.invariant) {
                rep.fail("three-class partition of F2^2 accepted");
            }
        });
    }
}

inline void verify_selector(const VerifyOptions& opt, VerificationReport& rep) {
    const std::size_t trials = opt.trials.value_or(500);
    Rng rng(opt.seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto forest = random_forest(2 + uniform_index(rng, 8), rng());
        const auto w = random_window(forest, 2 + uniform_index(rng, forest.size() - 1), rng);
        if (w.size() < 2) {
            continue;
        }
        std::vector<TraceProfile> profiles;
        std::set<NodeSet> seen;
        while (profiles.size() < 3) {
            NodeSet nodes;
            for (NodeId x : w.nodes()) {
                if (coin(rng)) {
                    nodes.insert(x);
                }
            }
            if (seen.insert(nodes).second) {
                profiles.emplace_back(w, nodes);
            }
        }
        ++rep.trials;
        const auto chosen = profiles[canonical_selector(profiles)];
        // Brute force: the chosen code is <= every other code, position by position.
        for (const auto& other : profiles) {
            for (std::size_t j = 0; j < w.size(); ++j) {
                const NodeId x = w.nodes()[j];
                const bool a = chosen.nodes().contains(x);
                const bool b = other.nodes().contains(x);
                if (a != b) {
                    if (a) {
                        rep.fail("selector did not pick the lexicographically least profile");
                    }
                    break;
                }
            }
        }
        std::vector<std::size_t> perm{0, 1, 2};
        do {
            std::vector<TraceProfile> shuffled{profiles[perm[0]], profiles[perm[1]], profiles[perm[2]]};
            if (!(shuffled[canonical_selector(shuffled)] == chosen)) {
                rep.fail("selector depends on the order of the family");
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        try {
            std::vector<TraceProfile> dup{profiles[0], profiles[0], profiles[1]};
            (void)canonical_selector(dup);
            rep.fail("duplicate profiles accepted");
        } catch (const NotTraceSeparatedError&) {
        }
    }
}

inline void verify_lift(const VerifyOptions&, VerificationReport& rep) {
    rep.exhaustive = true;
    for (std::size_t t_size = 1; t_size <= 4; ++t_size) {
        std::vector<std::uint32_t> sizes(t_size, 1);
        while (true) {
            std::vector<std::set<Element>> members;
            for (auto s : sizes) {
                std::set<Element> a;
                for (Element e = 0; e < s; ++e) {
                    a.insert(e);
                }
                members.push_back(a);
            }
            const IndexedFamily family(members);
            for (std::uint32_t k = 1; k <= 3; ++k) {
                // Every choice map on the product family, as a mixed-radix counter.
                std::vector<std::uint32_t> digit(t_size, 0);
                while (true) {
                    ProductChoice f;
                    for (std::size_t t = 0; t < t_size; ++t) {
                        f.emplace_back(digit[t] / k, digit[t] % k);
                    }
                    ++rep.trials;
                    const auto choice = lift_choice(family, k, f);
                    for (std::size_t t = 0; t < t_size; ++t) {
                        if (!family[t].contains(choice[t]) || choice[t] != f[t].first) {
                            rep.fail("lifted choice invalid");
                        }
                    }
                    std::size_t pos = 0;
                    while (pos < t_size && ++digit[pos] == sizes[pos] * k) {
                        digit[pos++] = 0;
                    }
                    if (pos == t_size) {
                        break;
                    }
                }
            }
            std::size_t pos = 0;
            while (pos < t_size && ++sizes[pos] > 3) {
                sizes[pos++] = 1;
            }
            if (pos == t_size) {
                break;
            }
        }
    }
    // Out-of-product choices are rejected.
    const IndexedFamily family({{0, 1}});
    try {
        (void)lift_choice(family, 2, {{5, 0}});
        rep.fail("choice outside A_t accepted");
    } catch (const DomainError&) {
    }
}

inline void verify_swap(const VerifyOptions& opt, VerificationReport& rep) {
    rep.exhaustive = true;
    Rng rng(opt.seed);
    const std::vector<BoxShape> shapes{{3, 1, 4}, {3, 2, 2}, {4, 1, 3}, {4, 3, 1}, {3, 1, 3}, {4, 1, 2}};
    for (const auto& shape : shapes) {
        for (const auto& forest : all_forests(shape.nodes)) {
            const auto box = CoordinateBox::full(forest, shape.rows, shape.bits);
            for (const auto& support : closed_subsets(forest)) {
                std::vector<Condition> conditions{Condition{}};
                for (int r = 0; r < 2; ++r) {
                    conditions.push_back(random_condition(box, 4, rng));
                }
                for (const auto& q : conditions) {
                    for (Row i = 0; i < shape.rows; ++i) {
                        std::optional<SwapWitness> w;
                        try {
                            w = swap_witness(q, support, i, box);
                        } catch (const CapacityError&) {
                            break;
                        }
                        ++rep.trials;
                        rep.exhaustive = rep.exhaustive && w->certificate.exhaustive;
                        if (!w->certificate.all_pass()) {
                            rep.fail("swap certificate failed:\n" + format_swap_witness(*w));
                        }
                        // Independent recomputation of the certified facts.
                        const std::vector<GeneratorSpec> word{{w->beta, i, w->toggle}};
                        const bool fixed = apply_word(forest, word, q) == q;
                        bool pattern_ok = true;
                        const auto tau = product(forest, word);
                        sweep_assignments(box, {}, [&](const Assignment& g) {
                            const auto h = g.acted_on_by(tau);
                            for (Bit n = 0; n < shape.bits; ++n) {
                                const bool before = g.at({w->beta, i, n}) == g.at({w->gamma, i, n});
                                const bool after = h.at({w->beta, i, n}) == h.at({w->gamma, i, n});
                                if ((before != after) != w->toggle.contains(n)) {
                                    pattern_ok = false;
                                }
                            }
                            return pattern_ok;
                        });
                        if (!fixed || !pattern_ok || w->toggle.is_finite() ||
                            !w->toggle.disjoint_from(w->shield) || !fixes_support_directly(tau, support)) {
                            rep.fail("recomputation disagrees with the swap certificate");
                        }
                    }
                }
            }
            // Both rows toggled together: a generator at the common predecessor
            // of two siblings leaves their equality pattern unchanged.
            for (NodeId b = 1; b < forest.size(); ++b) {
                for (NodeId c = b + 1; c < forest.size(); ++c) {
                    if (forest.pred(b) != forest.pred(c)) {
                        continue;
                    }
                    const auto tau = generator(forest, forest.pred(b), 0, ToggleSet::everything());
                    ++rep.trials;
                    bool same = true;
                    sweep_assignments(box, {}, [&](const Assignment& g) {
                        same = equality_pattern(g, b, c, 0) == equality_pattern(g.acted_on_by(tau), b, c, 0);
                        return same;
                    });
                    if (!same) {
                        rep.fail("both-toggled generator changed an equality pattern");
                    }
                }
            }
        }
    }
}

}  // namespace detail

inline VerificationReport run_verification(std::string_view id, const VerifyOptions& options) {
    using Fn = void (*)(const VerifyOptions&, VerificationReport&);
    static const std::map<std::string_view, Fn> suites{
        {"starspan", detail::verify_starspan},   {"shield", detail::verify_shield},
        {"fresh", detail::verify_fresh},         {"abelian", detail::verify_abelian},
        {"transport", detail::verify_transport}, {"decision", detail::verify_decision},
        {"normalize", detail::verify_normalize}, {"code", detail::verify_code},
        {"odd-fixed", detail::verify_odd_fixed}, {"dyadic", detail::verify_dyadic},
        {"selector", detail::verify_selector},   {"lift", detail::verify_lift},
        {"swap", detail::verify_swap}};
    auto it = suites.find(id);
    if (it == suites.end()) {
        std::string valid;
        for (auto v : verification_ids()) {
            valid += (valid.empty() ? "" : ", ") + std::string(v);
        }
        throw UnknownVerificationError("unknown verification id '" + std::string(id) + "' (valid: " + valid + ")");
    }
    VerificationReport report;
    report.lemma = std::string(id);
    report.seed = options.seed;
    const auto start = detail::Clock::now();
    it->second(options, report);
    report.elapsed_ms = std::chrono::duration<double, std::milli>(detail::Clock::now() - start).count();
    return report;
}

}  // namespace cascade
