#pragma once

// Rank-1 names under finite semantics. A total assignment on a coordinate box
// plays the role of a generic filter: m belongs to the evaluation of a name
// at g iff some condition paired with m is a sub-function of g.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cascade/automorphism.hpp"
#include "cascade/box.hpp"
#include "cascade/condition.hpp"
#include "cascade/errors.hpp"
#include "cascade/forest.hpp"

namespace cascade {

using Natural = std::uint32_t;
using NaturalSet = std::set<Natural>;

/// Default truncation of the naturals named by a rank-1 name.
inline constexpr Natural kDefaultNaturalBound = 8;

/// An arbitrary finite set of pairs (m, p).
struct RawName {
    std::vector<std::pair<Natural, Condition>> pairs;

    friend bool operator==(const RawName&, const RawName&) = default;
};

/// A rho-closed support A together with families C_m of packets over A.
class PacketScheme {
public:
    using Family = std::set<Packet>;

    PacketScheme(Window support, std::map<Natural, Family> families)
        : support_(std::move(support)), families_(std::move(families)) {
        for (auto it = families_.begin(); it != families_.end();) {
            for (const auto& r : it->second) {
                for (NodeId x : r.node_support()) {
                    if (!support_.contains(x)) {
                        throw DomainError("packet in family " + std::to_string(it->first) +
                                          " mentions node " + std::to_string(x) + " outside the support");
                    }
                }
            }
            it = it->second.empty() ? families_.erase(it) : std::next(it);
        }
    }

    const Window& support() const noexcept { return support_; }
    const std::map<Natural, Family>& families() const noexcept { return families_; }

    const Family& family(Natural m) const {
        static const Family empty;
        auto it = families_.find(m);
        return it == families_.end() ? empty : it->second;
    }

    std::size_t packet_count() const {
        std::size_t n = 0;
        for (const auto& [m, f] : families_) {
            n += f.size();
        }
        return n;
    }

    RawName as_raw_name() const {
        RawName name;
        for (const auto& [m, family] : families_) {
            for (const auto& r : family) {
                name.pairs.emplace_back(m, r.condition());
            }
        }
        return name;
    }

    friend bool operator==(const PacketScheme& a, const PacketScheme& b) {
        return a.support_ == b.support_ && a.families_ == b.families_;
    }

private:
    Window support_;
    std::map<Natural, Family> families_;
};

namespace detail {

/// A name with its conditions resolved to box indices, for fast sweeps.
class CompiledName {
public:
    CompiledName(const RawName& name, const CoordinateBox& box) {
        for (const auto& [m, p] : name.pairs) {
            naturals_.push_back(m);
        }
        std::sort(naturals_.begin(), naturals_.end());
        naturals_.erase(std::unique(naturals_.begin(), naturals_.end()), naturals_.end());
        for (const auto& [m, p] : name.pairs) {
            Clause clause;
            clause.slot = static_cast<std::size_t>(
                std::lower_bound(naturals_.begin(), naturals_.end(), m) - naturals_.begin());
            for (const auto& [c, v] : p) {
                clause.literals.emplace_back(box.index_of(c), v);
                mentioned_.insert(box.index_of(c));
            }
            clauses_.push_back(std::move(clause));
        }
    }

    const std::vector<Natural>& naturals() const noexcept { return naturals_; }
    const std::set<std::size_t>& mentioned() const noexcept { return mentioned_; }

    /// hits[k] = 1 iff naturals()[k] is in the evaluation at g.
    void evaluate(const Assignment& g, std::vector<std::uint8_t>& hits) const {
        hits.assign(naturals_.size(), 0);
        for (const auto& clause : clauses_) {
            if (hits[clause.slot]) {
                continue;
            }
            bool ok = true;
            for (const auto& [idx, v] : clause.literals) {
                if (g[idx] != v) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                hits[clause.slot] = 1;
            }
        }
    }

    NaturalSet members(const Assignment& g) const {
        std::vector<std::uint8_t> hits;
        evaluate(g, hits);
        NaturalSet out;
        for (std::size_t k = 0; k < hits.size(); ++k) {
            if (hits[k]) {
                out.insert(naturals_[k]);
            }
        }
        return out;
    }

    bool contains(const Assignment& g, Natural m) const {
        for (std::size_t c = 0; c < clauses_.size(); ++c) {
            if (naturals_[clauses_[c].slot] != m) {
                continue;
            }
            bool ok = true;
            for (const auto& [idx, v] : clauses_[c].literals) {
                if (g[idx] != v) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                return true;
            }
        }
        return false;
    }

private:
    struct Clause {
        std::size_t slot = 0;
        std::vector<std::pair<std::size_t, bool>> literals;
    };
    std::vector<Natural> naturals_;
    std::vector<Clause> clauses_;
    std::set<std::size_t> mentioned_;
};

inline void require_same_forest(const Window& support, const CoordinateBox& box) {
    if (!(support.forest() == box.forest())) {
        throw DomainError("support window and coordinate box live over different forests");
    }
}

}  // namespace detail

inline NaturalSet evaluate(const RawName& name, const Assignment& g) {
    return detail::CompiledName(name, g.box()).members(g);
}

inline NaturalSet evaluate(const PacketScheme& scheme, const Assignment& g) {
    NaturalSet out;
    for (const auto& [m, family] : scheme.families()) {
        for (const auto& r : family) {
            if (g.extends(r.condition())) {
                out.insert(m);
                break;
            }
        }
    }
    return out;
}

/// Outcome of a support check. `exhaustive` is false when the verdict rests
/// on `assignments_checked` sampled assignments (box above `sampling_threshold`).
struct SupportReport {
    bool supported = true;
    bool exhaustive = true;
    std::size_t assignments_checked = 0;
    std::size_t sampling_threshold = 0;
    std::optional<GeneratorSpec> violating_generator;
    std::optional<Condition> violating_assignment;

    explicit operator bool() const noexcept { return supported; }
};

/// Checks that every single-bit generator tau_{x,i,{n}} with x in box \ A
/// leaves the evaluation of the name unchanged at every assignment. These
/// generators generate the part of Fix(A) visible inside the box.
inline SupportReport check_support(const RawName& name, const Window& support, const CoordinateBox& box,
                                   const SweepOptions& options = {}) {
    detail::require_same_forest(support, box);
    const detail::CompiledName compiled(name, box);

    struct Flip {
        GeneratorSpec generator;
        std::vector<std::size_t> indices;
    };
    std::vector<Flip> flips;
    const auto& forest = box.forest();
    for (NodeId x : box.nodes().nodes()) {
        if (support.contains(x)) {
            continue;
        }
        for (Row i = 0; i < box.rows(); ++i) {
            for (Bit n = 0; n < box.bits(); ++n) {
                Flip f{{x, i, ToggleSet::single(n)}, {box.index_of({x, i, n})}};
                for (NodeId y : forest.children(x)) {
                    if (box.nodes().contains(y)) {
                        f.indices.push_back(box.index_of({y, i, n}));
                    }
                }
                flips.push_back(std::move(f));
            }
        }
    }

    SupportReport report;
    report.sampling_threshold = options.exhaustive_limit;
    if (compiled.naturals().empty() || flips.empty()) {
        report.assignments_checked = 0;
        return report;
    }

    std::vector<std::uint8_t> base;
    std::vector<std::uint8_t> moved;
    const SweepInfo info = sweep_assignments(box, options, [&](const Assignment& g) {
        compiled.evaluate(g, base);
        Assignment h = g;
        for (const auto& f : flips) {
            for (std::size_t idx : f.indices) {
                h.flip(idx);
            }
            compiled.evaluate(h, moved);
            for (std::size_t idx : f.indices) {
                h.flip(idx);
            }
            if (moved != base) {
                report.supported = false;
                report.violating_generator = f.generator;
                report.violating_assignment = g.as_condition();
                return false;
            }
        }
        return true;
    });
    report.exhaustive = info.exhaustive;
    report.assignments_checked = info.assignments;
    return report;
}

/// Whether every total extension of p agrees on "m in x"; nullopt if not.
inline std::optional<bool> decided_value(const RawName& name, const Condition& p, Natural m,
                                         const CoordinateBox& box) {
    const detail::CompiledName compiled(name, box);
    bool seen_in = false;
    bool seen_out = false;
    for_each_extension(box, p, [&](const Assignment& g) {
        (compiled.contains(g, m) ? seen_in : seen_out) = true;
    });
    if (seen_in && seen_out) {
        return std::nullopt;
    }
    return seen_in;
}

/// Given that p decides m, does its restriction to the rows over A decide m
/// the same way? Always true for names supported by A.
inline bool decision_invariant(const RawName& name, const Window& support, const Condition& p, Natural m,
                               const CoordinateBox& box) {
    detail::require_same_forest(support, box);
    const auto value = decided_value(name, p, m, box);
    if (!value) {
        throw PreconditionError("condition does not decide membership of " + std::to_string(m));
    }
    const auto restricted = decided_value(name, p.restricted_to(support.as_set()), m, box);
    return restricted.has_value() && *restricted == *value;
}

/// Rewrites a name supported by A as a packet scheme over A with the same
/// evaluation at every assignment of the box.
///
/// Total assignments are the atoms that replace a maximal antichain: for each
/// m, C_m collects the restrictions to the rows over A of the assignments
/// placing m in the name. Restrictions are trimmed to the coordinates the name
/// mentions. Assignments are enumerated over the mentioned coordinates only
/// (the rest held at 0), which produces the same restriction sets as a sweep
/// over the whole box.
inline PacketScheme normalize(const RawName& name, const Window& support, const CoordinateBox& box,
                              const SweepOptions& options = {}) {
    detail::require_same_forest(support, box);
    const auto verdict = check_support(name, support, box, options);
    if (!verdict) {
        throw PreconditionError("name is not supported by the given window");
    }
    const detail::CompiledName compiled(name, box);
    const std::vector<std::size_t> mentioned(compiled.mentioned().begin(), compiled.mentioned().end());
    if (mentioned.size() >= 32) {
        throw CapacityError("name mentions too many coordinates to normalize by enumeration");
    }
    std::vector<std::size_t> over_support;
    for (std::size_t idx : mentioned) {
        if (support.contains(box.coordinate_at(idx).node)) {
            over_support.push_back(idx);
        }
    }

    const auto& forest = box.forest();
    std::map<Natural, PacketScheme::Family> families;
    Assignment g(box);
    std::vector<std::uint8_t> hits;
    const std::uint64_t total = std::uint64_t{1} << mentioned.size();
    for (std::uint64_t pattern = 0; pattern < total; ++pattern) {
        for (std::size_t j = 0; j < mentioned.size(); ++j) {
            g.set(mentioned[j], (pattern >> j) & 1U);
        }
        compiled.evaluate(g, hits);
        std::optional<Condition> restriction;
        for (std::size_t k = 0; k < hits.size(); ++k) {
            if (!hits[k]) {
                continue;
            }
            if (!restriction) {
                Condition::Map entries;
                for (std::size_t idx : over_support) {
                    entries.emplace(box.coordinate_at(idx), g[idx]);
                }
                restriction = Condition(std::move(entries));
            }
            families[compiled.naturals()[k]].insert(Packet(*restriction, forest));
        }
    }
    return PacketScheme(support, std::move(families));
}

}  // namespace cascade
