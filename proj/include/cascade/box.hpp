#pragma once

// Finite coordinate boxes and total 0/1 assignments on them. An assignment
// stands in for the generic reals restricted to the box.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cascade/automorphism.hpp"
#include "cascade/condition.hpp"
#include "cascade/errors.hpp"
#include "cascade/forest.hpp"

namespace cascade {

/// nodes x {0..rows-1} x {0..bits-1}. Coordinates are indexed in
/// lexicographic (node, row, bit) order; that index order is also the order
/// used by packet enumeration.
class CoordinateBox {
public:
    CoordinateBox(Window nodes, Row rows, Bit bits)
        : data_(std::make_shared<Data>(Data{std::move(nodes), rows, bits})) {
        if (data_->nodes.empty() || rows == 0 || bits == 0) {
            throw DomainError("coordinate box must be nonempty in every direction");
        }
    }

    /// The box over every node of the forest.
    static CoordinateBox full(const PredecessorForest& forest, Row rows, Bit bits) {
        NodeSet all;
        for (NodeId x = 0; x < forest.size(); ++x) {
            all.insert(x);
        }
        return CoordinateBox(Window(forest, all), rows, bits);
    }

    const Window& nodes() const noexcept { return data_->nodes; }
    const PredecessorForest& forest() const noexcept { return data_->nodes.forest(); }
    Row rows() const noexcept { return data_->rows; }
    Bit bits() const noexcept { return data_->bits; }
    std::size_t size() const noexcept { return data_->nodes.size() * data_->rows * data_->bits; }

    bool contains(const Coordinate& c) const {
        return c.row < rows() && c.bit < bits() && nodes().contains(c.node);
    }

    std::size_t index_of(const Coordinate& c) const {
        if (!contains(c)) {
            throw DomainError("coordinate (" + std::to_string(c.node) + "," + std::to_string(c.row) +
                              "," + std::to_string(c.bit) + ") outside box");
        }
        return (nodes().index_of(c.node) * rows() + c.row) * bits() + c.bit;
    }

    Coordinate coordinate_at(std::size_t index) const {
        const Bit n = static_cast<Bit>(index % bits());
        index /= bits();
        const Row i = static_cast<Row>(index % rows());
        index /= rows();
        return {nodes().nodes()[index], i, n};
    }

    bool fits(const Condition& q) const {
        for (const auto& [c, v] : q) {
            if (!contains(c)) {
                return false;
            }
        }
        return true;
    }

    void require_fits(const Condition& q) const {
        for (const auto& [c, v] : q) {
            index_of(c);
        }
    }

    friend bool operator==(const CoordinateBox& a, const CoordinateBox& b) {
        return a.data_ == b.data_ || (a.rows() == b.rows() && a.bits() == b.bits() && a.nodes() == b.nodes());
    }

private:
    struct Data {
        Window nodes;
        Row rows;
        Bit bits;
    };
    std::shared_ptr<const Data> data_;
};

/// Total 0/1 function on a box.
class Assignment {
public:
    explicit Assignment(CoordinateBox box)
        : box_(std::move(box)), words_((box_.size() + 63) / 64, 0) {}

    /// Bit k of `pattern` is the value at coordinate index k (box size <= 64).
    static Assignment from_pattern(const CoordinateBox& box, std::uint64_t pattern) {
        if (box.size() > 64) {
            throw DomainError("pattern constructor limited to boxes of at most 64 coordinates");
        }
        Assignment g(box);
        g.words_[0] = box.size() == 64 ? pattern : pattern & ((std::uint64_t{1} << box.size()) - 1);
        return g;
    }

    const CoordinateBox& box() const noexcept { return box_; }

    bool operator[](std::size_t index) const { return (words_[index / 64] >> (index % 64)) & 1U; }
    bool at(const Coordinate& c) const { return (*this)[box_.index_of(c)]; }

    void set(std::size_t index, bool value) {
        const std::uint64_t mask = std::uint64_t{1} << (index % 64);
        words_[index / 64] = value ? (words_[index / 64] | mask) : (words_[index / 64] & ~mask);
    }
    void flip(std::size_t index) { words_[index / 64] ^= std::uint64_t{1} << (index % 64); }

    void load_pattern(std::uint64_t pattern) {
        words_.assign(words_.size(), 0);
        if (!words_.empty()) {
            words_[0] = pattern;
        }
    }

    /// p is a sub-function of this assignment. Throws if p leaves the box.
    bool extends(const Condition& p) const {
        for (const auto& [c, v] : p) {
            if ((*this)[box_.index_of(c)] != v) {
                return false;
            }
        }
        return true;
    }

    /// The part of the assignment on the rows over `nodes`, as a condition.
    Condition restricted_to(const NodeSet& nodes) const {
        Condition::Map out;
        for (std::size_t k = 0; k < box_.size(); ++k) {
            const Coordinate c = box_.coordinate_at(k);
            if (nodes.contains(c.node)) {
                out.emplace_hint(out.end(), c, (*this)[k]);
            }
        }
        return Condition(std::move(out));
    }

    /// tau . g: flips every box coordinate whose row toggle contains its bit.
    Assignment acted_on_by(const CascadeAutomorphism& tau) const {
        Assignment out = *this;
        for (const auto& [row, s] : tau.row_toggles()) {
            if (row.row >= box_.rows() || !box_.nodes().contains(row.node)) {
                continue;
            }
            for (Bit n : s.members_below(box_.bits())) {
                out.flip(box_.index_of({row.node, row.row, n}));
            }
        }
        return out;
    }

    Condition as_condition() const { return restricted_to(box_.nodes().as_set()); }

    friend bool operator==(const Assignment& a, const Assignment& b) {
        return a.words_ == b.words_ && a.box_ == b.box_;
    }

private:
    CoordinateBox box_;
    std::vector<std::uint64_t> words_;
};

/// How a universally quantified statement over assignments is discharged.
struct SweepOptions {
    /// Boxes with at most this many coordinates are swept exhaustively.
    std::size_t exhaustive_limit = 16;
    /// Number of seeded random assignments used above the limit.
    std::size_t samples = 4096;
    std::uint64_t seed = 0x5eed;
};

struct SweepInfo {
    bool exhaustive = true;
    std::size_t assignments = 0;
};

/// Calls `visit(g)` on every assignment (or a seeded sample) until it returns
/// false. Returns how the sweep was carried out.
inline SweepInfo sweep_assignments(const CoordinateBox& box, const SweepOptions& options,
                                   const std::function<bool(const Assignment&)>& visit) {
    SweepInfo info;
    Assignment g(box);
    if (box.size() <= options.exhaustive_limit && box.size() < 64) {
        const std::uint64_t total = std::uint64_t{1} << box.size();
        for (std::uint64_t pattern = 0; pattern < total; ++pattern) {
            g.load_pattern(pattern);
            ++info.assignments;
            if (!visit(g)) {
                break;
            }
        }
        return info;
    }
    info.exhaustive = false;
    std::mt19937_64 rng(options.seed);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t t = 0; t < options.samples; ++t) {
        for (std::size_t k = 0; k < box.size(); ++k) {
            g.set(k, coin(rng));
        }
        ++info.assignments;
        if (!visit(g)) {
            break;
        }
    }
    return info;
}

/// Every total extension of `p` inside the box (exhaustive; the free part
/// must have fewer than 64 coordinates).
inline void for_each_extension(const CoordinateBox& box, const Condition& p,
                               const std::function<void(const Assignment&)>& visit) {
    box.require_fits(p);
    std::vector<std::size_t> free;
    Assignment g(box);
    for (std::size_t k = 0; k < box.size(); ++k) {
        const auto v = p.get(box.coordinate_at(k));
        if (v) {
            g.set(k, *v);
        } else {
            free.push_back(k);
        }
    }
    if (free.size() >= 64) {
        throw CapacityError("too many free coordinates to enumerate extensions");
    }
    const std::uint64_t total = std::uint64_t{1} << free.size();
    for (std::uint64_t pattern = 0; pattern < total; ++pattern) {
        for (std::size_t j = 0; j < free.size(); ++j) {
            g.set(free[j], (pattern >> j) & 1U);
        }
        visit(g);
    }
}

}  // namespace cascade
