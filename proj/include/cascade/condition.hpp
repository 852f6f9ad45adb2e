#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "cascade/errors.hpp"
#include "cascade/forest.hpp"
#include "cascade/toggle_set.hpp"

namespace cascade {

using Row = std::uint32_t;

/// A point (node, row, bit) of the coordinate space.
struct Coordinate {
    NodeId node = 0;
    Row row = 0;
    Bit bit = 0;

    friend bool operator==(const Coordinate&, const Coordinate&) = default;
    friend auto operator<=>(const Coordinate&, const Coordinate&) = default;
};

/// The row (node, row) of the coordinate space.
struct RowId {
    NodeId node = 0;
    Row row = 0;

    friend bool operator==(const RowId&, const RowId&) = default;
    friend auto operator<=>(const RowId&, const RowId&) = default;
};

/// Finite partial function Coordinate -> {0,1}.
class Condition {
public:
    using Map = std::map<Coordinate, bool>;
    using const_iterator = Map::const_iterator;

    Condition() = default;
    Condition(std::initializer_list<std::pair<const Coordinate, bool>> entries) : entries_(entries) {}
    explicit Condition(Map entries) : entries_(std::move(entries)) {}

    std::optional<bool> get(const Coordinate& c) const {
        auto it = entries_.find(c);
        if (it == entries_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    bool defines(const Coordinate& c) const { return entries_.contains(c); }
    void set(const Coordinate& c, bool value) { entries_[c] = value; }
    void erase(const Coordinate& c) { entries_.erase(c); }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const_iterator begin() const noexcept { return entries_.begin(); }
    const_iterator end() const noexcept { return entries_.end(); }
    const Map& entries() const noexcept { return entries_; }

    /// Nodes mentioned by some coordinate of the domain.
    NodeSet node_support() const {
        NodeSet s;
        for (const auto& [c, v] : entries_) {
            s.insert(c.node);
        }
        return s;
    }

    /// Restriction to the rows whose node lies in `nodes`.
    Condition restricted_to(const NodeSet& nodes) const {
        Map out;
        for (const auto& [c, v] : entries_) {
            if (nodes.contains(c.node)) {
                out.emplace_hint(out.end(), c, v);
            }
        }
        return Condition(std::move(out));
    }

    /// True when every entry of `weaker` appears here with the same value.
    bool extends(const Condition& weaker) const {
        for (const auto& [c, v] : weaker.entries_) {
            auto it = entries_.find(c);
            if (it == entries_.end() || it->second != v) {
                return false;
            }
        }
        return true;
    }

    bool compatible_with(const Condition& other) const {
        for (const auto& [c, v] : other.entries_) {
            auto it = entries_.find(c);
            if (it != entries_.end() && it->second != v) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const Condition&, const Condition&) = default;
    friend auto operator<=>(const Condition& a, const Condition& b) { return a.entries_ <=> b.entries_; }

private:
    Map entries_;
};

/// A condition whose node-support is certified by a rho-window: the
/// rho-closure of the mentioned nodes. `exact()` additionally insists that
/// the mentioned nodes are rho-closed on their own.
class Packet {
public:
    Packet(Condition condition, const PredecessorForest& forest)
        : condition_(std::move(condition)),
          certificate_(rho_closure(forest, condition_.node_support())) {}

    static Packet exact(Condition condition, const PredecessorForest& forest) {
        if (!is_rho_closed(forest, condition.node_support())) {
            throw DomainError("packet node-support is not rho-closed");
        }
        return Packet(std::move(condition), forest);
    }

    const Condition& condition() const noexcept { return condition_; }
    const Window& support_certificate() const noexcept { return certificate_; }
    NodeSet node_support() const { return condition_.node_support(); }
    bool is_exact() const { return certificate_.size() == node_support().size(); }

    friend bool operator==(const Packet& a, const Packet& b) { return a.condition_ == b.condition_; }
    friend auto operator<=>(const Packet& a, const Packet& b) { return a.condition_ <=> b.condition_; }

private:
    Condition condition_;
    Window certificate_;
};

/// Both conditions padded with 0 to the union of their domains.
inline std::pair<Condition, Condition> pad_common_domain(const Condition& p, const Condition& q) {
    Condition pp = p;
    Condition qq = q;
    for (const auto& [c, v] : p) {
        if (!qq.defines(c)) {
            qq.set(c, false);
        }
    }
    for (const auto& [c, v] : q) {
        if (!pp.defines(c)) {
            pp.set(c, false);
        }
    }
    return {std::move(pp), std::move(qq)};
}

}  // namespace cascade
