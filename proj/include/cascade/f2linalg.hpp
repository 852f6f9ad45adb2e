#pragma once

// Star vectors over finite rho-windows and the triangular star-span solver.
//
// Ordering convention used throughout: forest_height(K, x) is the length of
// the longest chain x -> child -> grandchild ... inside K (leaves have height
// 0). The star ordering lists K by *ascending* height, ties broken by
// ascending node id. A child always has strictly smaller height than its
// parent, so every child precedes its parent and the star-incidence matrix
// comes out upper triangular with a unit diagonal.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cascade/errors.hpp"
#include "cascade/forest.hpp"

namespace cascade {

namespace detail {

inline std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace detail

/// Element of F2^K, indexed by the ascending node order of its window.
class F2Vector {
public:
    explicit F2Vector(Window window)
        : window_(std::move(window)), words_(detail::word_count(window_.size()), 0) {}

    static F2Vector indicator(const Window& window, const NodeSet& nodes) {
        F2Vector v(window);
        for (NodeId x : nodes) {
            v.set(x, true);
        }
        return v;
    }

    const Window& window() const noexcept { return window_; }
    std::size_t size() const noexcept { return window_.size(); }

    bool at(std::size_t index) const { return (words_[index / 64] >> (index % 64)) & 1U; }

    void set_at(std::size_t index, bool value) {
        const std::uint64_t mask = std::uint64_t{1} << (index % 64);
        if (value) {
            words_[index / 64] |= mask;
        } else {
            words_[index / 64] &= ~mask;
        }
    }

    bool get(NodeId x) const { return at(window_.index_of(x)); }
    void set(NodeId x, bool value) { set_at(window_.index_of(x), value); }
    void flip(NodeId x) { set(x, !get(x)); }

    bool is_zero() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }

    NodeSet support() const {
        NodeSet s;
        for (std::size_t k = 0; k < size(); ++k) {
            if (at(k)) {
                s.insert(window_.nodes()[k]);
            }
        }
        return s;
    }

    F2Vector& operator^=(const F2Vector& other) {
        if (!(window_ == other.window_)) {
            throw DomainError("F2 vectors indexed by different windows");
        }
        for (std::size_t w = 0; w < words_.size(); ++w) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }

    friend F2Vector operator^(F2Vector a, const F2Vector& b) { return a ^= b; }

    friend bool operator==(const F2Vector& a, const F2Vector& b) {
        return a.window_ == b.window_ && a.words_ == b.words_;
    }

    /// 0/1 characters in window order.
    std::string to_string() const {
        std::string s;
        s.reserve(size());
        for (std::size_t k = 0; k < size(); ++k) {
            s.push_back(at(k) ? '1' : '0');
        }
        return s;
    }

private:
    Window window_;
    std::vector<std::uint64_t> words_;
};

/// Dense 0/1 matrix whose rows and columns are labelled by nodes.
class F2Matrix {
public:
    F2Matrix(std::vector<NodeId> row_order, std::vector<NodeId> col_order)
        : rows_(std::move(row_order)),
          cols_(std::move(col_order)),
          stride_(detail::word_count(cols_.size())),
          words_(rows_.size() * stride_, 0) {}

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_.size(); }
    const std::vector<NodeId>& row_order() const noexcept { return rows_; }
    const std::vector<NodeId>& col_order() const noexcept { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * stride_ + c / 64] >> (c % 64)) & 1U;
    }

    void set(std::size_t r, std::size_t c, bool value) {
        auto& w = words_[r * stride_ + c / 64];
        const std::uint64_t mask = std::uint64_t{1} << (c % 64);
        w = value ? (w | mask) : (w & ~mask);
    }

    bool is_upper_unitriangular() const {
        if (rows() != cols()) {
            return false;
        }
        for (std::size_t r = 0; r < rows(); ++r) {
            if (!get(r, r)) {
                return false;
            }
            for (std::size_t c = 0; c < r; ++c) {
                if (get(r, c)) {
                    return false;
                }
            }
        }
        return true;
    }

    friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

private:
    std::vector<NodeId> rows_;
    std::vector<NodeId> cols_;
    std::size_t stride_;
    std::vector<std::uint64_t> words_;
};

namespace detail {

// Heights for every node of K, aligned with K.nodes(). Children carry larger
// ids than their parent, so a single descending sweep suffices.
inline std::vector<std::size_t> window_heights(const Window& window) {
    const auto nodes = window.nodes();
    std::vector<std::size_t> height(nodes.size(), 0);
    for (std::size_t k = nodes.size(); k-- > 0;) {
        for (NodeId child : window.forest().children(nodes[k])) {
            if (window.contains(child)) {
                height[k] = std::max(height[k], height[window.index_of(child)] + 1);
            }
        }
    }
    return height;
}

}  // namespace detail

inline std::size_t forest_height(const Window& window, NodeId x) {
    if (!window.contains(x)) {
        throw DomainError("node " + std::to_string(x) + " not in window");
    }
    return detail::window_heights(window)[window.index_of(x)];
}

/// K listed by ascending height, ties by ascending id (children before parents).
inline std::vector<NodeId> star_order(const Window& window) {
    const auto height = detail::window_heights(window);
    std::vector<std::size_t> idx(window.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        idx[k] = k;
    }
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return height[a] < height[b]; });
    std::vector<NodeId> order;
    order.reserve(idx.size());
    for (std::size_t k : idx) {
        order.push_back(window.nodes()[k]);
    }
    return order;
}

/// Characteristic vector of {x} u (Succ(x) n K).
inline F2Vector star_vector(const Window& window, NodeId x) {
    if (!window.contains(x)) {
        throw DomainError("star centre " + std::to_string(x) + " not in window");
    }
    F2Vector v(window);
    v.set(x, true);
    for (NodeId child : window.forest().children(x)) {
        if (window.contains(child)) {
            v.set(child, true);
        }
    }
    return v;
}

/// Column x is the star vector of x; rows and columns share the star ordering.
inline F2Matrix star_matrix(const Window& window) {
    if (window.empty()) {
        throw DomainError("star matrix of an empty window");
    }
    auto order = star_order(window);
    std::vector<std::size_t> position(window.size());
    for (std::size_t p = 0; p < order.size(); ++p) {
        position[window.index_of(order[p])] = p;
    }
    F2Matrix m(order, order);
    for (std::size_t c = 0; c < order.size(); ++c) {
        m.set(c, c, true);
        for (NodeId child : window.forest().children(order[c])) {
            if (window.contains(child)) {
                m.set(position[window.index_of(child)], c, true);
            }
        }
    }
    return m;
}

/// XOR of the star vectors of the given centres.
inline F2Vector combine_stars(const Window& window, const NodeSet& centres) {
    F2Vector sum(window);
    for (NodeId x : centres) {
        sum ^= star_vector(window, x);
    }
    return sum;
}

/// Returns the unique S with XOR_{x in S} star(x) = target, by back-substitution
/// through the triangular star matrix (last row first).
inline NodeSet solve_star_span(const Window& window, const F2Vector& target) {
    if (!(target.window() == window)) {
        throw DomainError("target vector is indexed by a different window");
    }
    if (window.empty()) {
        return {};
    }
    const F2Matrix m = star_matrix(window);
    const auto& order = m.col_order();
    const std::size_t n = order.size();
    std::vector<bool> coeff(n, false);
    for (std::size_t r = n; r-- > 0;) {
        if (!m.get(r, r)) {
            throw std::logic_error("star matrix lost its unit diagonal");
        }
        bool acc = target.get(order[r]);
        for (std::size_t c = r + 1; c < n; ++c) {
            if (m.get(r, c) && coeff[c]) {
                acc = !acc;
            }
        }
        coeff[r] = acc;
    }
    NodeSet solution;
    for (std::size_t k = 0; k < n; ++k) {
        if (coeff[k]) {
            solution.insert(order[k]);
        }
    }
    return solution;
}

/// Header line with the node ordering, then one 0/1 string per row.
inline std::string export_matrix(const F2Matrix& m) {
    std::ostringstream out;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        out << (c ? " " : "") << m.col_order()[c];
    }
    out << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out << (m.get(r, c) ? '1' : '0');
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace cascade
