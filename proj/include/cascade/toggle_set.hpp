#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <iterator>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cascade/errors.hpp"

namespace cascade {

using Bit = std::uint32_t;
using BitSet = std::set<Bit>;

/// A finite or cofinite subset of the naturals. A finite set stores its
/// members; a cofinite set stores the members of its complement.
class ToggleSet {
public:
    ToggleSet() = default;

    static ToggleSet finite(std::vector<Bit> members) { return {false, std::move(members)}; }
    static ToggleSet cofinite(std::vector<Bit> exceptions) { return {true, std::move(exceptions)}; }
    static ToggleSet single(Bit n) { return {false, {n}}; }
    static ToggleSet everything() { return {true, {}}; }

    bool is_cofinite() const noexcept { return cofinite_; }
    bool is_finite() const noexcept { return !cofinite_; }
    bool empty() const noexcept { return !cofinite_ && exceptions_.empty(); }
    std::span<const Bit> exceptions() const noexcept { return exceptions_; }

    bool contains(Bit n) const {
        return cofinite_ != std::binary_search(exceptions_.begin(), exceptions_.end(), n);
    }

    bool disjoint_from(const BitSet& bits) const {
        return std::none_of(bits.begin(), bits.end(), [&](Bit n) { return contains(n); });
    }

    /// s n {0..bound-1}, always finite.
    std::vector<Bit> members_below(Bit bound) const {
        std::vector<Bit> out;
        for (Bit n = 0; n < bound; ++n) {
            if (contains(n)) {
                out.push_back(n);
            }
        }
        return out;
    }

    ToggleSet& operator^=(const ToggleSet& other) {
        std::vector<Bit> sym;
        std::set_symmetric_difference(exceptions_.begin(), exceptions_.end(),
                                      other.exceptions_.begin(), other.exceptions_.end(),
                                      std::back_inserter(sym));
        exceptions_ = std::move(sym);
        cofinite_ = cofinite_ != other.cofinite_;
        return *this;
    }

    friend ToggleSet operator^(ToggleSet a, const ToggleSet& b) { return a ^= b; }

    friend bool operator==(const ToggleSet&, const ToggleSet&) = default;
    friend auto operator<=>(const ToggleSet&, const ToggleSet&) = default;

    /// `fin{1,2}` or `cofin{0}`.
    std::string to_string() const {
        std::string s = cofinite_ ? "cofin{" : "fin{";
        for (std::size_t k = 0; k < exceptions_.size(); ++k) {
            if (k) {
                s += ',';
            }
            s += std::to_string(exceptions_[k]);
        }
        return s + '}';
    }

    static ToggleSet parse(std::string_view text) {
        bool cof = false;
        if (text.starts_with("cofin{")) {
            cof = true;
            text.remove_prefix(6);
        } else if (text.starts_with("fin{")) {
            text.remove_prefix(4);
        } else {
            throw ParseError(1, "toggle set must start with fin{ or cofin{");
        }
        if (!text.ends_with('}')) {
            throw ParseError(1, "toggle set missing closing brace");
        }
        text.remove_suffix(1);
        std::vector<Bit> bits;
        while (!text.empty()) {
            auto comma = text.find(',');
            auto token = text.substr(0, comma);
            if (token.empty() || token.find_first_not_of("0123456789") != std::string_view::npos) {
                throw ParseError(1, "bad bit index '" + std::string(token) + "'");
            }
            bits.push_back(static_cast<Bit>(std::stoul(std::string(token))));
            text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        }
        return {cof, std::move(bits)};
    }

private:
    ToggleSet(bool cofinite, std::vector<Bit> bits) : cofinite_(cofinite), exceptions_(std::move(bits)) {
        std::sort(exceptions_.begin(), exceptions_.end());
        exceptions_.erase(std::unique(exceptions_.begin(), exceptions_.end()), exceptions_.end());
    }

    bool cofinite_ = false;
    std::vector<Bit> exceptions_;
};

inline ToggleSet toggle_xor(const ToggleSet& s, const ToggleSet& t) { return s ^ t; }

}  // namespace cascade
