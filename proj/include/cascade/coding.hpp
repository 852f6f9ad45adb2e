#pragma once

// Canonical enumeration of all packets over a coordinate box, and the
// two-layer code of a packet scheme (support + per-m sets of packet indices).
//
// Enumeration order "lex-v1": a packet serializes to the list of its
// (coordinate index, value) tokens in increasing coordinate index, with
// coordinate indices as in CoordinateBox (lexicographic node, row, bit).
// Packets are ordered lexicographically on these token lists, tokens compared
// by coordinate then value, and a proper prefix sorts first. The empty packet
// has rank 0; there are 3^C packets over a box of C coordinates.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cascade/box.hpp"
#include "cascade/condition.hpp"
#include "cascade/errors.hpp"
#include "cascade/names.hpp"

namespace cascade {

inline constexpr std::string_view kPacketEnumerationVersion = "lex-v1";

class PacketEnumeration {
public:
    explicit PacketEnumeration(CoordinateBox box) : box_(std::move(box)) {
        if (box_.size() > 40) {
            throw CapacityError("packet enumeration supports boxes of at most 40 coordinates");
        }
        pow3_.assign(box_.size() + 1, 1);
        for (std::size_t j = 1; j < pow3_.size(); ++j) {
            pow3_[j] = pow3_[j - 1] * 3;
        }
    }

    const CoordinateBox& box() const noexcept { return box_; }
    std::uint64_t count() const noexcept { return pow3_.back(); }

    std::uint64_t rank(const Condition& packet) const {
        const std::size_t c_total = box_.size();
        std::uint64_t r = 0;
        std::size_t next = 0;  // first coordinate index a further token may use
        for (const auto& [c, v] : packet) {
            const std::size_t idx = box_.index_of(c);
            r += 1;  // the prefix ending before this token
            for (std::size_t skip = next; skip < idx; ++skip) {
                r += 2 * pow3_[c_total - 1 - skip];
            }
            if (v) {
                r += pow3_[c_total - 1 - idx];
            }
            next = idx + 1;
        }
        return r;
    }

    Condition unrank(std::uint64_t r) const {
        if (r >= count()) {
            throw DomainError("packet index " + std::to_string(r) + " beyond enumeration of size " +
                              std::to_string(count()));
        }
        const std::size_t c_total = box_.size();
        Condition::Map entries;
        std::size_t next = 0;
        while (r != 0) {
            r -= 1;
            bool placed = false;
            for (std::size_t idx = next; idx < c_total && !placed; ++idx) {
                for (int v = 0; v < 2; ++v) {
                    const std::uint64_t block = pow3_[c_total - 1 - idx];
                    if (r < block) {
                        entries.emplace(box_.coordinate_at(idx), v == 1);
                        next = idx + 1;
                        placed = true;
                        break;
                    }
                    r -= block;
                }
            }
            if (!placed) {
                throw std::logic_error("packet unranking ran past the last coordinate");
            }
        }
        return Condition(std::move(entries));
    }

private:
    CoordinateBox box_;
    std::vector<std::uint64_t> pow3_;
};

/// Support window plus, per m, the enumeration indices of the packets of C_m.
struct TwoLayerCode {
    Window support;
    CoordinateBox box;
    std::map<Natural, std::set<std::uint64_t>> packet_indices;
    std::string enumeration{kPacketEnumerationVersion};
};

inline TwoLayerCode two_layer_code(const PacketScheme& scheme, const CoordinateBox& box) {
    detail::require_same_forest(scheme.support(), box);
    const PacketEnumeration enumeration(box);
    TwoLayerCode code{scheme.support(), box, {}};
    for (const auto& [m, family] : scheme.families()) {
        auto& indices = code.packet_indices[m];
        for (const auto& r : family) {
            indices.insert(enumeration.rank(r.condition()));
        }
    }
    return code;
}

inline PacketScheme decode(const TwoLayerCode& code) {
    if (code.enumeration != kPacketEnumerationVersion) {
        throw DomainError("unknown packet enumeration '" + code.enumeration + "'");
    }
    const PacketEnumeration enumeration(code.box);
    std::map<Natural, PacketScheme::Family> families;
    for (const auto& [m, indices] : code.packet_indices) {
        for (std::uint64_t k : indices) {
            families[m].insert(Packet(enumeration.unrank(k), code.box.forest()));
        }
    }
    return PacketScheme(code.support, std::move(families));
}

}  // namespace cascade
