#pragma once

// Text formats:
//
//   forest     first line `N`, then one `node pred` line per node 1..N-1
//   condition  header `box N R B`, then `node row bit value` lines
//   scheme     `support: <nodes>`, then `m: {n r b v; ...} {...}` lines
//   code       `code <enumeration> box nodes=<a,b,..> rows=R bits=B`,
//              `support: <nodes>`, then `m: k1,k2,...` lines
//   partition  first line `d`, then `bits label` lines, bits a 0/1 string
//              of length d whose k-th character is coordinate k
//
// Blank lines and lines starting with '#' are ignored everywhere.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cascade/coding.hpp"
#include "cascade/condition.hpp"
#include "cascade/errors.hpp"
#include "cascade/forest.hpp"
#include "cascade/names.hpp"
#include "cascade/orbits.hpp"

namespace cascade {

namespace detail {

/// Reads non-blank lines with `#` comments stripped, remembering line numbers.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::optional<std::string> next() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            line = line.substr(0, line.find('#'));
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) {
                continue;
            }
            auto last = line.find_last_not_of(" \t\r");
            return line.substr(first, last - first + 1);
        }
        return std::nullopt;
    }

    std::size_t line() const noexcept { return line_no_; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_no_, what); }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

inline std::uint64_t parse_unsigned(std::string_view token, std::size_t line) {
    if (token.empty() || token.size() > 19 ||
        !std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw ParseError(line, "expected a decimal number, got '" + std::string(token) + "'");
    }
    return std::stoull(std::string(token));
}

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string tok; ss >> tok;) {
        out.push_back(tok);
    }
    return out;
}

}  // namespace detail

/// Space-separated ascending node list.
template <typename Range>
std::string format_nodes(const Range& nodes) {
    std::string out;
    for (auto x : nodes) {
        if (!out.empty()) {
            out += ' ';
        }
        out += std::to_string(x);
    }
    return out;
}

/// Accepts separators ',' and whitespace; "" is the empty set.
inline NodeSet parse_node_list(std::string_view text) {
    NodeSet out;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            out.insert(static_cast<NodeId>(detail::parse_unsigned(token, 1)));
            token.clear();
        }
    };
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            token.push_back(c);
        }
    }
    flush();
    return out;
}

inline PredecessorForest read_forest(std::istream& in) {
    detail::LineReader reader(in);
    auto header = reader.next();
    if (!header) {
        throw ParseError(reader.line(), "empty forest file");
    }
    const auto head = detail::split_ws(*header);
    if (head.size() != 1) {
        reader.fail("first line must hold the universe size N");
    }
    const auto n = detail::parse_unsigned(head[0], reader.line());
    if (n == 0) {
        reader.fail("universe size must be at least 1");
    }
    std::vector<NodeId> pred(n - 1);
    std::vector<bool> seen(n, false);
    for (std::size_t k = 1; k < n; ++k) {
        auto line = reader.next();
        if (!line) {
            throw ParseError(reader.line(), "expected " + std::to_string(n - 1) + " predecessor lines, found " +
                                                std::to_string(k - 1));
        }
        const auto tok = detail::split_ws(*line);
        if (tok.size() != 2) {
            reader.fail("expected `node pred`");
        }
        const auto x = detail::parse_unsigned(tok[0], reader.line());
        const auto p = detail::parse_unsigned(tok[1], reader.line());
        if (x == 0 || x >= n) {
            reader.fail("node " + tok[0] + " cannot carry a predecessor in a universe of size " + head[0]);
        }
        if (seen[x]) {
            reader.fail("node " + tok[0] + " listed twice");
        }
        if (p >= x) {
            reader.fail("predecessor " + tok[1] + " of node " + tok[0] + " is not smaller");
        }
        seen[x] = true;
        pred[x - 1] = static_cast<NodeId>(p);
    }
    if (reader.next()) {
        reader.fail("unexpected trailing line");
    }
    return PredecessorForest(n, std::move(pred));
}

inline void write_forest(std::ostream& out, const PredecessorForest& forest) {
    out << forest.size() << '\n';
    for (NodeId x = 1; x < forest.size(); ++x) {
        out << x << ' ' << forest.pred(x) << '\n';
    }
}

struct ConditionFile {
    std::size_t universe = 0;
    Row rows = 0;
    Bit bits = 0;
    Condition condition;
};

inline ConditionFile read_condition_file(std::istream& in) {
    detail::LineReader reader(in);
    auto header = reader.next();
    if (!header) {
        throw ParseError(reader.line(), "empty condition file");
    }
    const auto head = detail::split_ws(*header);
    if (head.size() != 4 || head[0] != "box") {
        reader.fail("header must read `box N R B`");
    }
    ConditionFile file;
    file.universe = detail::parse_unsigned(head[1], reader.line());
    file.rows = static_cast<Row>(detail::parse_unsigned(head[2], reader.line()));
    file.bits = static_cast<Bit>(detail::parse_unsigned(head[3], reader.line()));
    if (file.universe == 0 || file.rows == 0 || file.bits == 0) {
        reader.fail("box dimensions must be positive");
    }
    while (auto line = reader.next()) {
        const auto tok = detail::split_ws(*line);
        if (tok.size() != 4) {
            reader.fail("expected `node row bit value`");
        }
        Coordinate c{static_cast<NodeId>(detail::parse_unsigned(tok[0], reader.line())),
                     static_cast<Row>(detail::parse_unsigned(tok[1], reader.line())),
                     static_cast<Bit>(detail::parse_unsigned(tok[2], reader.line()))};
        const auto v = detail::parse_unsigned(tok[3], reader.line());
        if (v > 1) {
            reader.fail("value must be 0 or 1");
        }
        if (c.node >= file.universe || c.row >= file.rows || c.bit >= file.bits) {
            reader.fail("coordinate outside the declared box");
        }
        if (auto old = file.condition.get(c); old && *old != (v == 1)) {
            reader.fail("coordinate assigned two different values");
        }
        file.condition.set(c, v == 1);
    }
    return file;
}

inline void write_condition_file(std::ostream& out, const ConditionFile& file) {
    out << "box " << file.universe << ' ' << file.rows << ' ' << file.bits << '\n';
    for (const auto& [c, v] : file.condition) {
        out << c.node << ' ' << c.row << ' ' << c.bit << ' ' << (v ? 1 : 0) << '\n';
    }
}

inline std::string format_packet(const Condition& p) {
    std::string out = "{";
    bool first = true;
    for (const auto& [c, v] : p) {
        if (!first) {
            out += "; ";
        }
        first = false;
        out += std::to_string(c.node) + ' ' + std::to_string(c.row) + ' ' + std::to_string(c.bit) + ' ' +
               (v ? '1' : '0');
    }
    return out + '}';
}

inline void write_scheme(std::ostream& out, const PacketScheme& scheme) {
    out << "support: " << format_nodes(scheme.support().nodes()) << '\n';
    for (const auto& [m, family] : scheme.families()) {
        out << m << ':';
        for (const auto& r : family) {
            out << ' ' << format_packet(r.condition());
        }
        out << '\n';
    }
}

namespace detail {

inline std::pair<std::string, std::string> split_label(const std::string& line, std::size_t line_no) {
    auto colon = line.find(':');
    if (colon == std::string::npos) {
        throw ParseError(line_no, "expected `label: ...`");
    }
    auto label = line.substr(0, colon);
    label.erase(label.find_last_not_of(" \t") + 1);
    return {label, line.substr(colon + 1)};
}

}  // namespace detail

inline PacketScheme read_scheme(std::istream& in, const PredecessorForest& forest) {
    detail::LineReader reader(in);
    auto header = reader.next();
    if (!header) {
        throw ParseError(reader.line(), "empty scheme file");
    }
    auto [label, rest] = detail::split_label(*header, reader.line());
    if (label != "support") {
        reader.fail("scheme must start with `support:`");
    }
    std::optional<Window> support;
    try {
        support.emplace(forest, parse_node_list(rest));
    } catch (const DomainError& e) {
        reader.fail(e.what());
    }
    std::map<Natural, PacketScheme::Family> families;
    while (auto line = reader.next()) {
        auto [m_text, body] = detail::split_label(*line, reader.line());
        const auto m = static_cast<Natural>(detail::parse_unsigned(m_text, reader.line()));
        std::size_t pos = 0;
        while (true) {
            pos = body.find_first_not_of(" \t", pos);
            if (pos == std::string::npos) {
                break;
            }
            if (body[pos] != '{') {
                reader.fail("expected `{` to open a packet");
            }
            auto close = body.find('}', pos);
            if (close == std::string::npos) {
                reader.fail("unterminated packet block");
            }
            Condition p;
            std::istringstream entries(body.substr(pos + 1, close - pos - 1));
            for (std::string entry; std::getline(entries, entry, ';');) {
                const auto tok = detail::split_ws(entry);
                if (tok.empty()) {
                    continue;
                }
                if (tok.size() != 4) {
                    reader.fail("packet entries read `node row bit value`");
                }
                const auto v = detail::parse_unsigned(tok[3], reader.line());
                if (v > 1) {
                    reader.fail("value must be 0 or 1");
                }
                p.set({static_cast<NodeId>(detail::parse_unsigned(tok[0], reader.line())),
                       static_cast<Row>(detail::parse_unsigned(tok[1], reader.line())),
                       static_cast<Bit>(detail::parse_unsigned(tok[2], reader.line()))},
                      v == 1);
            }
            try {
                families[m].insert(Packet(std::move(p), forest));
            } catch (const DomainError& e) {
                reader.fail(e.what());
            }
            pos = close + 1;
        }
    }
    try {
        return PacketScheme(*support, std::move(families));
    } catch (const DomainError& e) {
        throw ParseError(reader.line(), e.what());
    }
}

inline void write_code(std::ostream& out, const TwoLayerCode& code) {
    std::string nodes;
    for (NodeId x : code.box.nodes().nodes()) {
        nodes += (nodes.empty() ? "" : ",") + std::to_string(x);
    }
    out << "code " << code.enumeration << " box nodes=" << nodes << " rows=" << code.box.rows()
        << " bits=" << code.box.bits() << '\n';
    out << "support: " << format_nodes(code.support.nodes()) << '\n';
    for (const auto& [m, indices] : code.packet_indices) {
        out << m << ':';
        bool first = true;
        for (auto k : indices) {
            out << (first ? " " : ",") << k;
            first = false;
        }
        out << '\n';
    }
}

inline TwoLayerCode read_code(std::istream& in, const PredecessorForest& forest) {
    detail::LineReader reader(in);
    auto header = reader.next();
    if (!header) {
        throw ParseError(reader.line(), "empty code file");
    }
    const auto head = detail::split_ws(*header);
    if (head.size() != 6 || head[0] != "code" || head[2] != "box" || !head[3].starts_with("nodes=") ||
        !head[4].starts_with("rows=") || !head[5].starts_with("bits=")) {
        reader.fail("header must read `code <enumeration> box nodes=.. rows=R bits=B`");
    }
    const std::string enumeration = head[1];
    std::optional<CoordinateBox> box;
    try {
        box.emplace(Window(forest, parse_node_list(head[3].substr(6))),
                    static_cast<Row>(detail::parse_unsigned(head[4].substr(5), reader.line())),
                    static_cast<Bit>(detail::parse_unsigned(head[5].substr(5), reader.line())));
    } catch (const DomainError& e) {
        reader.fail(e.what());
    }
    auto support_line = reader.next();
    if (!support_line) {
        throw ParseError(reader.line(), "missing `support:` line");
    }
    auto [label, rest] = detail::split_label(*support_line, reader.line());
    if (label != "support") {
        reader.fail("expected `support:`");
    }
    std::optional<Window> support;
    try {
        support.emplace(forest, parse_node_list(rest));
    } catch (const DomainError& e) {
        reader.fail(e.what());
    }
    TwoLayerCode code{*support, *box, {}, enumeration};
    while (auto line = reader.next()) {
        auto [m_text, body] = detail::split_label(*line, reader.line());
        auto& indices = code.packet_indices[static_cast<Natural>(detail::parse_unsigned(m_text, reader.line()))];
        std::string token;
        std::istringstream list(body);
        while (std::getline(list, token, ',')) {
            const auto tok = detail::split_ws(token);
            if (tok.empty()) {
                continue;
            }
            if (tok.size() != 1) {
                reader.fail("packet indices are comma separated");
            }
            indices.insert(detail::parse_unsigned(tok[0], reader.line()));
        }
    }
    return code;
}

inline TranslationPartition read_partition(std::istream& in) {
    detail::LineReader reader(in);
    auto header = reader.next();
    if (!header) {
        throw ParseError(reader.line(), "empty partition file");
    }
    const auto d = detail::parse_unsigned(*header, reader.line());
    if (d > 20) {
        reader.fail("dimension above 20 not supported");
    }
    const std::size_t size = std::size_t{1} << d;
    std::vector<std::uint32_t> labels(size);
    std::vector<bool> seen(size, false);
    std::size_t count = 0;
    while (auto line = reader.next()) {
        const auto tok = detail::split_ws(*line);
        if (tok.size() != 2 || tok[0].size() != d ||
            tok[0].find_first_not_of("01") != std::string::npos) {
            reader.fail("expected `bits label` with a 0/1 string of length " + std::to_string(d));
        }
        std::uint32_t q = 0;
        for (std::size_t k = 0; k < d; ++k) {
            if (tok[0][k] == '1') {
                q |= std::uint32_t{1} << k;
            }
        }
        if (seen[q]) {
            reader.fail("vector " + tok[0] + " labelled twice");
        }
        seen[q] = true;
        labels[q] = static_cast<std::uint32_t>(detail::parse_unsigned(tok[1], reader.line()));
        ++count;
    }
    if (count != size) {
        throw ParseError(reader.line(), "partition labels " + std::to_string(count) + " of " +
                                            std::to_string(size) + " vectors");
    }
    return TranslationPartition(d, std::move(labels));
}

inline void write_partition(std::ostream& out, const TranslationPartition& partition) {
    const auto d = partition.dimension();
    out << d << '\n';
    for (std::uint32_t q = 0; q < partition.labels().size(); ++q) {
        for (std::size_t k = 0; k < d; ++k) {
            out << (((q >> k) & 1U) ? '1' : '0');
        }
        out << ' ' << partition.label(q) << '\n';
    }
}

}  // namespace cascade
