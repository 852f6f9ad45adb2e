#include <gtest/gtest.h>

#include <sstream>

#include "support/oracles.hpp"

using namespace cascade;

namespace {

template <typename F>
std::size_t parse_error_line(const std::string& text, F&& reader) {
    std::istringstream in(text);
    try {
        reader(in);
    } catch (const ParseError& e) {
        return e.line();
    }
    ADD_FAILURE() << "no parse error for:\n" << text;
    return 0;
}

}  // namespace

TEST(NodeList, ParsesCommasAndSpaces) {
    EXPECT_EQ(parse_node_list("3,5"), (NodeSet{3, 5}));
    EXPECT_EQ(parse_node_list(" 1 2,,4 "), (NodeSet{1, 2, 4}));
    EXPECT_TRUE(parse_node_list("").empty());
    EXPECT_THROW(parse_node_list("1,x"), ParseError);
    EXPECT_EQ(format_nodes(std::vector<NodeId>{0, 1, 3}), "0 1 3");
}

TEST(ForestFile, RoundTrip) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto forest = random_forest(1 + seed, seed);
        std::stringstream text;
        write_forest(text, forest);
        EXPECT_EQ(read_forest(text), forest);
    }
}

TEST(ForestFile, CommentsAndBlankLines) {
    std::istringstream in("# a fork\n3\n\n2 0\n1 0 # root child\n");
    EXPECT_EQ(read_forest(in), PredecessorForest::from_pairs(3, {{1, 0}, {2, 0}}));
}

TEST(ForestFile, ErrorsCarryLineNumbers) {
    auto rd = [](std::istream& in) { (void)read_forest(in); };
    EXPECT_EQ(parse_error_line("3\n1 0\n2 2\n", rd), 3U);
    EXPECT_EQ(parse_error_line("3\n1 0\n1 0\n", rd), 3U);
    EXPECT_EQ(parse_error_line("x\n", rd), 1U);
    EXPECT_EQ(parse_error_line("3\n1 0\n", rd), 2U);
    EXPECT_EQ(parse_error_line("2\n1 0\n5 0\n", rd), 3U);
    EXPECT_EQ(parse_error_line("", rd), 0U);
}

TEST(ConditionFile, RoundTripAndErrors) {
    ConditionFile file{5, 2, 3, Condition{{{2, 0, 2}, true}, {{4, 1, 0}, false}}};
    std::stringstream text;
    write_condition_file(text, file);
    const auto back = read_condition_file(text);
    EXPECT_EQ(back.universe, 5U);
    EXPECT_EQ(back.rows, 2U);
    EXPECT_EQ(back.bits, 3U);
    EXPECT_EQ(back.condition, file.condition);

    auto rd = [](std::istream& in) { (void)read_condition_file(in); };
    EXPECT_EQ(parse_error_line("box 5 1 3\n2 0 3 1\n", rd), 2U);
    EXPECT_EQ(parse_error_line("box 5 1 3\n2 0 1 2\n", rd), 2U);
    EXPECT_EQ(parse_error_line("box 5 1\n", rd), 1U);
    EXPECT_EQ(parse_error_line("box 5 1 3\n\n2 0 1 1\n2 0 1 0\n", rd), 4U);
}

TEST(SchemeFile, RoundTripAndErrors) {
    const auto forest = PredecessorForest::from_pairs(4, {{1, 0}, {2, 0}, {3, 1}});
    const PacketScheme scheme(Window(forest, {0, 1}),
                              {{0, {Packet(Condition{{{0, 0, 1}, true}}, forest),
                                    Packet(Condition{{{1, 1, 0}, false}, {{0, 0, 0}, true}}, forest)}},
                               {3, {Packet(Condition{}, forest)}}});
    std::stringstream text;
    write_scheme(text, scheme);
    EXPECT_EQ(text.str(), "support: 0 1\n0: {0 0 0 1; 1 1 0 0} {0 0 1 1}\n3: {}\n");
    EXPECT_EQ(read_scheme(text, forest), scheme);

    auto rd = [&](std::istream& in) { (void)read_scheme(in, forest); };
    EXPECT_EQ(parse_error_line("support: 1\n", rd), 1U);
    EXPECT_EQ(parse_error_line("support: 0\n0: {2 0 0 1}\n", rd), 2U);
    EXPECT_EQ(parse_error_line("support: 0\n0: {0 0 0}\n", rd), 2U);
    EXPECT_EQ(parse_error_line("support: 0\n\n0: {0 0 0 1\n", rd), 3U);
}

TEST(CodeFile, RoundTrip) {
    Rng rng(81);
    for (int t = 0; t < 30; ++t) {
        const auto box = random_box(rng, 12);
        const auto a = random_subwindow(box.nodes(), rng);
        const auto code = two_layer_code(normalize(random_supported_name(box, a, rng), a, box), box);
        std::stringstream text;
        write_code(text, code);
        const auto back = read_code(text, box.forest());
        EXPECT_EQ(back.box, code.box);
        EXPECT_EQ(back.support, code.support);
        EXPECT_EQ(back.packet_indices, code.packet_indices);
        EXPECT_EQ(back.enumeration, "lex-v1");
    }
}

TEST(CodeFile, HeaderShape) {
    const auto forest = PredecessorForest::from_pairs(2, {{1, 0}});
    const auto box = CoordinateBox::full(forest, 1, 1);
    const PacketScheme scheme(Window(forest, {0}), {{1, {Packet(Condition{{{0, 0, 0}, true}}, forest)}}});
    std::stringstream text;
    write_code(text, two_layer_code(scheme, box));
    EXPECT_EQ(text.str().substr(0, text.str().find('\n')), "code lex-v1 box nodes=0,1 rows=1 bits=1");
    EXPECT_NE(text.str().find("\n1: "), std::string::npos);
}

TEST(PartitionFile, RoundTripAndErrors) {
    const TranslationPartition p(3, {0, 1, 2, 3, 0, 1, 2, 3});
    std::stringstream text;
    write_partition(text, p);
    const auto back = read_partition(text);
    EXPECT_EQ(back.labels(), p.labels());

    std::istringstream first_coordinate("2\n00 0\n10 1\n01 0\n11 1\n");
    const auto fc = read_partition(first_coordinate);
    EXPECT_EQ(fc.labels(), (std::vector<std::uint32_t>{0, 1, 0, 1}));

    auto rd = [](std::istream& in) { (void)read_partition(in); };
    EXPECT_EQ(parse_error_line("2\n00 0\n1 1\n", rd), 3U);
    EXPECT_EQ(parse_error_line("2\n00 0\n00 1\n", rd), 3U);
    EXPECT_EQ(parse_error_line("1\n0 0\n", rd), 2U);
}
