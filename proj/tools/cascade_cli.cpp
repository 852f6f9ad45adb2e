// cascade: command-line front end for the cascade library.
//
//   cascade forest gen --size N --seed S [--out F]
//   cascade forest closure --in F --set "3,5"
//   cascade starspan --in F --window "0,1" --target 10 [--matrix]
//   cascade verify <id> | --all   [--seed --trials --exhaustive --max-window --dim --box N,R,B]
//   cascade demo no-selector --in COND --support "0" [--row i] [--forest F | --seed S]
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 capacity error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cascade/cascade.hpp"

namespace {

using namespace cascade;

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;
constexpr int kCapacity = 3;

class UsageError : public Error {
public:
    using Error::Error;
};

PredecessorForest load_forest(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open forest file '" + path + "'");
    }
    return read_forest(in);
}

std::vector<bool> parse_bits(const std::string& text) {
    std::vector<bool> bits;
    for (char c : text) {
        if (c == '0' || c == '1') {
            bits.push_back(c == '1');
        } else if (c != ' ' && c != ',') {
            throw UsageError("target must be a 0/1 string, got '" + text + "'");
        }
    }
    return bits;
}

struct ForestGenArgs {
    std::size_t size = 0;
    std::uint64_t seed = 0;
    std::string out;
};

struct ForestClosureArgs {
    std::string in;
    std::string set;
};

struct StarspanArgs {
    std::string in;
    std::string window;
    std::string target;
    bool matrix = false;
};

struct VerifyArgs {
    std::string id;
    bool all = false;
    std::uint64_t seed = 1;
    std::optional<std::size_t> trials;
    bool exhaustive = false;
    std::optional<std::size_t> max_window;
    std::optional<std::size_t> dim;
    std::string box;
};

struct DemoArgs {
    std::string in;
    std::string support;
    Row row = 0;
    std::string forest;
    std::uint64_t seed = 1;
};

int run_forest_gen(const ForestGenArgs& a) {
    const auto forest = random_forest(a.size, a.seed);
    if (a.out.empty()) {
        write_forest(std::cout, forest);
        return kOk;
    }
    std::ofstream out(a.out);
    if (!out) {
        throw UsageError("cannot write '" + a.out + "'");
    }
    write_forest(out, forest);
    return kOk;
}

int run_forest_closure(const ForestClosureArgs& a) {
    const auto forest = load_forest(a.in);
    const auto closure = rho_closure(forest, parse_node_list(a.set));
    if (!closure.empty()) {
        std::cout << format_nodes(closure.nodes()) << '\n';
    }
    return kOk;
}

int run_starspan(const StarspanArgs& a) {
    const auto forest = load_forest(a.in);
    const Window k(forest, parse_node_list(a.window));
    if (k.empty()) {
        throw UsageError("window must be nonempty");
    }
    const auto bits = parse_bits(a.target);
    if (bits.size() != k.size()) {
        throw UsageError("target has " + std::to_string(bits.size()) + " entries, window has " +
                         std::to_string(k.size()));
    }
    F2Vector target(k);
    for (std::size_t j = 0; j < bits.size(); ++j) {
        target.set_at(j, bits[j]);
    }
    const auto coefficients = solve_star_span(k, target);
    const auto check = combine_stars(k, coefficients);
    std::cout << format_nodes(coefficients) << '\n';
    std::cout << "reconstruction: " << check.to_string() << (check == target ? " (verified)" : " (MISMATCH)")
              << '\n';
    if (a.matrix) {
        std::cout << export_matrix(star_matrix(k));
    }
    return check == target ? kOk : kVerificationFailed;
}

BoxShape parse_box(const std::string& text) {
    std::vector<std::uint64_t> parts;
    std::string token;
    for (char c : text + ",") {
        if (c == ',') {
            parts.push_back(detail::parse_unsigned(token, 1));
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    if (parts.size() != 3 || parts[0] == 0 || parts[1] == 0 || parts[2] == 0) {
        throw UsageError("--box expects three positive integers N,R,B");
    }
    return {parts[0], static_cast<Row>(parts[1]), static_cast<Bit>(parts[2])};
}

int run_verify(const VerifyArgs& a) {
    if (a.all == !a.id.empty()) {
        throw UsageError("verify takes exactly one of <id> or --all");
    }
    VerifyOptions options;
    options.seed = a.seed;
    options.trials = a.trials;
    options.exhaustive = a.exhaustive;
    options.max_window = a.max_window;
    options.dim = a.dim;
    if (!a.box.empty()) {
        options.box = parse_box(a.box);
    }
    std::vector<std::string> ids;
    if (a.all) {
        ids.assign(verification_ids().begin(), verification_ids().end());
    } else {
        ids.push_back(a.id);
    }
    bool ok = true;
    for (const auto& id : ids) {
        const auto report = run_verification(id, options);
        std::cout << report.to_text() << std::flush;
        ok = ok && report.ok();
    }
    return ok ? kOk : kVerificationFailed;
}

int run_demo_no_selector(const DemoArgs& a) {
    std::ifstream in(a.in);
    if (!in) {
        throw UsageError("cannot open condition file '" + a.in + "'");
    }
    const auto file = read_condition_file(in);
    const auto forest = a.forest.empty() ? random_forest(file.universe, a.seed) : load_forest(a.forest);
    if (forest.size() != file.universe) {
        throw UsageError("forest universe " + std::to_string(forest.size()) + " does not match the box universe " +
                         std::to_string(file.universe));
    }
    const Window support(forest, parse_node_list(a.support));
    const auto box = CoordinateBox::full(forest, file.rows, file.bits);
    const auto witness = swap_witness(file.condition, support, a.row, box);
    std::cout << format_swap_witness(witness);
    return witness.certificate.all_pass() ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cascade toolkit: forests, star spans, automorphisms and verification suites"};
    app.require_subcommand(1);

    auto* forest_cmd = app.add_subcommand("forest", "generate forests or compute closures");
    forest_cmd->require_subcommand(1);
    ForestGenArgs gen;
    auto* gen_cmd = forest_cmd->add_subcommand("gen", "random regressive forest");
    gen_cmd->add_option("--size", gen.size, "universe size N")->required();
    gen_cmd->add_option("--seed", gen.seed, "random seed")->required();
    gen_cmd->add_option("--out", gen.out, "output file (stdout if omitted)");
    ForestClosureArgs closure;
    auto* closure_cmd = forest_cmd->add_subcommand("closure", "rho-closure of a node set");
    closure_cmd->add_option("--in", closure.in, "forest file")->required();
    closure_cmd->add_option("--set", closure.set, "nodes, e.g. \"3,5\"")->required();

    StarspanArgs span;
    auto* span_cmd = app.add_subcommand("starspan", "express a target vector as a sum of star vectors");
    span_cmd->add_option("--in", span.in, "forest file")->required();
    span_cmd->add_option("--window", span.window, "rho-closed window, e.g. \"0,1\"")->required();
    span_cmd->add_option("--target", span.target, "0/1 entries in ascending node order")->required();
    span_cmd->add_flag("--matrix", span.matrix, "also print the star matrix");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("id", verify.id, "suite id");
    verify_cmd->add_flag("--all", verify.all, "run every suite");
    verify_cmd->add_option("--seed", verify.seed, "random seed");
    verify_cmd->add_option("--trials", verify.trials, "number of random trials");
    verify_cmd->add_flag("--exhaustive", verify.exhaustive, "prefer exhaustive sweeps");
    verify_cmd->add_option("--max-window", verify.max_window, "largest window or universe");
    verify_cmd->add_option("--dim", verify.dim, "largest dimension for dyadic");
    verify_cmd->add_option("--box", verify.box, "coordinate box N,R,B");

    DemoArgs demo;
    auto* demo_cmd = app.add_subcommand("demo", "demonstrations");
    demo_cmd->require_subcommand(1);
    auto* nosel_cmd = demo_cmd->add_subcommand("no-selector", "print a certified swap witness");
    nosel_cmd->add_option("--in", demo.in, "condition file")->required();
    nosel_cmd->add_option("--support", demo.support, "rho-closed support A")->required();
    nosel_cmd->add_option("--row", demo.row, "row index i");
    nosel_cmd->add_option("--forest", demo.forest, "forest file (random forest from --seed if omitted)");
    nosel_cmd->add_option("--seed", demo.seed, "seed for the random forest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen_cmd) {
            return run_forest_gen(gen);
        }
        if (*closure_cmd) {
            return run_forest_closure(closure);
        }
        if (*span_cmd) {
            return run_starspan(span);
        }
        if (*verify_cmd) {
            return run_verify(verify);
        }
        if (*nosel_cmd) {
            return run_demo_no_selector(demo);
        }
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kCapacity;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
