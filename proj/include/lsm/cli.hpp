#pragma once

#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lsm/verify.hpp"

namespace lsm {

namespace detail {

/// Base used when echoing a checked word back: 1-based unless the letter 0
/// occurs in the input, mirroring the parser's inference rule (including its
/// outer-whitespace trim).
inline int detect_base(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text.find_first_of(" \t\n\r,") != std::string_view::npos) {
        std::string buf(text);
        std::replace(buf.begin(), buf.end(), ',', ' ');
        std::istringstream in(buf);
        std::string token;
        while (in >> token)
            if (std::stol(token) == 0) return 0;
        return 1;
    }
    return text.find('0') != std::string_view::npos ? 0 : 1;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline nlohmann::json witness_json(const Word& w, const OverlapWitness& wit, int base) {
    return {
        {"start", wit.start + 1},
        {"period", wit.period},
        {"c", w[wit.start] + base},
        {"x", format_word(w.sub(wit.start + 1, wit.period - 1), base)},
    };
}

inline nlohmann::json report_json(const VerificationReport& r) {
    nlohmann::json j = {
        {"square_id", r.square_id},     {"order", r.order},
        {"seed", r.seed + 1},           {"length", r.prefix_length},
        {"overlap_free", r.overlap_free}, {"detector", r.detector},
        {"elapsed_seconds", r.elapsed_seconds},
    };
    if (r.witness) {
        j["witness"] = {{"start", r.witness->start + 1}, {"period", r.witness->period}};
        j["witness_certified"] = r.witness_certified;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

}  // namespace detail

/// Command-line front end. Arguments are argv[1..]; streams receive what the
/// binary would print. Exit codes: 0 = success / property holds, 1 = overlap
/// witness found or a control failed, 2 = unusable input.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fixed points of Latin-square morphisms: generation, repetition "
                 "checking, enumeration, structure identities, verification"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "print a prefix of a fixed point");
    std::string gen_square;
    int gen_cayley = 0;
    long long gen_seed = 0;
    std::uint64_t gen_length = 0;
    std::string gen_sep;
    auto* gen_src = gen->add_option_group("source");
    gen_src->add_option("--square", gen_square, "row table file, letters 1-based");
    gen_src->add_option("--cayley", gen_cayley, "Cayley table of Z/nZ, letters 0-based")
        ->check(CLI::Range(1, 1 << 20));
    gen_src->require_option(1);
    gen->add_option("--seed", gen_seed, "starting letter, in the source's base")->required();
    gen->add_option("--length", gen_length, "prefix length")->required();
    gen->add_option("--sep", gen_sep, "separator between letters");

    // check
    auto* check = app.add_subcommand("check", "scan a finite word for overlaps");
    std::string check_word, check_file;
    bool check_stdin = false, check_json = false;
    auto* check_src = check->add_option_group("input");
    check_src->add_option("--word", check_word, "word as digits or separated numbers");
    check_src->add_flag("--stdin", check_stdin, "read the word from standard input");
    check_src->add_option("--file", check_file, "read the word from a file");
    check_src->require_option(1);
    check->add_flag("--json", check_json, "machine-readable report");

    // enumerate
    auto* enumerate = app.add_subcommand(
        "enumerate", "walk the natural-first-column Latin squares of one order");
    int enum_order = 0;
    bool enum_count_only = false;
    std::string enum_emit;
    enumerate->add_option("--order", enum_order, "square order")
        ->required()
        ->check(CLI::Range(1, 8));
    auto* enum_count_flag =
        enumerate->add_flag("--count-only", enum_count_only, "print only the count");
    auto* enum_emit_opt =
        enumerate->add_option("--emit", enum_emit, "write each square to this directory");
    enum_count_flag->excludes(enum_emit_opt);

    // tiles
    auto* tiles_cmd = app.add_subcommand("tiles", "cut a fixed point into rows");
    std::string tiles_square;
    long long tiles_seed = 0;
    std::uint64_t tiles_count = 0;
    tiles_cmd->add_option("--square", tiles_square, "row table file")->required();
    tiles_cmd->add_option("--seed", tiles_seed, "starting letter, 1-based")->required();
    tiles_cmd->add_option("--count", tiles_count, "number of tiles")->required();

    // decimate
    auto* decimate_cmd =
        app.add_subcommand("decimate", "take every n-th letter of a fixed point");
    std::string dec_square;
    long long dec_seed = 0;
    int dec_offset = 0;
    std::uint64_t dec_length = 0;
    bool dec_check_pi = false;
    decimate_cmd->add_option("--square", dec_square, "row table file")->required();
    decimate_cmd->add_option("--seed", dec_seed, "starting letter, 1-based")->required();
    decimate_cmd->add_option("--offset", dec_offset, "column to keep, 1-based")->required();
    decimate_cmd->add_option("--length", dec_length, "output length")->required();
    decimate_cmd->add_flag("--check-pi", dec_check_pi,
                           "compare against the column permutation of the prefix");

    // verify
    auto* verify_cmd =
        app.add_subcommand("verify", "certify overlap-freeness of fixed-point prefixes");
    int verify_order = 0;
    std::string verify_square;
    std::uint64_t verify_length = 10000;
    unsigned verify_jobs = 0;
    bool verify_json = false;
    auto* verify_src = verify_cmd->add_option_group("target");
    verify_src->add_option("--order", verify_order, "sweep every square of this order")
        ->check(CLI::Range(2, 8));
    verify_src->add_option("--square", verify_square, "verify one square, every seed");
    verify_src->require_option(1);
    verify_cmd->add_option("--length", verify_length, "prefix length per word");
    verify_cmd->add_option("--jobs", verify_jobs, "worker threads, 0 = all cores");
    verify_cmd->add_flag("--json", verify_json, "machine-readable report");

    // controls
    auto* controls_cmd =
        app.add_subcommand("controls", "run the defective tables that must fail");
    std::uint64_t controls_length = 200;
    bool controls_json = false;
    controls_cmd->add_option("--length", controls_length, "prefix length per control");
    controls_cmd->add_flag("--json", controls_json, "machine-readable report");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(gen)) {
            Morphism m = Morphism::identity(1);
            int base = 0;
            if (!gen_square.empty()) {
                m = LatinSquare::parse(detail::read_file(gen_square)).to_morphism();
                base = 1;
            } else {
                m = LatinSquare::cayley_zn(gen_cayley).to_morphism();
            }
            const Letter seed = static_cast<Letter>(gen_seed - base);
            require_letter(m.alphabet_size(), seed);
            const Word prefix = fixed_point_prefix(m, seed, gen_length);
            out << format_word(prefix, base, gen_sep) << "\n";
            return 0;
        }

        if (app.got_subcommand(check)) {
            std::string text = check_word;
            if (check_stdin) {
                std::ostringstream buf;
                buf << std::cin.rdbuf();
                text = buf.str();
            } else if (!check_file.empty()) {
                text = detail::read_file(check_file);
            }
            const Word w = parse_word(text);
            const int base = detail::detect_base(text);
            const auto wit = find_overlap_fast(w);
            if (check_json) {
                nlohmann::json j = {
                    {"length", w.size()},
                    {"alphabet", w.alphabet_size},
                    {"overlap_free", !wit.has_value()},
                    {"witness", wit ? detail::witness_json(w, *wit, base)
                                    : nlohmann::json(nullptr)},
                };
                out << j.dump(2) << "\n";
            } else if (wit) {
                out << witness_line(w, *wit, base) << "\n";
            } else {
                out << "overlap-free length=" << w.size() << "\n";
            }
            return wit ? 1 : 0;
        }

        if (app.got_subcommand(enumerate)) {
            NaturalSquareEnumerator walk(enum_order);
            std::uint64_t count = 0;
            if (!enum_emit.empty()) std::filesystem::create_directories(enum_emit);
            while (auto sq = walk.next()) {
                ++count;
                if (enum_count_only) continue;
                if (!enum_emit.empty()) {
                    const auto path = std::filesystem::path(enum_emit) /
                                      ("order" + std::to_string(enum_order) + "_" +
                                       std::to_string(count) + ".txt");
                    std::ofstream file(path);
                    if (!file) throw ParseError("cannot write " + path.string());
                    file << sq->square().to_text();
                } else {
                    if (count > 1) out << "\n";
                    out << sq->square().to_text();
                }
            }
            if (enum_count_only) out << count << "\n";
            if (!enum_emit.empty())
                out << "wrote " << count << " squares to " << enum_emit << "\n";
            return 0;
        }

        if (app.got_subcommand(tiles_cmd)) {
            const LatinSquare sq = LatinSquare::parse(detail::read_file(tiles_square));
            const Letter seed = static_cast<Letter>(tiles_seed - 1);
            require_letter(sq.order(), seed);
            FixedPointStream stream(sq.to_morphism(), seed);
            std::string line = "|";
            for (const Word& tile : tiles(stream, tiles_count)) {
                line += format_word(tile, 1);
                line += "|";
            }
            out << line << "\n";
            return 0;
        }

        if (app.got_subcommand(decimate_cmd)) {
            const LatinSquare sq = LatinSquare::parse(detail::read_file(dec_square));
            const Letter seed = static_cast<Letter>(dec_seed - 1);
            require_letter(sq.order(), seed);
            const Morphism m = sq.to_morphism();
            const int n = sq.order();
            if (dec_offset < 1 || dec_offset > n)
                throw ParseError("offset must be in [1, " + std::to_string(n) + "]");
            const Word block = fixed_point_prefix(m, seed, dec_length * n);
            const Word picked = decimate(block, dec_offset, n);
            out << format_word(picked, 1) << "\n";
            if (!dec_check_pi) return 0;
            const NaturalLatinSquare natural(sq);
            const Word prefix = fixed_point_prefix(m, seed, dec_length);
            const Word mapped = column_permutation(natural, dec_offset).apply(prefix);
            if (picked == mapped) {
                out << "pi-identity: ok column=" << dec_offset
                    << " length=" << dec_length << "\n";
                return 0;
            }
            out << "pi-identity: MISMATCH column=" << dec_offset
                << " length=" << dec_length << "\n";
            return 1;
        }

        if (app.got_subcommand(verify_cmd)) {
            if (!verify_square.empty()) {
                const NaturalLatinSquare sq(
                    LatinSquare::parse(detail::read_file(verify_square)));
                std::vector<VerificationReport> reports;
                for (Letter seed = 0; seed < sq.order(); ++seed)
                    reports.push_back(
                        verify_fixed_point(sq, seed, verify_length, verify_square));
                bool clean = true;
                nlohmann::json lines = nlohmann::json::array();
                for (const auto& r : reports) {
                    clean = clean && r.overlap_free;
                    if (verify_json)
                        lines.push_back(detail::report_json(r));
                    else
                        out << to_line(r) << "\n";
                }
                if (verify_json)
                    out << nlohmann::json{{"reports", lines}, {"pass", clean}}.dump(2)
                        << "\n";
                else
                    out << (clean ? "verify: pass" : "verify: FAIL") << "\n";
                return clean ? 0 : 1;
            }
            const auto t0 = std::chrono::steady_clock::now();
            const SweepSummary sweep = sweep_order(verify_order, verify_length, verify_jobs);
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
            if (verify_json) {
                nlohmann::json fails = nlohmann::json::array();
                for (const auto& r : sweep.failures) fails.push_back(detail::report_json(r));
                out << nlohmann::json{{"order", sweep.order},
                                      {"squares", sweep.squares},
                                      {"pairs", sweep.pairs},
                                      {"length", sweep.prefix_length},
                                      {"failures", fails},
                                      {"pass", sweep.failures.empty()},
                                      {"elapsed_seconds", elapsed}}
                              .dump(2)
                    << "\n";
            } else {
                for (const auto& r : sweep.failures) out << to_line(r) << "\n";
                out << "order=" << sweep.order << " squares=" << sweep.squares
                    << " pairs=" << sweep.pairs << " length=" << sweep.prefix_length
                    << " failures=" << sweep.failures.size() << " elapsed=" << elapsed
                    << "s\n";
            }
            return sweep.failures.empty() ? 0 : 1;
        }

        // controls
        const auto reports = negative_controls(controls_length);
        const bool pass = controls_pass(reports);
        if (controls_json) {
            nlohmann::json lines = nlohmann::json::array();
            for (const auto& r : reports) lines.push_back(detail::report_json(r));
            out << nlohmann::json{{"controls", lines}, {"pass", pass}}.dump(2) << "\n";
        } else {
            for (const auto& r : reports) out << to_line(r) << "\n";
            out << (pass ? "controls: pass" : "controls: FAIL") << "\n";
        }
        return pass ? 0 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace lsm
