#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reppart/reppart.hpp"

namespace reppart::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_counterexample = 2;

// Relative output paths are resolved under $REPPART_OUTPUT_DIR when it is set.
inline std::filesystem::path output_path(const std::string& out) {
    std::filesystem::path p(out);
    if (const char* dir = std::getenv("REPPART_OUTPUT_DIR"); dir && *dir && p.is_relative())
        p = std::filesystem::path(dir) / p;
    return p;
}

inline void emit(const std::string& text, const std::string& out_file, std::ostream& out) {
    if (out_file.empty()) {
        out << text;
        return;
    }
    const auto path = output_path(out_file);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + path.string());
    f << text;
}

struct NamedSets {
    std::vector<std::pair<std::string, BoundedSet>> sets;
};

// Parses a family name: s1t1:<l>, s2t2:<l>, s1t1+1:<l>, ef:<u>, xy, uv.
inline NamedSets build_named(const std::string& name, std::size_t bound) {
    if (name == "uv") {
        auto [U, V] = build_evil_odious(bound);
        return {{{"U", std::move(U)}, {"V", std::move(V)}}};
    }
    if (name == "xy") {
        auto [X, Y] = build_XY(bound);
        return {{{"X", std::move(X)}, {"Y", std::move(Y)}}};
    }
    const auto colon = name.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("unknown family '" + name + "'");
    const auto tag = name.substr(0, colon);
    const auto param = static_cast<unsigned>(detail::parse_size(name.substr(colon + 1), "family parameter"));
    if (tag == "ef") {
        auto [E, F] = build_EF(param);
        return {{{"E", std::move(E)}, {"F", std::move(F)}}};
    }
    auto b = build_family({parse_family_tag(tag), param}, bound);
    return {{{"A", std::move(b.A)}, {"B", std::move(b.B)}, {"T", std::move(b.T)}}};
}

inline std::string format_named(const NamedSets& named) {
    std::string text;
    for (const auto& [label, s] : named.sets) text += "# " + label + "\n" + format_set_literal(s);
    return text;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline nlohmann::json outcome_json(const ExtensionOutcome& o, const std::optional<Family>& family) {
    nlohmann::json j = {{"r", o.progression.r()},
                        {"m", o.progression.m()},
                        {"bound", o.bound},
                        {"anchor", o.anchor},
                        {"status", status_name(o.status)},
                        {"frontier", o.frontier},
                        {"family", family ? nlohmann::json(family_name(*family)) : nlohmann::json(nullptr)},
                        {"A", o.A.elements()},
                        {"B", o.B.elements()},
                        {"contradiction", nullptr}};
    if (o.contradiction)
        j["contradiction"] = {{"sum", o.contradiction->sum},
                              {"position", o.contradiction->position},
                              {"forced_value", o.contradiction->forced_value}};
    return j;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Partitions of N minus a progression with equal representation functions"};
    app.require_subcommand(1);

    std::string family, out_file, set_file, emit_mode = "sets", lemma = "all", profile = "quick";
    std::size_t bound = 4096, max_n = 0, r = 0, m = 2, m_min = 2, m_max = 33, r_factor = 2;
    unsigned threads = 0;
    bool has_max_n = false;

    auto* build = app.add_subcommand("build", "materialize a named set family as set literals");
    build->add_option("--family", family, "s1t1:<l>, s2t2:<l>, s1t1+1:<l>, ef:<u>, xy or uv")->required();
    build->add_option("--bound", bound, "exclusive upper limit")->check(CLI::Range(std::size_t{4}, std::size_t{1} << 30));
    build->add_option("--out", out_file, "write to a file instead of stdout");

    auto* repfn = app.add_subcommand("repfn", "representation-function CSV for a set or a pair");
    auto* set_opt = repfn->add_option("--set-file", set_file, "set literal file: CSV n,R1,R2,R3");
    auto* fam_opt = repfn->add_option("--family", family, "pair family: CSV n,R2_A,R2_B,equal");
    set_opt->excludes(fam_opt);
    repfn->add_option("--bound", bound, "window for --family")->check(CLI::Range(std::size_t{4}, std::size_t{1} << 24));
    repfn->add_option("--max-n", max_n, "last n to report (default bound - 1)");
    repfn->add_option("--out", out_file, "write to a file instead of stdout");

    auto* solve = app.add_subcommand("solve", "forced extension for the progression r + m k");
    solve->add_option("--r", r, "progression offset")->required();
    solve->add_option("--m", m, "progression modulus (>= 2)")->required()->check(CLI::Range(std::size_t{2}, std::size_t{1} << 30));
    solve->add_option("--bound", bound, "exclusive upper limit")->check(CLI::Range(std::size_t{4}, std::size_t{1} << 24));
    solve->add_option("--emit", emit_mode, "sets or json")->check(CLI::IsMember({"sets", "json"}));

    auto* classify = app.add_subcommand("classify", "classify every (r, m) cell of a grid");
    classify->add_option("--m-min", m_min, "smallest modulus")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
    classify->add_option("--m-max", m_max, "largest modulus")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
    classify->add_option("--r-max-factor", r_factor, "r ranges over [0, factor * m]");
    classify->add_option("--bound", bound, "exclusive upper limit")->check(CLI::Range(std::size_t{4}, std::size_t{1} << 24));
    classify->add_option("--threads", threads, "worker threads (0: all cores)");
    classify->add_option("--out", out_file, "CSV output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "run the identity and classification checks");
    std::vector<std::string> lemma_choices = lemma_ids();
    lemma_choices.emplace_back("all");
    verify->add_option("--lemma", lemma, "check id or all")->check(CLI::IsMember(lemma_choices));
    verify->add_option("--bound-profile", profile, "quick or full")->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--out", out_file, "JSON report file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return exit_usage;
    }
    has_max_n = repfn->count("--max-n") > 0;

    try {
        if (build->parsed()) {
            emit(format_named(build_named(family, bound)), out_file, out);
            return exit_ok;
        }

        if (repfn->parsed()) {
            std::ostringstream csv;
            if (!set_file.empty()) {
                const auto s = parse_set_literal(read_file(set_file));
                if (s.bound() == 0) throw std::invalid_argument("empty window");
                const std::size_t N = has_max_n ? max_n : s.bound() - 1;
                const auto p1 = rep_profile(s, N, RepVariant::r1), p2 = rep_profile(s, N, RepVariant::r2),
                           p3 = rep_profile(s, N, RepVariant::r3);
                csv << "n,R1,R2,R3\n";
                for (std::size_t n = 0; n <= N; ++n)
                    csv << n << ',' << p1.values[n] << ',' << p2.values[n] << ',' << p3.values[n] << '\n';
            } else if (!family.empty()) {
                const auto named = build_named(family, bound);
                const auto& a = named.sets[0].second;
                const auto& b = named.sets[1].second;
                const std::size_t N = has_max_n ? max_n : a.bound() - 1;
                const auto pa = r2_profile(a, N), pb = r2_profile(b, N);
                csv << "n,R2_A,R2_B,equal\n";
                for (std::size_t n = 0; n <= N; ++n)
                    csv << n << ',' << pa.values[n] << ',' << pb.values[n] << ','
                        << (pa.values[n] == pb.values[n] ? 1 : 0) << '\n';
            } else {
                throw std::invalid_argument("repfn needs --set-file or --family");
            }
            emit(csv.str(), out_file, out);
            return exit_ok;
        }

        if (solve->parsed()) {
            const ProgressionSpec p(r, m);
            const auto o = forced_extend(p, bound);
            std::optional<Family> fam;
            if (o.status == ExtensionStatus::completed) fam = match_family(o, p, WeightSequence::max_l).family;
            if (emit_mode == "json") {
                out << outcome_json(o, fam).dump(2) << '\n';
                return exit_ok;
            }
            out << "status=" << status_name(o.status) << '\n';
            if (o.contradiction)
                out << "contradiction_at=" << o.contradiction->sum << " position=" << o.contradiction->position
                    << " forced_value=" << o.contradiction->forced_value << '\n';
            else
                out << "family=" << (fam ? family_name(*fam) : "none") << '\n';
            out << format_named({{{"A", o.A}, {"B", o.B}}});
            return exit_ok;
        }

        if (classify->parsed()) {
            const auto records = classify_grid({m_min, m_max, r_factor, bound, threads});
            std::ostringstream csv;
            write_classification_csv(csv, records);
            emit(csv.str(), out_file, out);
            std::size_t flagged = 0;
            for (const auto& rec : records)
                if (rec.flagged()) {
                    ++flagged;
                    err << "survivor outside the known families: r=" << rec.r << " m=" << rec.m
                        << " (raise --bound)\n";
                }
            return flagged ? exit_counterexample : exit_ok;
        }

        if (verify->parsed()) {
            const auto report = run_suite(profile == "full" ? BoundProfile::full : BoundProfile::quick, lemma);
            for (const auto& l : report.lemmas)
                out << (l.ok() ? "PASS " : "FAIL ") << l.id << ' ' << l.passed << '/' << l.instances << '\n';
            if (!out_file.empty()) emit(to_json(report).dump(2) + "\n", out_file, out);
            return report.all_passed() ? exit_ok : exit_counterexample;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace reppart::cli
