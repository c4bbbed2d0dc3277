#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "circuit.hpp"
#include "circuit_expand.hpp"
#include "error.hpp"
#include "pipeline.hpp"
#include "resultant.hpp"
#include "slp_io.hpp"

namespace factorforge::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::parse, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Circuit load_circuit(const std::string& path) {
    try {
        return parse_circuit(read_file(path));
    } catch (const Error& e) {
        if (e.kind() == Errc::parse && e.line() > 0)
            fail(Errc::parse, path + ":" + std::to_string(e.line()) + ": " + e.what());
        throw;
    }
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::parse, "cannot write '" + path + "'");
    out << contents;
}

inline int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case Errc::parse:
        case Errc::structural:
        case Errc::domain:
        case Errc::capacity:
        case Errc::unsupported:
            return 2;
        default:
            return 1;
    }
}

inline std::uint64_t resolve_prime(std::uint64_t flag_value, bool flag_given) {
    if (flag_given) return flag_value;
    if (const char* env = std::getenv("FACTORFORGE_PRIME")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 2) return v;
        fail(Errc::parse, "FACTORFORGE_PRIME is not a valid prime literal");
    }
    return Fp::kMersenne61;
}

} // namespace detail

inline int run(int argc, const char* const* argv) {
    CLI::App app{"factorforge: arithmetic-circuit polynomial factorization over F_p"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t prime = Fp::kMersenne61;
    auto* prime_opt = app.add_option("--prime", prime, "field modulus (prime); overrides FACTORFORGE_PRIME");
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "RNG seed for all randomized steps");

    // factor
    auto* cmd_factor = app.add_subcommand("factor", "factor the polynomial computed by an SLP file");
    std::string factor_file, out_dir = ".";
    int trials = 20, budget = 4096, cap = 16;
    cmd_factor->add_option("file", factor_file, "input SLP file")->required();
    cmd_factor->add_option("--out", out_dir, "output directory for factor_i.slp and result.txt");
    cmd_factor->add_option("--trials", trials, "identity-test trials per verification");
    cmd_factor->add_option("--budget", budget, "recombination candidate budget");
    cmd_factor->add_option("--cap", cap, "total-degree cap");

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "check f = g*h by randomized identity testing");
    std::string vf, vg, vh;
    int vtrials = 20;
    cmd_verify->add_option("f_file", vf)->required();
    cmd_verify->add_option("g_file", vg)->required();
    cmd_verify->add_option("h_file", vh)->required();
    cmd_verify->add_option("--trials", vtrials, "number of random evaluation points");

    // expand
    auto* cmd_expand = app.add_subcommand("expand", "print the dense polynomial of each output");
    std::string expand_file;
    int expand_cap = 64;
    cmd_expand->add_option("file", expand_file)->required();
    cmd_expand->add_option("--cap", expand_cap, "degree cap for the expansion");

    // resultant
    auto* cmd_res = app.add_subcommand("resultant", "Sylvester matrix and resultant of two circuits");
    std::string rg, rh;
    int yvar_1based = 0;
    int res_cap = 64;
    cmd_res->add_option("g_file", rg)->required();
    cmd_res->add_option("h_file", rh)->required();
    cmd_res->add_option("--yvar", yvar_1based, "eliminated variable, 1-based as in the SLP format")->required();
    cmd_res->add_option("--cap", res_cap, "degree cap for the expansion");

    // eval
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a circuit at a point");
    std::string eval_file, point_text;
    cmd_eval->add_option("file", eval_file)->required();
    cmd_eval->add_option("--point", point_text, "comma-separated residues, one per variable")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        try {
            Fp::set_modulus(detail::resolve_prime(prime, prime_opt->count() > 0));
        } catch (const std::invalid_argument& e) {
            fail(Errc::parse, e.what());
        }

        if (*cmd_factor) {
            Circuit f = detail::load_circuit(factor_file);
            FactorConfig cfg;
            cfg.rng_seed = seed;
            cfg.trials = trials;
            cfg.budget = budget;
            cfg.degree_cap = cap;
            FactorizationResult res = factor(f, cfg);
            std::filesystem::create_directories(out_dir);
            for (std::size_t i = 0; i < res.factors.size(); ++i) {
                std::filesystem::path p =
                    std::filesystem::path(out_dir) / ("factor_" + std::to_string(i) + ".slp");
                detail::write_file(p.string(), serialize_circuit(res.factors[i].circuit));
            }
            std::string stats = stats_text(res);
            detail::write_file((std::filesystem::path(out_dir) / "result.txt").string(), stats);
            std::cout << stats;
            return 0;
        }

        if (*cmd_verify) {
            Circuit f = detail::load_circuit(vf);
            Circuit g = detail::load_circuit(vg);
            Circuit h = detail::load_circuit(vh);
            Rng rng(seed);
            bool ok = verify_split(f, g, h, vtrials, rng);
            std::cout << (ok ? "verified: f = g*h" : "rejected: f != g*h") << "\n";
            return ok ? 0 : 1;
        }

        if (*cmd_expand) {
            Circuit c = detail::load_circuit(expand_file);
            std::vector<DensePoly> polys = expand(c, expand_cap);
            for (std::size_t i = 0; i < polys.size(); ++i)
                std::cout << "output " << i << ": " << polys[i].to_string() << "\n";
            return 0;
        }

        if (*cmd_res) {
            Circuit gc = detail::load_circuit(rg);
            Circuit hc = detail::load_circuit(rh);
            if (yvar_1based < 1) fail(Errc::parse, "--yvar is 1-based");
            int yvar = yvar_1based - 1;
            DensePoly g = expand(gc, res_cap)[0];
            DensePoly h = expand(hc, res_cap)[0];
            if (g.degree_in(yvar) < 1 || h.degree_in(yvar) < 1)
                fail(Errc::domain, "both inputs need positive degree in the eliminated variable");
            SylvesterMatrix s = sylvester(y_coefficient_vector(g, yvar), y_coefficient_vector(h, yvar));
            std::cout << "sylvester " << s.dim() << " x " << s.dim() << "\n";
            for (int r = 0; r < s.dim(); ++r) {
                std::cout << "[";
                for (int c = 0; c < s.dim(); ++c)
                    std::cout << (c ? " | " : " ") << s.at(r, c).to_string();
                std::cout << " ]\n";
            }
            std::cout << "resultant = " << resultant_y(g, h, yvar).to_string() << "\n";
            return 0;
        }

        if (*cmd_eval) {
            Circuit c = detail::load_circuit(eval_file);
            std::vector<Fp> point;
            std::stringstream ss(point_text);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok.empty()) continue;
                char* end = nullptr;
                unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
                if (!end || *end != '\0') fail(Errc::parse, "bad point component '" + tok + "'");
                point.push_back(Fp(v));
            }
            if (point.size() != c.nvars())
                fail(Errc::structural, "point has " + std::to_string(point.size()) + " components, circuit has " +
                                           std::to_string(c.nvars()) + " variables");
            for (Fp v : c.eval(point)) std::cout << v.to_string() << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return detail::exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace factorforge::cli
