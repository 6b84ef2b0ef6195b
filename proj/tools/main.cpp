#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "parafermion/braid.hpp"
#include "parafermion/pauli.hpp"
#include "parafermion/rp.hpp"
#include "parafermion/tangle.hpp"
#include "parafermion/verify.hpp"

using namespace pf;

namespace {

nlohmann::json matrix_json(const DenseOperator& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (long i = 0; i < m.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (long j = 0; j < m.dim(); ++j) {
            auto z = m.at(i, j).to_complex();
            row.push_back({{"re", z.real()}, {"im", z.imag()}});
        }
        rows.push_back(row);
    }
    return rows;
}

void emit(const std::string& out_path, const nlohmann::json& j) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream os(out_path);
        if (!os) throw std::runtime_error("cannot open output file: " + out_path);
        os << j.dump(2) << "\n";
    }
}

std::vector<double> parse_betas(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parafermion planar algebra verification engine"};
    app.require_subcommand(1);
    app.fallthrough();

    int N = 0, m = 2;
    std::string mode_s = "exact";
    int zeta_sign = +1;
    double tol = 1e-9;
    uint64_t seed = 1;
    std::string out_path;
    app.add_option("--N", N, "para symmetry order (0 = suite default range)");
    app.add_option("--m", m, "strand/generator count bound");
    app.add_option("--mode", mode_s, "exact|approx")->check(CLI::IsMember({"exact", "approx"}));
    app.add_option("--zeta-sign", zeta_sign, "+1 or -1 (even N only)")
        ->check(CLI::IsMember({-1, 1}));
    app.add_option("--tol", tol, "numeric tolerance");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--out", out_path, "write the report/matrices to this file");

    auto* verify = app.add_subcommand("verify", "run identity suites and report per-identity");
    std::string suite = "all";
    int ensemble = 50;
    verify->add_option("--suite", suite, "pf|tl|sft|pauli|quadratic|braid|clifford|rp|tangle|all")
        ->check(CLI::IsMember(
            {"pf", "tl", "sft", "pauli", "quadratic", "braid", "clifford", "rp", "tangle", "all"}));
    verify->add_option("--ensemble", ensemble, "coupling matrices per (N,m) in the rp suite");

    auto* evalt = app.add_subcommand("eval-tangle", "evaluate a tangle word file");
    std::string tangle_file;
    evalt->add_option("file", tangle_file, "tangle DSL file")->required();

    auto* rp = app.add_subcommand("rp", "reflection positivity checks");
    std::string input_json, betas_s = "0,0.5,1";
    int rp_ensemble = 0;
    rp->add_option("--input", input_json, "coupling matrix JSON file");
    rp->add_option("--betas", betas_s, "comma separated beta grid");
    rp->add_option("--ensemble", rp_ensemble, "random ensemble size for the equivalence theorem");

    auto* pauli = app.add_subcommand("pauli", "emit parafermion Pauli matrices");
    std::string version_s = "q";
    pauli->add_option("--version", version_s, "q|q_inv")->check(CLI::IsMember({"q", "q_inv"}));

    auto* braid = app.add_subcommand("braid", "emit the braid matrices");

    auto* clifford = app.add_subcommand("clifford", "Clifford relations and enumeration");
    bool do_enum = false;
    long cap = 100000;
    clifford->add_flag("--enumerate", do_enum, "breadth-first projective closure");
    clifford->add_option("--cap", cap, "element cap for the closure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }
    Mode mode = mode_s == "exact" ? Mode::exact : Mode::approx;

    try {
        if (*verify) {
            SuiteOptions opt;
            opt.suite = suite;
            opt.n_min = N > 0 ? N : 2;
            opt.n_max = N > 0 ? N : 4;
            opt.m_max = m;
            opt.mode = mode;
            opt.zeta_sign = zeta_sign;
            opt.tol = tol;
            opt.seed = seed;
            opt.ensemble = ensemble;
            auto recs = run_suite(opt);
            emit(out_path, nlohmann::json::parse(records_to_json(recs)));
            for (const auto& r : recs)
                if (!r.pass)
                    std::cerr << "FAIL " << r.identity << " [" << r.params << "] " << r.note
                              << "\n";
            return all_pass(recs) ? 0 : 2;
        }
        if (*evalt) {
            std::ifstream is(tangle_file);
            if (!is) {
                std::cerr << "cannot open " << tangle_file << "\n";
                return 1;
            }
            std::stringstream buf;
            buf << is.rdbuf();
            TangleWord word = parse_tangle(buf.str(), mode, zeta_sign);
            TangleValue v = evaluate_tangle(word);
            nlohmann::json j;
            j["in"] = word.in_strands;
            j["out"] = word.out_strands;
            if (v.closed) {
                auto z = v.scalar.to_complex();
                j["scalar"] = {{"re", z.real()}, {"im", z.imag()}};
                if (word.ctx->exact()) j["exact"] = nlohmann::json::parse(scalar_to_json(v.scalar));
            } else {
                j["element"] = nlohmann::json::parse(pf_to_json(v.element));
                if (v.has_operator) j["operator"] = matrix_json(v.op);
            }
            emit(out_path, j);
            return 0;
        }
        if (*rp) {
            std::vector<double> betas = parse_betas(betas_s);
            if (!input_json.empty()) {
                std::ifstream is(input_json);
                if (!is) {
                    std::cerr << "cannot open " << input_json << "\n";
                    return 1;
                }
                std::stringstream buf;
                buf << is.rdbuf();
                nlohmann::json meta = nlohmann::json::parse(buf.str());
                auto ctx = make_context(meta.at("N").get<int>(), zeta_sign, Mode::approx, tol);
                CouplingMatrix J = coupling_from_json(ctx, buf.str());
                std::vector<PFElement> basis;
                for (const auto& I : all_multi_indices(ctx->N, J.m()))
                    basis.push_back(PFElement::monomial(ctx, J.m(), I, Scalar::one(ctx)));
                auto rep = rp_check(J, betas, basis, tol);
                nlohmann::json j;
                j["minimum"] = rep.minimum;
                j["positive"] = rep.positive;
                nlohmann::json entries = nlohmann::json::array();
                for (const auto& e : rep.entries)
                    entries.push_back(
                        {{"beta", e.beta}, {"x_index", e.x_index}, {"value", e.value}});
                j["entries"] = entries;
                emit(out_path, j);
                return rep.positive ? 0 : 2;
            }
            if (rp_ensemble > 0) {
                if (N < 2) {
                    std::cerr << "rp --ensemble requires --N\n";
                    return 1;
                }
                auto ctx = make_context(N, zeta_sign, Mode::approx, tol);
                std::mt19937_64 rng(seed);
                std::vector<CouplingMatrix> ens;
                for (int i = 0; i < rp_ensemble; ++i)
                    ens.push_back(random_coupling(ctx, m, rng, i % 2 ? -1 : +1));
                auto rep = theorem_equivalence(ens, betas, tol);
                nlohmann::json j;
                j["ensemble"] = rep.total;
                j["mismatches"] = rep.mismatches.size();
                emit(out_path, j);
                return rep.mismatches.empty() ? 0 : 2;
            }
            std::cerr << "rp needs --input or --ensemble\n";
            return 1;
        }
        if (*pauli) {
            if (N < 2) {
                std::cerr << "pauli requires --N\n";
                return 1;
            }
            auto ctx = make_context(N, zeta_sign, mode, tol);
            auto [X, Y, Z] =
                pauli_xyz(ctx, version_s == "q" ? PauliVersion::q : PauliVersion::q_inv);
            nlohmann::json j;
            j["N"] = N;
            j["version"] = version_s;
            j["X"] = matrix_json(X);
            j["Y"] = matrix_json(Y);
            j["Z"] = matrix_json(Z);
            emit(out_path, j);
            return 0;
        }
        if (*braid) {
            if (N < 2) {
                std::cerr << "braid requires --N\n";
                return 1;
            }
            CtxPtr ctx;
            nlohmann::json j;
            try {
                ctx = make_context(N, zeta_sign, mode, tol);
                ctx->omega_sqrt();
            } catch (const unrepresentable_error&) {
                ctx = make_context(N, zeta_sign, Mode::approx, tol);
                j["note"] = "omega square root not representable exactly; approx fallback";
            }
            auto pair = braid_matrices(ctx);
            j["N"] = N;
            j["pos"] = matrix_json(pair.pos);
            j["neg"] = matrix_json(pair.neg);
            emit(out_path, j);
            return 0;
        }
        if (*clifford) {
            if (N < 2) {
                std::cerr << "clifford requires --N\n";
                return 1;
            }
            auto ctx = make_context(N, zeta_sign, mode, tol);
            nlohmann::json j;
            j["N"] = N;
            if (do_enum) {
                auto rep = clifford_enumerate(ctx, cap);
                j["order"] = rep.order;
                j["closed"] = rep.closed;
                j["sl2_order"] = rep.sl2_order;
                j["order_matches_semidirect"] = rep.order_matches_semidirect;
                j["generators_verified"] = rep.adF_is_S && rep.adG_is_T;
            } else {
                auto [F, G] = fourier_gaussian(ctx);
                j["F"] = matrix_json(F);
                j["G"] = matrix_json(G);
            }
            emit(out_path, j);
            return 0;
        }
    } catch (const tangle_parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
