#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "parafermion/braid.hpp"
#include "parafermion/pauli.hpp"
#include "parafermion/rp.hpp"
#include "parafermion/tangle.hpp"
#include "parafermion/verify.hpp"

namespace py = pybind11;
using namespace pf;

namespace {

using CMatrix = std::vector<std::vector<std::complex<double>>>;

CMatrix to_matrix(const DenseOperator& m) {
    CMatrix out(m.dim(), std::vector<std::complex<double>>(m.dim()));
    for (long i = 0; i < m.dim(); ++i)
        for (long j = 0; j < m.dim(); ++j) out[i][j] = m.at(i, j).to_complex();
    return out;
}

Mode parse_mode(const std::string& s) {
    if (s == "exact") return Mode::exact;
    if (s == "approx") return Mode::approx;
    throw std::invalid_argument("mode must be 'exact' or 'approx'");
}

PauliVersion parse_version(const std::string& s) {
    if (s == "q") return PauliVersion::q;
    if (s == "q_inv") return PauliVersion::q_inv;
    throw std::invalid_argument("version must be 'q' or 'q_inv'");
}

}  // namespace

PYBIND11_MODULE(_parafermion, mod) {
    mod.doc() = "parafermion planar algebra verification engine";

    mod.def(
        "constants",
        [](int N, int sign) {
            auto ctx = make_context(N, sign);
            py::dict d;
            d["zeta"] = ctx->zeta().to_complex();
            d["q"] = ctx->q().to_complex();
            d["sqrt_n"] = ctx->sqrt_n().to_complex();
            d["omega"] = ctx->omega().to_complex();
            d["omega_sqrt"] = ctx->omega_sqrt().to_complex();
            return d;
        },
        py::arg("N"), py::arg("zeta_sign") = 1);

    mod.def(
        "pauli",
        [](int N, const std::string& version, int sign) {
            auto ctx = make_context(N, sign);
            auto t = pauli_xyz(ctx, parse_version(version));
            return py::make_tuple(to_matrix(t.X), to_matrix(t.Y), to_matrix(t.Z));
        },
        py::arg("N"), py::arg("version") = "q", py::arg("zeta_sign") = 1);

    mod.def(
        "quaternions",
        [](int N, const std::string& version, int sign) {
            auto ctx = make_context(N, sign);
            auto t = quaternions(ctx, parse_version(version));
            return py::make_tuple(to_matrix(t.i), to_matrix(t.j), to_matrix(t.k));
        },
        py::arg("N"), py::arg("version") = "q", py::arg("zeta_sign") = 1);

    mod.def(
        "fourier_gaussian",
        [](int N, int sign) {
            auto ctx = make_context(N, sign);
            auto t = fourier_gaussian(ctx);
            return py::make_tuple(to_matrix(t.F), to_matrix(t.G));
        },
        py::arg("N"), py::arg("zeta_sign") = 1);

    mod.def(
        "braid",
        [](int N, int sign) {
            CtxPtr ctx;
            try {
                ctx = make_context(N, sign);
                ctx->omega_sqrt();
            } catch (const unrepresentable_error&) {
                ctx = make_context(N, sign, Mode::approx);
            }
            auto t = braid_matrices(ctx);
            return py::make_tuple(to_matrix(t.pos), to_matrix(t.neg));
        },
        py::arg("N"), py::arg("zeta_sign") = 1);

    mod.def(
        "jones_projection",
        [](int N, int m, int i, int sign) {
            auto ctx = make_context(N, sign);
            return to_matrix(jones_projection(ctx, m, i).jw());
        },
        py::arg("N"), py::arg("m"), py::arg("i"), py::arg("zeta_sign") = 1);

    mod.def(
        "clifford_enumerate",
        [](int N, long cap, int sign) {
            auto ctx = make_context(N, sign);
            auto rep = clifford_enumerate(ctx, cap);
            py::dict d;
            d["order"] = rep.order;
            d["closed"] = rep.closed;
            d["sl2_order"] = rep.sl2_order;
            d["order_matches_semidirect"] = rep.order_matches_semidirect;
            d["generators_verified"] = rep.adF_is_S && rep.adG_is_T;
            return d;
        },
        py::arg("N"), py::arg("cap") = 100000, py::arg("zeta_sign") = 1);

    mod.def(
        "eval_tangle",
        [](const std::string& text, const std::string& mode, int sign) -> py::object {
            TangleWord w = parse_tangle(text, parse_mode(mode), sign);
            TangleValue v = evaluate_tangle(w);
            if (v.closed) return py::cast(v.scalar.to_complex());
            py::dict d;
            d["in"] = w.in_strands;
            d["out"] = w.out_strands;
            d["element"] = pf_to_json(v.element);
            if (v.has_operator) d["operator"] = to_matrix(v.op);
            return d;
        },
        py::arg("text"), py::arg("mode") = "exact", py::arg("zeta_sign") = 1);

    mod.def(
        "loop_oracle",
        [](int N, const std::vector<std::tuple<int, int, int>>& labels, int sign) {
            auto ctx = make_context(N, sign);
            std::vector<LoopLabel> ls;
            for (const auto& [leg, power, winding] : labels) ls.push_back({leg, power, winding});
            return closed_loop_oracle(ctx, ls).to_complex();
        },
        py::arg("N"), py::arg("labels"), py::arg("zeta_sign") = 1);

    mod.def(
        "rp_equivalence",
        [](int N, int m, int ensemble, uint64_t seed, const std::vector<double>& betas,
           double tol) {
            auto ctx = make_context(N, +1, Mode::approx, 1e-9);
            std::mt19937_64 rng(seed);
            std::vector<CouplingMatrix> ens;
            for (int i = 0; i < ensemble; ++i)
                ens.push_back(random_coupling(ctx, m, rng, i % 2 ? -1 : +1));
            auto rep = theorem_equivalence(ens, betas, tol);
            py::dict d;
            d["ensemble"] = rep.total;
            d["mismatches"] = rep.mismatches.size();
            return d;
        },
        py::arg("N"), py::arg("m"), py::arg("ensemble") = 50, py::arg("seed") = 1,
        py::arg("betas") = std::vector<double>{0.0, 0.25, 0.5, 1.0, 2.0},
        py::arg("tol") = 1e-8);

    mod.def(
        "rp_check",
        [](const std::string& coupling_json, const std::vector<double>& betas, double tol) {
            auto meta_n = [&] {
                auto pos = coupling_json.find("\"N\"");
                if (pos == std::string::npos)
                    throw std::invalid_argument("coupling JSON missing N");
                return std::stoi(coupling_json.substr(coupling_json.find(':', pos) + 1));
            }();
            auto ctx = make_context(meta_n, +1, Mode::approx, 1e-9);
            CouplingMatrix J = coupling_from_json(ctx, coupling_json);
            std::vector<PFElement> basis;
            for (const auto& I : all_multi_indices(ctx->N, J.m()))
                basis.push_back(PFElement::monomial(ctx, J.m(), I, Scalar::one(ctx)));
            auto rep = rp_check(J, betas, basis, tol);
            py::dict d;
            d["minimum"] = rep.minimum;
            d["positive"] = rep.positive;
            return d;
        },
        py::arg("coupling_json"), py::arg("betas") = std::vector<double>{0.0, 0.5, 1.0},
        py::arg("tol") = 1e-8);

    mod.def(
        "run_suite",
        [](const std::string& suite, int n_min, int n_max, int m_max, const std::string& mode,
           int ensemble, uint64_t seed) {
            SuiteOptions opt;
            opt.suite = suite;
            opt.n_min = n_min;
            opt.n_max = n_max;
            opt.m_max = m_max;
            opt.mode = parse_mode(mode);
            opt.ensemble = ensemble;
            opt.seed = seed;
            auto recs = run_suite(opt);
            py::list out;
            for (const auto& r : recs) {
                py::dict d;
                d["identity"] = r.identity;
                d["params"] = r.params;
                d["pass"] = r.pass;
                d["max_dev"] = r.max_dev;
                d["note"] = r.note;
                out.append(d);
            }
            return out;
        },
        py::arg("suite") = "all", py::arg("n_min") = 2, py::arg("n_max") = 3,
        py::arg("m_max") = 2, py::arg("mode") = "exact", py::arg("ensemble") = 20,
        py::arg("seed") = 1);
}
