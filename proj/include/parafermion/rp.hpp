#pragma once

#include <random>

#include "parafermion/pf.hpp"

namespace pf {

/// Hermitian, zero-graded coupling constants J_I^{I'} over multi-index pairs.
class CouplingMatrix {
  public:
    CouplingMatrix(CtxPtr ctx, int m) : ctx_(std::move(ctx)), m_(m) {}

    const CtxPtr& ctx() const { return ctx_; }
    int m() const { return m_; }

    void set(const std::vector<int>& I, const std::vector<int>& Ip, const Scalar& v);
    Scalar get(const std::vector<int>& I, const std::vector<int>& Ip) const;
    const std::map<std::pair<MonoKey, MonoKey>, Scalar>& entries() const { return entries_; }

    /// Hermitian + zero-graded support; throws invalid_argument otherwise.
    void validate() const;

  private:
    CtxPtr ctx_;
    int m_;
    std::map<std::pair<MonoKey, MonoKey>, Scalar> entries_;
};

/// -H = sum_{I,I'} J_I^{I'} Theta(C_I) (x)_t C_{I'} in PF_{2m};
/// the returned element is H itself (Hermitian and zero-graded).
PFElement build_hamiltonian(const CouplingMatrix& J);

/// Matrix of sft^{-m}(-H) over the matrix-unit basis: N^{m/2} J_I^{I'}
/// (rows I, columns I', multi-indices ordered lexicographically).
DenseOperator sft_matrix(const CouplingMatrix& J);

/// True iff the submatrix of J over pairs with both multi-indices nonzero
/// has all eigenvalues >= -tol.
bool j0_psd(const CouplingMatrix& J, double tol);

struct RPReport {
    struct Entry {
        double beta;
        size_t x_index;
        double value;
    };
    std::vector<Entry> entries;
    double minimum = 0.0;
    bool positive = true;
};

/// tr(e^{-beta H} (Theta(x) (x)_t x)) for each (beta, x), mixed x processed
/// per homogeneous component.  Numeric (eigendecomposition of jw(H)).
RPReport rp_check(const CouplingMatrix& J, const std::vector<double>& betas,
                  const std::vector<PFElement>& xs, double tol);

/// Exact surrogate of the series expansion: tr((-H)^k Theta(x) (x)_t x)
/// for k <= K; meaningful under the positivity hypothesis on the full
/// coupling matrix.
std::vector<Scalar> rp_exact_moments(const CouplingMatrix& J, const PFElement& x, int K);

/// Gram matrix <x,y>_Theta = sum_g tr(e^{-beta H} zeta^{g^2} Theta(x_g) (x)+ y_g),
/// computed over the list xs.
Eigen::MatrixXcd quantized_gram(const CouplingMatrix& J, double beta,
                                const std::vector<PFElement>& xs, int truncation = -1);

struct EquivalenceReport {
    struct Mismatch {
        size_t ensemble_index;
        bool j0_positive;
        bool rp_positive;
        double witness_beta;
        double witness_value;
    };
    size_t total = 0;
    std::vector<Mismatch> mismatches;
};

/// For each J: j0_psd(J) must coincide with reflection positivity, the
/// latter decided by positivity of the per-grade Gram matrices over the full
/// monomial basis at every sampled beta.
EquivalenceReport theorem_equivalence(const std::vector<CouplingMatrix>& ensemble,
                                      const std::vector<double>& betas, double tol);

/// Random Hermitian zero-graded coupling matrix.  When force_sign is +1 the
/// crossing block J_0 is made PSD (Gram construction), when -1 it is given at
/// least one eigenvalue <= -margin; borders stay arbitrary.
CouplingMatrix random_coupling(const CtxPtr& ctx, int m, std::mt19937_64& rng, int force_sign,
                               double margin = 0.25);

// JSON wire form:
// {"N":..,"m":..,"entries":[{"row":[..],"col":[..],"re":..,"im":..},..]}
std::string coupling_to_json(const CouplingMatrix& J);
CouplingMatrix coupling_from_json(const CtxPtr& ctx, const std::string& text);

}  // namespace pf
