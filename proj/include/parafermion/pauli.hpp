#pragma once

#include "parafermion/pf.hpp"

namespace pf {

enum class PauliVersion { q, q_inv };

struct PauliTriple {
    DenseOperator X, Y, Z;
};

/// N x N parafermion Pauli matrices.
/// Version q:      X|k> = |k+1>, Y|k> = zeta^{1-2k}|k-1>, Z|k> = q^k|k>.
/// Version q^{-1}: X|k> = |k-1>, Y|k> = zeta^{-2k-1}|k+1>, Z|k> = q^k|k>.
PauliTriple pauli_xyz(const CtxPtr& ctx, PauliVersion version);

struct QuaternionTriple {
    DenseOperator i, j, k;
};

/// Parafermion quaternions: i^N = j^N = k^N = -1 and ijk = -1.
QuaternionTriple quaternions(const CtxPtr& ctx, PauliVersion version);

enum class QuadraticTag { q1, qinv4, q4, qinv1 };

/// Quadratic four-parafermion model: X,Y,Z as particle/anti-particle pairs
/// acting on dimension N^4 through the Jordan-Wigner representation of PF_4,
/// with grading operator gamma = q c1 c2^{-1} c3 c4^{-1}.
/// Satisfies X Y Z = zeta^{zeta_exp} gamma^{gamma_exp}.
struct QuadraticModel {
    DenseOperator X, Y, Z, gamma;
    PauliVersion version;
    int zeta_exp;
    int gamma_exp;
};
QuadraticModel quadratic_model(const CtxPtr& ctx, QuadraticTag tag);

/// Exact spectral projection of a unitary with eigenvalues q^k.
DenseOperator eigen_projection_qpower(const DenseOperator& u, int k);

struct FourierGaussian {
    DenseOperator F, G;  // DFT and Gaussian: F|k> = N^{-1/2} sum_l q^{kl}|l>, G|k> = zeta^{k^2}|k>
};
FourierGaussian fourier_gaussian(const CtxPtr& ctx);

struct CliffordReport {
    long order = 0;
    bool closed = false;
    bool adF_is_S = false;   // Ad_F acts as [[0,-1],[1,0]] on X^i Z^j exponents
    bool adG_is_T = false;   // Ad_G acts as [[1,1],[0,1]]
    long sl2_order = 0;      // |SL(2,Z_N)| by brute force
    bool order_matches_semidirect = false;  // order == N^2 * |SL(2,Z_N)|
};

/// Breadth-first closure of the projective group generated by {X, Z, F, G},
/// normalizing each matrix by its first nonzero entry.
CliffordReport clifford_enumerate(const CtxPtr& ctx, long cap);

}  // namespace pf
