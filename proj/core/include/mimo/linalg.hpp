#pragma once

#include "mimo/matrix.hpp"

namespace mimo {

/// H^H H for an N x K matrix with N >= K. Only the upper triangle is computed and the
/// lower one mirrored, so the result is exactly Hermitian. Costs N*K*(K+1)/2 MACs.
ComplexMatrix gram(const ComplexMatrix& h, FlopCount* flops = nullptr);

struct QrResult {
  ComplexMatrix q;  // N x K, orthonormal columns
  ComplexMatrix r;  // K x K, upper triangular, positive real diagonal
};

/// Thin Householder QR. Throws SingularityError when |r_ii| < 1e-12 * ||H||_F.
QrResult qr_decompose(const ComplexMatrix& h);

/// Inverse of a Hermitian positive-definite matrix through its Cholesky factor.
/// Throws SingularityError on a non-positive pivot.
ComplexMatrix exact_inverse(const ComplexMatrix& c, FlopCount* flops = nullptr);

/// Relative safeguard applied to the eigenvalue bound before forming the gain.
inline constexpr double kGainSafeguard = 1e-6;

/// ||S||_F below which step-to-step growth is not counted towards divergence.
inline constexpr double kDivergenceFloor = 1e-6;

/// Convergent starting point C0 = a C^H for the iterative inverses.
///
/// A = C^H C, m = tr(A)/K, t^2 = tr(A^2)/K - m^2 and lambda_upper = m + t sqrt(K-1) bounds the
/// largest eigenvalue of A, so a = 2 / (lambda_upper (1 + kGainSafeguard)) keeps the spectral
/// radius of I - C0 C strictly below one.
struct InitGain {
  double mean = 0.0;          // m
  double spread = 0.0;        // t
  double lambda_upper = 0.0;
  double gain = 0.0;          // a
  ComplexMatrix c0;
};

InitGain init_gain(const ComplexMatrix& c, FlopCount* flops = nullptr);

/// Approximate inverse C_k of `target` together with its residual S_k = I - C_k C.
struct IterInverseState {
  ComplexMatrix target;
  ComplexMatrix approx;
  ComplexMatrix residual;
  int iterations = 0;
  int order = 2;
  FlopCount flops = 0;
  int growth_streak = 0;  // consecutive steps where ||S||_F grew
};

bool is_supported_order(int order) noexcept;

/// Starting state from an explicit initial guess. Residual costs K^3.
IterInverseState make_iter_state(const ComplexMatrix& target, ComplexMatrix initial, int order,
                                 FlopCount initial_flops = 0);

/// One step of the order-p hyper-power recurrence
///   C_{k+1} = (I + S_k + ... + S_k^{p-1}) C_k,
/// evaluated in Horner form. For p = 2 this is Newton-Schulz, C_{k+1} = (2I - C_k C) C_k;
/// for p = 3, 7 it equals the nested polynomials in C C_k. The new residual is recomputed
/// from its definition, and S_{k+1} = S_k^p holds up to rounding. Each step costs p K^3 MACs.
/// Throws DivergenceError once ||S||_F has grown on two consecutive steps while above
/// kDivergenceFloor.
IterInverseState iterate(IterInverseState state);

/// init_gain followed by k steps of `iterate`.
IterInverseState approx_inverse(const ComplexMatrix& c, int order, int k);

}  // namespace mimo
