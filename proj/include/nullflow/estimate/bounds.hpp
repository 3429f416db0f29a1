#pragma once

#include "nullflow/estimate/cutoff.hpp"
#include "nullflow/flow/equivalence.hpp"

namespace nullflow {

// Throws ConfigError naming the alpha-p-q constraint when 1/p + 1/q != 1/alpha,
// or when alpha is not above (strict) or at least (otherwise) one.
void require_alpha_pq(double alpha, double p, double q, bool strict);

// (1 + ln(A/u))^2 (1/t + c2 rho1 + 4 rho2 + 2 rho3 + (rho c1 sqrt(rho2) + c2)/rho^2).
double bound_backward(double t, const CurvatureBounds& b, double rho, const CutoffCertificate& cert, double A,
                      double u);

// Proof-end display: rho3 + sqrt(rho3) in place of 2 rho3.
double bound_backward_proof_variant(double t, const CurvatureBounds& b, double rho, const CutoffCertificate& cert,
                                    double A, double u);

// (1 + ln(A/u))^2 (1/t + c2 rho1 + 2 rho3 + c2/rho^2).
double bound_forward(double t, double rho1, double rho3, double rho, const CutoffCertificate& cert, double A,
                     double u);

// alpha n p/(4t) + c alpha^2 (alpha^2 p/(rho^2 (alpha - 1)) + 1/t + rho1 + rho2)
//   + alpha^2 n p rho1/(2(alpha - 1)) + (alpha n/2)(rho1 + rho2) sqrt(pq).
double bound_local_forward(double t, const CurvatureBounds& b, double rho, double alpha, double p, double q,
                           double c, int n);

// alpha n p/(4t) + alpha^2 n p rho1/(2(alpha - 1)) + (alpha n/2)(rho1 + rho2) sqrt(pq).
double bound_global_forward(double t, double rho1, double rho2, double alpha, double p, double q, int n);

// Nonnegative Ricci branch: alpha n p/(4t) + (alpha n/2) rho sqrt(pq), alpha >= 1.
double bound_global_nonnegative(double t, double rho, double alpha, double p, double q, int n);

// n/(2t) + n rho.
double bound_alpha_one(double t, double rho, int n);

// C A (1 + rho1 T).
double bound_gradient_sup(double T, double rho1, double A, double C);

// alpha n p/(4t) + c(n) alpha^2 (rho1 + rho2).
double bound_harnack_corollary(double t, double rho1, double rho2, double alpha, double p, int n, double cn);

}  // namespace nullflow
