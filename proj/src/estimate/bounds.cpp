#include "nullflow/estimate/bounds.hpp"

#include <cmath>
#include <sstream>

#include "nullflow/core/errors.hpp"

namespace nullflow {

namespace {

double log_prefactor(double A, double u) {
  const double l = 1 + std::log(A / u);
  return l * l;
}

void require_positive_time(double t) {
  if (!(t > 0)) throw ConfigError("estimate bounds need t > 0");
}

}  // namespace

void require_alpha_pq(double alpha, double p, double q, bool strict) {
  if (strict ? !(alpha > 1) : !(alpha >= 1)) {
    throw ConfigError(strict ? "alpha must exceed 1" : "alpha must be at least 1");
  }
  if (!(p > 0) || !(q > 0)) throw ConfigError("alpha-p-q constraint: p and q must be positive");
  if (std::abs(1 / p + 1 / q - 1 / alpha) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "alpha-p-q constraint 1/p + 1/q = 1/alpha violated: 1/" << p << " + 1/" << q << " != 1/" << alpha;
    throw ConfigError(msg.str());
  }
}

double bound_backward(double t, const CurvatureBounds& b, double rho, const CutoffCertificate& cert, double A,
                      double u) {
  require_positive_time(t);
  return log_prefactor(A, u) * (1 / t + cert.c2 * b.rho1 + 4 * b.rho2 + 2 * b.rho3 +
                                (rho * cert.c1 * std::sqrt(b.rho2) + cert.c2) / (rho * rho));
}

double bound_backward_proof_variant(double t, const CurvatureBounds& b, double rho, const CutoffCertificate& cert,
                                    double A, double u) {
  require_positive_time(t);
  return log_prefactor(A, u) * (1 / t + cert.c2 * b.rho1 + 4 * b.rho2 + b.rho3 + std::sqrt(b.rho3) +
                                (rho * cert.c1 * std::sqrt(b.rho2) + cert.c2) / (rho * rho));
}

double bound_forward(double t, double rho1, double rho3, double rho, const CutoffCertificate& cert, double A,
                     double u) {
  require_positive_time(t);
  return log_prefactor(A, u) * (1 / t + cert.c2 * rho1 + 2 * rho3 + cert.c2 / (rho * rho));
}

double bound_local_forward(double t, const CurvatureBounds& b, double rho, double alpha, double p, double q,
                           double c, int n) {
  require_positive_time(t);
  require_alpha_pq(alpha, p, q, true);
  const double r = b.rho1 + b.rho2;
  return alpha * n * p / (4 * t) + c * alpha * alpha * (alpha * alpha * p / (rho * rho * (alpha - 1)) + 1 / t + r) +
         alpha * alpha * n * p * b.rho1 / (2 * (alpha - 1)) + alpha * n / 2 * r * std::sqrt(p * q);
}

double bound_global_forward(double t, double rho1, double rho2, double alpha, double p, double q, int n) {
  require_positive_time(t);
  require_alpha_pq(alpha, p, q, true);
  return alpha * n * p / (4 * t) + alpha * alpha * n * p * rho1 / (2 * (alpha - 1)) +
         alpha * n / 2 * (rho1 + rho2) * std::sqrt(p * q);
}

double bound_global_nonnegative(double t, double rho, double alpha, double p, double q, int n) {
  require_positive_time(t);
  require_alpha_pq(alpha, p, q, false);
  return alpha * n * p / (4 * t) + alpha * n / 2 * rho * std::sqrt(p * q);
}

double bound_alpha_one(double t, double rho, int n) {
  require_positive_time(t);
  return n / (2 * t) + n * rho;
}

double bound_gradient_sup(double T, double rho1, double A, double C) { return C * A * (1 + rho1 * T); }

double bound_harnack_corollary(double t, double rho1, double rho2, double alpha, double p, int n, double cn) {
  require_positive_time(t);
  return alpha * n * p / (4 * t) + cn * alpha * alpha * (rho1 + rho2);
}

}  // namespace nullflow
