#include "nullflow/estimate/cutoff.hpp"

#include <algorithm>

namespace nullflow {

namespace {

// Smoothstep S(x) = 10x^3 - 15x^4 + 6x^5; psi(s) = 1 - S(s - 1) on [1, 2].
double step(double x) { return std::clamp(x * x * x * (10 + x * (-15 + 6 * x)), 0.0, 1.0); }
double step_d1(double x) { return 30 * x * x * (1 - x) * (1 - x); }
double step_d2(double x) { return 60 * x * (1 - x) * (1 - 2 * x); }

}  // namespace

double cutoff_profile(double s) {
  if (s <= 1) return 1.0;
  if (s >= 2) return 0.0;
  return step(2 - s);
}

double cutoff_derivative(double s) {
  if (s <= 1 || s >= 2) return 0.0;
  return -step_d1(s - 1);
}

double cutoff_second_derivative(double s) {
  if (s <= 1 || s >= 2) return 0.0;
  return -step_d2(s - 1);
}

CutoffCertificate build_cutoff(std::size_t samples, double safety) {
  CutoffCertificate cert;
  cert.samples = samples;
  cert.safety = safety;
  cert.constraints_hold = true;
  for (std::size_t i = 0; i < samples; ++i) {
    const double s = 1.0 + static_cast<double>(i) / static_cast<double>(samples - 1);
    const double psi = cutoff_profile(s);
    const double d1 = cutoff_derivative(s);
    cert.sup_neg_second = std::max(cert.sup_neg_second, -cutoff_second_derivative(s));
    if (psi > 0) cert.sup_ratio = std::max(cert.sup_ratio, d1 * d1 / psi);
    if (psi < 0 || psi > 1 || d1 > 0) cert.constraints_hold = false;
  }
  cert.c1 = safety * cert.sup_neg_second;
  cert.c2 = safety * cert.sup_ratio;
  return cert;
}

const CutoffCertificate& shipped_cutoff() {
  static const CutoffCertificate cert = build_cutoff();
  return cert;
}

}  // namespace nullflow
