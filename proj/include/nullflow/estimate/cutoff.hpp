#pragma once

#include <cstddef>

namespace nullflow {

// Quintic smoothstep cutoff: psi = 1 on [0, 1], psi = 0 on [2, inf), C^2.
// psi vanishes cubically at s = 2, so (psi')^2 / psi stays bounded.
double cutoff_profile(double s);
double cutoff_derivative(double s);
double cutoff_second_derivative(double s);

struct CutoffCertificate {
  double c1 = 0.0;           // psi'' >= -c1
  double c2 = 0.0;           // (psi')^2 / psi <= c2 where psi > 0
  double sup_neg_second = 0.0;  // sampled sup of -psi'' before the safety factor
  double sup_ratio = 0.0;       // sampled sup of (psi')^2 / psi before the safety factor
  std::size_t samples = 0;
  double safety = 1.05;
  bool constraints_hold = false;  // 0 <= psi <= 1 and psi' <= 0 on every sample
};

// Certifies c1, c2 as sampled suprema on [1, 2] times the safety factor.
CutoffCertificate build_cutoff(std::size_t samples = 1'000'000, double safety = 1.05);

// Certificate with default arguments, computed once.
const CutoffCertificate& shipped_cutoff();

}  // namespace nullflow
