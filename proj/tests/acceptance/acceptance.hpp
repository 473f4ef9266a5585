#pragma once

#include <cstdio>
#include <string>

namespace acceptance {

struct Outcome {
  bool pass = false;
  bool fatal = true;  // non-fatal outcomes are reported but do not fail the run
  std::string detail;
};

inline std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

Outcome criterion_null_oracle();
Outcome criterion_planted_recovery();
Outcome criterion_rank_stability();
Outcome criterion_perturbation();
Outcome criterion_kernels();
Outcome criterion_emotion_arithmetic();
Outcome criterion_determinism();
Outcome criterion_throughput();
Outcome criterion_stability_calibration();

}  // namespace acceptance
