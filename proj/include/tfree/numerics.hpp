#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace tfree {

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

// In-place stable softmax (max-subtracted). Empty input is a no-op.
inline void softmax_inplace(std::vector<double>& v) {
  if (v.empty()) return;
  double mx = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double& x : v) {
    x = std::exp(x - mx);
    sum += x;
  }
  for (double& x : v) x /= sum;
}

}  // namespace tfree
