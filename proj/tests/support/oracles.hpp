#pragma once

// Independent reference computations used only by tests.

#include <algorithm>
#include <vector>

#include "gcy/exterior.hpp"

namespace oracle {

inline std::vector<int> indices(gcy::Mask s) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (s >> i & 1) out.push_back(i);
  return out;
}

// Sign of the permutation sorting the concatenation seq (bubble sort), 0 on repeats.
inline int sort_sign(std::vector<int> seq) {
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = 0; j + 1 < seq.size() - i; ++j) {
      if (seq[j] == seq[j + 1]) return 0;
      if (seq[j] > seq[j + 1]) {
        std::swap(seq[j], seq[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t j = 0; j + 1 < seq.size(); ++j)
    if (seq[j] == seq[j + 1]) return 0;
  return sign;
}

inline gcy::Form wedge(const gcy::Form& a, const gcy::Form& b) {
  gcy::Form out(a.dim());
  for (gcy::Mask s = 0; s < a.size(); ++s)
    for (gcy::Mask t = 0; t < b.size(); ++t) {
      auto seq = indices(s);
      auto tt = indices(t);
      seq.insert(seq.end(), tt.begin(), tt.end());
      const int sg = sort_sign(seq);
      if (sg != 0) out[s | t] += static_cast<double>(sg) * a[s] * b[t];
    }
  return out;
}

inline double max_diff(const gcy::Form& a, const gcy::Form& b) { return (a - b).max_abs(); }

}  // namespace oracle
