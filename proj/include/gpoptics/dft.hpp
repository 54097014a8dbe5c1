/**********
 *   Copyright 2026 The gpoptics Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
\**********/
#pragma once

#include <vector>

#include "gpoptics/constants.hpp"

namespace gpoptics {

/// Forward DFT with 1/n normalization:
///   X_k = (1/n) sum_j x_j e^{-2 pi i j k / n},
/// so that x_j = sum_k X_k e^{+2 pi i j k / n}. Plain O(n^2) with a
/// precomputed twiddle table; the grids used here keep n small enough that
/// this is not worth an FFT.
inline std::vector<Complex> dft_forward(const std::vector<Complex>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<Complex> twiddle(x.size());
  for (int m = 0; m < n; ++m) {
    twiddle[m] = std::polar(1.0, -kTwoPi * m / n);
  }
  std::vector<Complex> out(x.size());
  for (int k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    long idx = 0;
    for (int j = 0; j < n; ++j) {
      acc += x[j] * twiddle[idx];
      idx += k;
      if (idx >= n) idx -= n;  // k < n, so one subtraction suffices
    }
    out[k] = acc / static_cast<double>(n);
  }
  return out;
}

/// Signed mode index of DFT bin k for an n-point transform,
/// l in [-n/2, n/2).
inline int dft_bin_to_mode(int k, int n) { return k < n / 2 ? k : k - n; }

}  // namespace gpoptics
