// Copyright 2026 The tldiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TLDIV_RNG_HPP_
#define TLDIV_RNG_HPP_

#include <cstdint>
#include <vector>

namespace tldiv {

// Deterministic 64-bit generator (splitmix64). A seed fully determines every
// randomized run on every platform; std::uniform_int_distribution is not
// portable across standard libraries, so sampling is done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  double unit() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Independent substream seed for (seed, stream); used for per-group and
  // per-trial derivation so parallel evaluation order cannot matter.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    Rng r(seed ^ (0x2545f4914f6cdd1dULL * (stream + 1)));
    r.next();
    return r.next();
  }

  // Draws k elements without replacement by a partial Fisher-Yates pass over
  // pool (taken in the order given). Returns the drawn elements; the pool
  // keeps the rest in unspecified order.
  template <typename T>
  std::vector<T> sample(std::vector<T>& pool, std::size_t k) {
    std::vector<T> out;
    out.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t pick = j + static_cast<std::size_t>(below(pool.size() - j));
      std::swap(pool[j], pool[pick]);
      out.push_back(pool[j]);
    }
    pool.erase(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
  }

 private:
  std::uint64_t state_;
};

}  // namespace tldiv

#endif  // TLDIV_RNG_HPP_
