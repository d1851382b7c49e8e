// Copyright 2026 The wshare Authors
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

#ifndef WSHARE_RNG_H
#define WSHARE_RNG_H

#include <cstdint>
#include <initializer_list>
#include <random>

namespace wshare {

/// Mixes a master seed with stream coordinates (run index, grid index, ...)
/// into an independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coordinates);

/// Seeded random source. Draws are platform independent: doubles are built
/// from the top 53 bits of mt19937_64 rather than a library distribution.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// True with probability p; p <= 0 never fires, p >= 1 always does.
    bool bernoulli(double p) { return uniform() < p; }
    std::uint64_t next() { return engine_(); }

   private:
    std::mt19937_64 engine_;
};

}  // namespace wshare

#endif
