// Copyright 2026 The wsim Authors
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


#pragma once

#include <cstdint>

namespace wsim {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Small sequential generator handed to a single sample draw.
class Rng {
   public:
    explicit Rng(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform double in [0, 1).
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    bool coin() noexcept { return next_u64() >> 63; }

   private:
    std::uint64_t state_;
};

/// Counter-based random stream: draw k of the stream is a pure function of
/// (seed, stream_index, k), so draws can be generated in any order or on any
/// thread without changing results.
struct RandomStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_index = 0;

    /// Generator for the draw with the given counter.
    Rng at(std::uint64_t counter) const noexcept {
        return Rng(mix64(seed ^ mix64(stream_index ^ 0x5851f42d4c957f2dULL) ^
                         mix64(counter + 0x14057b7ef767814fULL)));
    }
    /// Independent child stream, e.g. one per sub-estimate.
    RandomStream child(std::uint64_t index) const noexcept {
        return RandomStream{seed, mix64(stream_index * 0x2545f4914f6cdd1dULL + mix64(index + 1))};
    }
};

}  // namespace wsim
