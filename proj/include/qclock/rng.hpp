// Copyright 2026 The qclock Authors
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
#include <random>

namespace qclock {

/// Per-trial random stream. Trial i of an experiment with seed s always sees the
/// same sequence, independent of how trials are scheduled across threads.
class TrialRng {
  public:
    using result_type = std::mt19937_64::result_type;

    TrialRng(std::uint64_t seed, std::uint64_t stream) : engine_(mix(seed, stream)) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform double in [0, 1) built from the top 53 bits; identical on every platform.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  private:
    // SplitMix64 finalizer applied to the seed, then to the seed combined with the stream index.
    static std::uint64_t finalize(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) { return finalize(finalize(seed) ^ stream); }

    std::mt19937_64 engine_;
};

}  // namespace qclock
