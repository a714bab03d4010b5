// Copyright 2026 The qcnnlab Authors
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

#ifndef QCNN_RNG_HPP
#define QCNN_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace qcnn {

uint64_t splitmix64(uint64_t x);

/// Independent random stream for one (seed, stream index) pair.
///
/// Shot k of an experiment always uses stream k, so results do not depend on
/// how shots are distributed across threads.
class ShotRng {
   public:
    using result_type = uint64_t;

    ShotRng(uint64_t seed, uint64_t stream);

    static constexpr result_type min() {
        return std::mt19937_64::min();
    }
    static constexpr result_type max() {
        return std::mt19937_64::max();
    }
    result_type operator()() {
        return engine_();
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

   private:
    std::mt19937_64 engine_;
};

/// Number of worker threads to use when the caller passes 0.
unsigned default_workers();

/// Runs body(begin, end) over contiguous chunks of [0, count) on up to `workers` threads.
void parallel_for_chunks(size_t count, unsigned workers, const std::function<void(size_t, size_t)> &body);

}  // namespace qcnn

#endif
