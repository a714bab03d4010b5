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

#include "qcnn/rng.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace qcnn {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

ShotRng::ShotRng(uint64_t seed, uint64_t stream) {
    std::seed_seq seq{static_cast<uint32_t>(splitmix64(seed)), static_cast<uint32_t>(splitmix64(seed) >> 32),
                      static_cast<uint32_t>(splitmix64(seed ^ splitmix64(stream))),
                      static_cast<uint32_t>(splitmix64(stream + 0x632BE59BD9B4E019ULL) >> 32)};
    engine_.seed(seq);
}

unsigned default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for_chunks(size_t count, unsigned workers, const std::function<void(size_t, size_t)> &body) {
    if (workers == 0) {
        workers = default_workers();
    }
    workers = static_cast<unsigned>(std::min<size_t>(workers, std::max<size_t>(count, 1)));
    if (workers <= 1) {
        body(0, count);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; w++) {
        size_t begin = w * chunk;
        size_t end = std::min(count, begin + chunk);
        if (begin >= end) {
            break;
        }
        threads.emplace_back([&, w, begin, end]() {
            try {
                body(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace qcnn
