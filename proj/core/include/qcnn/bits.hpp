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

#ifndef QCNN_BITS_HPP
#define QCNN_BITS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qcnn {

/// Bit-packed string over sites 1..n, 64 sites per word.
///
/// Site j lives at bit (j - 1). Reads outside [1, n] return 0, which is the
/// zero-padding boundary policy used by the decoder.
class BitString {
   public:
    BitString() = default;
    explicit BitString(int n);

    static BitString from_string(std::string_view text);

    int size() const {
        return n_;
    }

    bool get(int site) const {
        if (site < 1 || site > n_) {
            return false;
        }
        unsigned k = static_cast<unsigned>(site - 1);
        return (words_[k >> 6] >> (k & 63)) & 1;
    }

    void set(int site, bool value);
    void flip(int site);
    void clear();

    size_t popcount() const;
    std::span<const uint64_t> words() const {
        return words_;
    }
    std::span<uint64_t> words() {
        return words_;
    }

    BitString &operator^=(const BitString &other);
    bool operator==(const BitString &other) const = default;

    /// "0101..." with site 1 first.
    std::string str() const;

   private:
    int n_ = 0;
    std::vector<uint64_t> words_;
};

using SyndromeString = BitString;

}  // namespace qcnn

#endif
