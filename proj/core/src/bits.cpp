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

#include "qcnn/bits.hpp"

#include <bit>
#include <stdexcept>

namespace qcnn {

BitString::BitString(int n) : n_(n), words_((static_cast<size_t>(n) + 63) / 64, 0) {
    if (n < 0) {
        throw std::invalid_argument("BitString length must be non-negative");
    }
}

BitString BitString::from_string(std::string_view text) {
    BitString out(static_cast<int>(text.size()));
    for (size_t k = 0; k < text.size(); k++) {
        if (text[k] == '1') {
            out.set(static_cast<int>(k) + 1, true);
        } else if (text[k] != '0') {
            throw std::invalid_argument("BitString text must contain only '0' and '1'");
        }
    }
    return out;
}

void BitString::set(int site, bool value) {
    if (site < 1 || site > n_) {
        throw std::out_of_range("BitString site " + std::to_string(site) + " outside [1, " + std::to_string(n_) + "]");
    }
    unsigned k = static_cast<unsigned>(site - 1);
    uint64_t m = uint64_t{1} << (k & 63);
    if (value) {
        words_[k >> 6] |= m;
    } else {
        words_[k >> 6] &= ~m;
    }
}

void BitString::flip(int site) {
    if (site < 1 || site > n_) {
        throw std::out_of_range("BitString site " + std::to_string(site) + " outside [1, " + std::to_string(n_) + "]");
    }
    unsigned k = static_cast<unsigned>(site - 1);
    words_[k >> 6] ^= uint64_t{1} << (k & 63);
}

void BitString::clear() {
    for (auto &w : words_) {
        w = 0;
    }
}

size_t BitString::popcount() const {
    size_t total = 0;
    for (auto w : words_) {
        total += static_cast<size_t>(std::popcount(w));
    }
    return total;
}

BitString &BitString::operator^=(const BitString &other) {
    if (other.n_ != n_) {
        throw std::invalid_argument("BitString length mismatch in xor");
    }
    for (size_t k = 0; k < words_.size(); k++) {
        words_[k] ^= other.words_[k];
    }
    return *this;
}

std::string BitString::str() const {
    std::string out(static_cast<size_t>(n_), '0');
    for (int j = 1; j <= n_; j++) {
        if (get(j)) {
            out[static_cast<size_t>(j - 1)] = '1';
        }
    }
    return out;
}

}  // namespace qcnn
