// Copyright 2026 The ftlab Authors
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

#include "ftlab/frame_kernels.h"

#include <atomic>
#include <bit>
#include <stdexcept>

namespace ftlab::simd {

namespace {

void xor_and(uint64_t *dst, const uint64_t *a, const uint64_t *m, size_t n) {
    for (size_t k = 0; k < n; k++) {
        dst[k] ^= a[k] & m[k];
    }
}

void masked_swap(uint64_t *a, uint64_t *b, const uint64_t *m, size_t n) {
    for (size_t k = 0; k < n; k++) {
        uint64_t t = (a[k] ^ b[k]) & m[k];
        a[k] ^= t;
        b[k] ^= t;
    }
}

void and_not(uint64_t *dst, const uint64_t *m, size_t n) {
    for (size_t k = 0; k < n; k++) {
        dst[k] &= ~m[k];
    }
}

void xor_into(uint64_t *dst, const uint64_t *a, size_t n) {
    for (size_t k = 0; k < n; k++) {
        dst[k] ^= a[k];
    }
}

void and_into(uint64_t *dst, const uint64_t *a, size_t n) {
    for (size_t k = 0; k < n; k++) {
        dst[k] &= a[k];
    }
}

void or_into(uint64_t *dst, const uint64_t *a, size_t n) {
    for (size_t k = 0; k < n; k++) {
        dst[k] |= a[k];
    }
}

void copy_and(uint64_t *dst, const uint64_t *a, const uint64_t *b, size_t n) {
    for (size_t k = 0; k < n; k++) {
        dst[k] = a[k] & b[k];
    }
}

void blend(uint64_t *dst, const uint64_t *a, const uint64_t *m, size_t n) {
    for (size_t k = 0; k < n; k++) {
        dst[k] = (dst[k] & ~m[k]) | (a[k] & m[k]);
    }
}

bool any(const uint64_t *a, size_t n) {
    uint64_t acc = 0;
    for (size_t k = 0; k < n; k++) {
        acc |= a[k];
    }
    return acc != 0;
}

uint64_t popcount(const uint64_t *a, size_t n) {
    uint64_t total = 0;
    for (size_t k = 0; k < n; k++) {
        total += (uint64_t)std::popcount(a[k]);
    }
    return total;
}

const Kernels SCALAR = {
    "scalar", xor_and, masked_swap, and_not, xor_into, and_into, or_into, copy_and, blend, any, popcount,
};

std::atomic<const Kernels *> &active_slot() {
    static std::atomic<const Kernels *> slot{nullptr};
    return slot;
}

const Kernels &auto_kernels() {
    const Kernels *fast = avx2_kernels();
    return fast ? *fast : SCALAR;
}

}  // namespace

const Kernels &scalar_kernels() {
    return SCALAR;
}

const Kernels &active_kernels() {
    const Kernels *k = active_slot().load(std::memory_order_acquire);
    if (!k) {
        k = &auto_kernels();
        active_slot().store(k, std::memory_order_release);
    }
    return *k;
}

void select_kernels(const std::string &name) {
    if (name == "auto") {
        active_slot().store(&auto_kernels());
    } else if (name == "scalar") {
        active_slot().store(&SCALAR);
    } else if (name == "avx2") {
        const Kernels *k = avx2_kernels();
        if (!k) {
            throw std::invalid_argument("AVX2 kernels are not supported on this CPU");
        }
        active_slot().store(k);
    } else {
        throw std::invalid_argument("unknown kernel set: " + name);
    }
}

}  // namespace ftlab::simd
