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

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#define FTLAB_AVX2 __attribute__((target("avx2,popcnt")))

namespace ftlab::simd {

namespace {

FTLAB_AVX2 inline __m256i load(const uint64_t *p) {
    return _mm256_loadu_si256((const __m256i *)p);
}

FTLAB_AVX2 inline void store(uint64_t *p, __m256i v) {
    _mm256_storeu_si256((__m256i *)p, v);
}

FTLAB_AVX2 void xor_and(uint64_t *dst, const uint64_t *a, const uint64_t *m, size_t n) {
    size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        store(dst + k, _mm256_xor_si256(load(dst + k), _mm256_and_si256(load(a + k), load(m + k))));
    }
    for (; k < n; k++) {
        dst[k] ^= a[k] & m[k];
    }
}

FTLAB_AVX2 void masked_swap(uint64_t *a, uint64_t *b, const uint64_t *m, size_t n) {
    size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256i va = load(a + k);
        __m256i vb = load(b + k);
        __m256i t = _mm256_and_si256(_mm256_xor_si256(va, vb), load(m + k));
        store(a + k, _mm256_xor_si256(va, t));
        store(b + k, _mm256_xor_si256(vb, t));
    }
    for (; k < n; k++) {
        uint64_t t = (a[k] ^ b[k]) & m[k];
        a[k] ^= t;
        b[k] ^= t;
    }
}

FTLAB_AVX2 void and_not(uint64_t *dst, const uint64_t *m, size_t n) {
    size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        // andnot(x, y) = ~x & y
        store(dst + k, _mm256_andnot_si256(load(m + k), load(dst + k)));
    }
    for (; k < n; k++) {
        dst[k] &= ~m[k];
    }
}

FTLAB_AVX2 void xor_into(uint64_t *dst, const uint64_t *a, size_t n) {
    size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        store(dst + k, _mm256_xor_si256(load(dst + k), load(a + k)));
    }
    for (; k < n; k++) {
        dst[k] ^= a[k];
    }
}

FTLAB_AVX2 void and_into(uint64_t *dst, const uint64_t *a, size_t n) {
    size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        store(dst + k, _mm256_and_si256(load(dst + k), load(a + k)));
    }
    for (; k < n; k++) {
        dst[k] &= a[k];
    }
}

FTLAB_AVX2 void or_into(uint64_t *dst, const uint64_t *a, size_t n) {
    size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        store(dst + k, _mm256_or_si256(load(dst + k), load(a + k)));
    }
    for (; k < n; k++) {
        dst[k] |= a[k];
    }
}

FTLAB_AVX2 void copy_and(uint64_t *dst, const uint64_t *a, const uint64_t *b, size_t n) {
    size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        store(dst + k, _mm256_and_si256(load(a + k), load(b + k)));
    }
    for (; k < n; k++) {
        dst[k] = a[k] & b[k];
    }
}

FTLAB_AVX2 void blend(uint64_t *dst, const uint64_t *a, const uint64_t *m, size_t n) {
    size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256i vm = load(m + k);
        store(dst + k, _mm256_or_si256(_mm256_andnot_si256(vm, load(dst + k)), _mm256_and_si256(load(a + k), vm)));
    }
    for (; k < n; k++) {
        dst[k] = (dst[k] & ~m[k]) | (a[k] & m[k]);
    }
}

FTLAB_AVX2 bool any(const uint64_t *a, size_t n) {
    size_t k = 0;
    __m256i acc = _mm256_setzero_si256();
    for (; k + 4 <= n; k += 4) {
        acc = _mm256_or_si256(acc, load(a + k));
    }
    uint64_t tail = 0;
    for (; k < n; k++) {
        tail |= a[k];
    }
    return tail != 0 || !_mm256_testz_si256(acc, acc);
}

FTLAB_AVX2 uint64_t popcount(const uint64_t *a, size_t n) {
    uint64_t total = 0;
    for (size_t k = 0; k < n; k++) {
        total += (uint64_t)_mm_popcnt_u64(a[k]);
    }
    return total;
}

const Kernels AVX2 = {
    "avx2", xor_and, masked_swap, and_not, xor_into, and_into, or_into, copy_and, blend, any, popcount,
};

}  // namespace

const Kernels *avx2_kernels() {
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
    return supported ? &AVX2 : nullptr;
}

}  // namespace ftlab::simd

#else

namespace ftlab::simd {

const Kernels *avx2_kernels() {
    return nullptr;
}

}  // namespace ftlab::simd

#endif
