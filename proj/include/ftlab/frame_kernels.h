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

#ifndef FTLAB_FRAME_KERNELS_H
#define FTLAB_FRAME_KERNELS_H

#include <cstddef>
#include <cstdint>
#include <string>

namespace ftlab::simd {

/// Word-level bit-plane operations of the Pauli frame simulator. All
/// pointers address `n` 64-bit words; in-place forms modify `dst`.
struct Kernels {
    const char *name;
    void (*xor_and)(uint64_t *dst, const uint64_t *a, const uint64_t *m, size_t n);      // dst ^= a & m
    void (*masked_swap)(uint64_t *a, uint64_t *b, const uint64_t *m, size_t n);          // swap bits under m
    void (*and_not)(uint64_t *dst, const uint64_t *m, size_t n);                         // dst &= ~m
    void (*xor_into)(uint64_t *dst, const uint64_t *a, size_t n);                        // dst ^= a
    void (*and_into)(uint64_t *dst, const uint64_t *a, size_t n);                        // dst &= a
    void (*or_into)(uint64_t *dst, const uint64_t *a, size_t n);                         // dst |= a
    void (*copy_and)(uint64_t *dst, const uint64_t *a, const uint64_t *b, size_t n);     // dst = a & b
    void (*blend)(uint64_t *dst, const uint64_t *a, const uint64_t *m, size_t n);        // dst = m ? a : dst
    bool (*any)(const uint64_t *a, size_t n);
    uint64_t (*popcount)(const uint64_t *a, size_t n);
};

const Kernels &scalar_kernels();
/// Null when the CPU lacks AVX2.
const Kernels *avx2_kernels();

/// Kernels used by the simulator; "auto" picks AVX2 when available.
const Kernels &active_kernels();
/// Accepts "auto", "scalar" or "avx2"; throws std::invalid_argument otherwise
/// or when the requested set is unavailable.
void select_kernels(const std::string &name);

}  // namespace ftlab::simd

#endif
