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

#include <random>
#include <vector>

#include "gtest/gtest.h"

using namespace ftlab::simd;

namespace {

std::vector<uint64_t> random_words(std::mt19937_64 &rng, size_t n) {
    std::vector<uint64_t> v(n);
    for (auto &w : v) {
        w = rng();
    }
    return v;
}

// Lengths that exercise both the vector body and the scalar tail.
constexpr size_t LENGTHS[] = {0, 1, 3, 4, 5, 8, 16, 17, 31};

class KernelEquivalence : public ::testing::Test {
   protected:
    void SetUp() override {
        vec_ = avx2_kernels();
        if (vec_ == nullptr) {
            GTEST_SKIP() << "AVX2 not available";
        }
    }
    const Kernels &ref_ = scalar_kernels();
    const Kernels *vec_ = nullptr;
    std::mt19937_64 rng_{41};
};

}  // namespace

TEST_F(KernelEquivalence, binary_in_place) {
    for (size_t n : LENGTHS) {
        for (int rep = 0; rep < 20; rep++) {
            auto dst = random_words(rng_, n), a = random_words(rng_, n);
            using Fn = void (*)(uint64_t *, const uint64_t *, size_t);
            for (auto pick : {+[](const Kernels &k) { return k.xor_into; }, +[](const Kernels &k) { return k.and_into; },
                              +[](const Kernels &k) { return k.or_into; }, +[](const Kernels &k) { return k.and_not; }}) {
                Fn f_ref = pick(ref_), f_vec = pick(*vec_);
                auto d1 = dst, d2 = dst;
                f_ref(d1.data(), a.data(), n);
                f_vec(d2.data(), a.data(), n);
                ASSERT_EQ(d1, d2) << n;
            }
        }
    }
}

TEST_F(KernelEquivalence, ternary) {
    for (size_t n : LENGTHS) {
        for (int rep = 0; rep < 20; rep++) {
            auto dst = random_words(rng_, n), a = random_words(rng_, n), m = random_words(rng_, n);
            using Fn = void (*)(uint64_t *, const uint64_t *, const uint64_t *, size_t);
            for (auto pick : {+[](const Kernels &k) { return k.xor_and; }, +[](const Kernels &k) { return k.copy_and; },
                              +[](const Kernels &k) { return k.blend; }}) {
                Fn f_ref = pick(ref_), f_vec = pick(*vec_);
                auto d1 = dst, d2 = dst;
                f_ref(d1.data(), a.data(), m.data(), n);
                f_vec(d2.data(), a.data(), m.data(), n);
                ASSERT_EQ(d1, d2) << n;
            }
        }
    }
}

TEST_F(KernelEquivalence, masked_swap) {
    for (size_t n : LENGTHS) {
        auto a = random_words(rng_, n), b = random_words(rng_, n), m = random_words(rng_, n);
        auto a1 = a, b1 = b, a2 = a, b2 = b;
        ref_.masked_swap(a1.data(), b1.data(), m.data(), n);
        vec_->masked_swap(a2.data(), b2.data(), m.data(), n);
        ASSERT_EQ(a1, a2);
        ASSERT_EQ(b1, b2);
    }
}

TEST_F(KernelEquivalence, reductions) {
    for (size_t n : LENGTHS) {
        auto a = random_words(rng_, n);
        ASSERT_EQ(ref_.popcount(a.data(), n), vec_->popcount(a.data(), n));
        ASSERT_EQ(ref_.any(a.data(), n), vec_->any(a.data(), n));
        std::vector<uint64_t> zero(n, 0);
        ASSERT_FALSE(vec_->any(zero.data(), n));
        if (n > 0) {
            zero[n - 1] = 1;
            ASSERT_TRUE(vec_->any(zero.data(), n));
        }
    }
}

TEST(kernels, scalar_semantics) {
    const auto &k = scalar_kernels();
    uint64_t dst[2] = {0b1100, 0b1010}, a[2] = {0b1010, 0b0110}, m[2] = {0b0110, 0b1111};
    k.xor_and(dst, a, m, 2);
    ASSERT_EQ(dst[0], 0b1100u ^ (0b1010u & 0b0110u));
    ASSERT_EQ(dst[1], 0b1010u ^ 0b0110u);
    uint64_t x[1] = {0b1100}, y[1] = {0b1010}, mm[1] = {0b0110};
    k.masked_swap(x, y, mm, 1);
    ASSERT_EQ(x[0], 0b1010u);
    ASSERT_EQ(y[0], 0b1100u);
    uint64_t b[1] = {0b1111};
    k.blend(b, a, m, 1);
    ASSERT_EQ(b[0], (0b1010u & 0b0110u) | (0b1111u & ~0b0110u));
    ASSERT_EQ(k.popcount(a, 2), 4u);
}

TEST(kernels, selection) {
    select_kernels("scalar");
    ASSERT_STREQ(active_kernels().name, scalar_kernels().name);
    select_kernels("auto");
    if (avx2_kernels() != nullptr) {
        ASSERT_STREQ(active_kernels().name, avx2_kernels()->name);
        select_kernels("avx2");
    } else {
        ASSERT_THROW(select_kernels("avx2"), std::invalid_argument);
    }
    ASSERT_THROW(select_kernels("sse9"), std::invalid_argument);
    select_kernels("auto");
}
