#include "hierarchia/simd.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace hierarchia::simd {

namespace {

inline __m256d mul2(__m256d a, __m256d b) {
    __m256d br = _mm256_movedup_pd(b);
    __m256d bi = _mm256_permute_pd(b, 0xF);
    __m256d as = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(as, bi));
}

inline __m256d load(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

void cmul(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store(out + i, mul2(load(a + i), load(b + i)));
    if (i < n) detail::scalar_kernels().cmul(out + i, a + i, b + i, n - i);
}

void cmul_acc(cplx* acc, const cplx* a, const cplx* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store(acc + i, _mm256_add_pd(load(acc + i), mul2(load(a + i), load(b + i))));
    if (i < n) detail::scalar_kernels().cmul_acc(acc + i, a + i, b + i, n - i);
}

void cmul_conj(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    const __m256d flip = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store(out + i, mul2(load(a + i), _mm256_xor_pd(load(b + i), flip)));
    if (i < n) detail::scalar_kernels().cmul_conj(out + i, a + i, b + i, n - i);
}

void axpy(cplx* acc, cplx s, const cplx* a, std::size_t n) {
    const __m256d sv = _mm256_set_pd(s.imag(), s.real(), s.imag(), s.real());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store(acc + i, _mm256_add_pd(load(acc + i), mul2(load(a + i), sv)));
    if (i < n) detail::scalar_kernels().axpy(acc + i, s, a + i, n - i);
}

void scale(cplx* out, cplx s, const cplx* a, std::size_t n) {
    const __m256d sv = _mm256_set_pd(s.imag(), s.real(), s.imag(), s.real());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store(out + i, mul2(load(a + i), sv));
    if (i < n) detail::scalar_kernels().scale(out + i, s, a + i, n - i);
}

const Kernels kAvx2{cmul, cmul_acc, cmul_conj, axpy, scale};

}  // namespace

namespace detail {
const Kernels* avx2_kernels() { return &kAvx2; }
}  // namespace detail

}  // namespace hierarchia::simd

#else

namespace hierarchia::simd::detail {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace hierarchia::simd::detail

#endif
