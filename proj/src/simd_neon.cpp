#include "hierarchia/simd.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

namespace hierarchia::simd {

namespace {

inline float64x2_t mul1(float64x2_t a, float64x2_t b) {
    float64x2_t br = vdupq_laneq_f64(b, 0);
    float64x2_t bi = vdupq_laneq_f64(b, 1);
    float64x2_t as = vextq_f64(a, a, 1);
    const float64x2_t sign = {-1.0, 1.0};
    return vfmaq_f64(vmulq_f64(a, br), vmulq_f64(as, sign), bi);
}

inline float64x2_t load(const cplx* p) { return vld1q_f64(reinterpret_cast<const double*>(p)); }
inline void store(cplx* p, float64x2_t v) { vst1q_f64(reinterpret_cast<double*>(p), v); }

void cmul(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) store(out + i, mul1(load(a + i), load(b + i)));
}

void cmul_acc(cplx* acc, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) store(acc + i, vaddq_f64(load(acc + i), mul1(load(a + i), load(b + i))));
}

void cmul_conj(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    const float64x2_t c = {1.0, -1.0};
    for (std::size_t i = 0; i < n; ++i) store(out + i, mul1(load(a + i), vmulq_f64(load(b + i), c)));
}

void axpy(cplx* acc, cplx s, const cplx* a, std::size_t n) {
    const float64x2_t sv = {s.real(), s.imag()};
    for (std::size_t i = 0; i < n; ++i) store(acc + i, vaddq_f64(load(acc + i), mul1(load(a + i), sv)));
}

void scale(cplx* out, cplx s, const cplx* a, std::size_t n) {
    const float64x2_t sv = {s.real(), s.imag()};
    for (std::size_t i = 0; i < n; ++i) store(out + i, mul1(load(a + i), sv));
}

const Kernels kNeon{cmul, cmul_acc, cmul_conj, axpy, scale};

}  // namespace

namespace detail {
const Kernels* neon_kernels() { return &kNeon; }
}  // namespace detail

}  // namespace hierarchia::simd

#else

namespace hierarchia::simd::detail {
const Kernels* neon_kernels() { return nullptr; }
}  // namespace hierarchia::simd::detail

#endif
