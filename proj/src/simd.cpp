#include "hierarchia/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace hierarchia::simd {

namespace {

void cmul_s(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
        out[i] = cplx(ar * br - ai * bi, ai * br + ar * bi);
    }
}

void cmul_acc_s(cplx* acc, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
        acc[i] += cplx(ar * br - ai * bi, ai * br + ar * bi);
    }
}

void cmul_conj_s(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = -b[i].imag();
        out[i] = cplx(ar * br - ai * bi, ai * br + ar * bi);
    }
}

void axpy_s(cplx* acc, cplx s, const cplx* a, std::size_t n) {
    double sr = s.real(), si = s.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double ar = a[i].real(), ai = a[i].imag();
        acc[i] += cplx(sr * ar - si * ai, si * ar + sr * ai);
    }
}

void scale_s(cplx* out, cplx s, const cplx* a, std::size_t n) {
    double sr = s.real(), si = s.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double ar = a[i].real(), ai = a[i].imag();
        out[i] = cplx(sr * ar - si * ai, si * ar + sr * ai);
    }
}

const Kernels kScalar{cmul_s, cmul_acc_s, cmul_conj_s, axpy_s, scale_s};

Isa detect() {
    if (const char* env = std::getenv("HIERARCHIA_SIMD")) {
        if (!std::strcmp(env, "scalar")) return Isa::Scalar;
        if (!std::strcmp(env, "avx2") && isa_available(Isa::Avx2)) return Isa::Avx2;
        if (!std::strcmp(env, "neon") && isa_available(Isa::Neon)) return Isa::Neon;
    }
    if (isa_available(Isa::Avx2)) return Isa::Avx2;
    if (isa_available(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
}

std::atomic<int>& forced() {
    static std::atomic<int> f{-1};
    return f;
}

}  // namespace

namespace detail {
const Kernels& scalar_kernels() { return kScalar; }
}  // namespace detail

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "?";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
            return detail::avx2_kernels() != nullptr && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::Neon: return detail::neon_kernels() != nullptr;
    }
    return false;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa i : {Isa::Scalar, Isa::Avx2, Isa::Neon})
        if (isa_available(i)) out.push_back(i);
    return out;
}

const Kernels& kernels(Isa isa) {
    if (!isa_available(isa)) return kScalar;
    if (isa == Isa::Avx2) return *detail::avx2_kernels();
    if (isa == Isa::Neon) return *detail::neon_kernels();
    return kScalar;
}

Isa active_isa() {
    static const Isa detected = detect();
    int f = forced().load();
    return f >= 0 ? static_cast<Isa>(f) : detected;
}

void force_isa(Isa isa) { forced().store(isa_available(isa) ? static_cast<int>(isa) : static_cast<int>(Isa::Scalar)); }

const Kernels& active() { return kernels(active_isa()); }

}  // namespace hierarchia::simd
