#ifndef HIERARCHIA_SIMD_HPP
#define HIERARCHIA_SIMD_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace hierarchia::simd {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa);

struct Kernels {
    // out = a * b
    void (*cmul)(cplx* out, const cplx* a, const cplx* b, std::size_t n);
    // acc += a * b
    void (*cmul_acc)(cplx* acc, const cplx* a, const cplx* b, std::size_t n);
    // out = a * conj(b)
    void (*cmul_conj)(cplx* out, const cplx* a, const cplx* b, std::size_t n);
    // acc += s * a
    void (*axpy)(cplx* acc, cplx s, const cplx* a, std::size_t n);
    // out = s * a
    void (*scale)(cplx* out, cplx s, const cplx* a, std::size_t n);
};

// Kernel table for an ISA; unavailable ISAs fall back to scalar.
const Kernels& kernels(Isa isa);
bool isa_available(Isa isa);
std::vector<Isa> available_isas();

// Best ISA on this CPU unless HIERARCHIA_SIMD=scalar|avx2|neon or force_isa() says otherwise.
Isa active_isa();
void force_isa(Isa isa);
const Kernels& active();

namespace detail {
const Kernels& scalar_kernels();
const Kernels* avx2_kernels();
const Kernels* neon_kernels();
}  // namespace detail

}  // namespace hierarchia::simd

#endif
