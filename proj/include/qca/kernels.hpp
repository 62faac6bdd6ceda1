#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace qca::kernels {

using cplx = std::complex<double>;

/// Row-major 2x2 complex gate {g00, g01, g10, g11}.
struct Gate2 {
  cplx m[4];
};

/// Second moments of one qubit's marginal over a state: sum |a0|^2,
/// sum |a1|^2 and sum a0 * conj(a1), where a0/a1 are the amplitude pairs
/// differing only in that qubit's bit.
struct QubitMoments {
  double p0 = 0.0;
  double p1 = 0.0;
  cplx coherence{0.0, 0.0};
};

// Kernel entry points. `len` is the number of complex values in `data` and
// must be a multiple of 2 * stride; `stride` is a power of two.
using ApplyGateFn = void (*)(cplx* data, std::size_t len, std::size_t stride, const Gate2& gate);
// data[i] *= diag[i % diag_len]; diag_len is a power of two dividing len.
using ApplyDiagonalFn = void (*)(cplx* data, std::size_t len, const cplx* diag, std::size_t diag_len);
using QubitMomentsFn = QubitMoments (*)(const cplx* data, std::size_t len, std::size_t stride);

struct KernelSet {
  std::string_view name;
  ApplyGateFn apply_gate;
  ApplyDiagonalFn apply_diagonal;
  QubitMomentsFn qubit_moments;
};

/// Portable reference implementation.
const KernelSet& scalar_kernels();

/// AVX2+FMA variants, or nullptr when not compiled in or unsupported by the CPU.
const KernelSet* avx2_kernels();

/// Kernel set used by the library. Chosen once: AVX2 when available, unless
/// the environment variable QCA_KERNELS=scalar forces the reference path.
const KernelSet& active_kernels();

}  // namespace qca::kernels
