// AVX2/FMA variants of the scalar kernels. This translation unit is the only
// one compiled with -mavx2 -mfma; dispatch.cpp guards every call behind a
// runtime CPU check.
#include <immintrin.h>

#include "qca/kernels.hpp"

namespace qca::kernels {

namespace {

// Two interleaved complex values per register: [re0, im0, re1, im1].
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// Lane-wise complex product; g holds one complex factor per 128-bit lane.
inline __m256d cmul_lanes(__m256d g, __m256d v) {
  const __m256d gr = _mm256_movedup_pd(g);
  const __m256d gi = _mm256_permute_pd(g, 0b1111);
  return _mm256_fmaddsub_pd(gr, v, _mm256_mul_pd(gi, swap_re_im(v)));
}

inline __m256d broadcast(const cplx& z) {
  return _mm256_setr_pd(z.real(), z.imag(), z.real(), z.imag());
}

inline __m256d pair(const cplx& lo, const cplx& hi) {
  return _mm256_setr_pd(lo.real(), lo.imag(), hi.real(), hi.imag());
}

inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }
inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }

void apply_gate_avx2(cplx* data, std::size_t len, std::size_t stride, const Gate2& gate) {
  if (stride == 1) {
    const __m256d diag = pair(gate.m[0], gate.m[3]);
    const __m256d anti = pair(gate.m[1], gate.m[2]);
    for (std::size_t j = 0; j < len; j += 2) {
      double* p = as_doubles(data + j);
      const __m256d v = _mm256_loadu_pd(p);
      const __m256d vs = _mm256_permute2f128_pd(v, v, 0x01);
      _mm256_storeu_pd(p, _mm256_add_pd(cmul_lanes(diag, v), cmul_lanes(anti, vs)));
    }
    return;
  }
  const __m256d g00 = broadcast(gate.m[0]);
  const __m256d g01 = broadcast(gate.m[1]);
  const __m256d g10 = broadcast(gate.m[2]);
  const __m256d g11 = broadcast(gate.m[3]);
  for (std::size_t base = 0; base < len; base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; j += 2) {
      double* pa = as_doubles(data + j);
      double* pb = as_doubles(data + j + stride);
      const __m256d a = _mm256_loadu_pd(pa);
      const __m256d b = _mm256_loadu_pd(pb);
      _mm256_storeu_pd(pa, _mm256_add_pd(cmul_lanes(g00, a), cmul_lanes(g01, b)));
      _mm256_storeu_pd(pb, _mm256_add_pd(cmul_lanes(g10, a), cmul_lanes(g11, b)));
    }
  }
}

void apply_diagonal_avx2(cplx* data, std::size_t len, const cplx* diag, std::size_t diag_len) {
  if (diag_len < 2) {
    scalar_kernels().apply_diagonal(data, len, diag, diag_len);
    return;
  }
  for (std::size_t off = 0; off < len; off += diag_len) {
    double* col = as_doubles(data + off);
    const double* d = as_doubles(diag);
    for (std::size_t i = 0; i < 2 * diag_len; i += 4) {
      const __m256d x = _mm256_loadu_pd(col + i);
      _mm256_storeu_pd(col + i, cmul_lanes(_mm256_loadu_pd(d + i), x));
    }
  }
}

inline double lane(__m256d v, int k) {
  alignas(32) double tmp[4];
  _mm256_store_pd(tmp, v);
  return tmp[k];
}

QubitMoments qubit_moments_avx2(const cplx* data, std::size_t len, std::size_t stride) {
  __m256d acc_aa = _mm256_setzero_pd();
  __m256d acc_bb = _mm256_setzero_pd();
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  QubitMoments m;
  if (stride == 1) {
    // One register holds (a, b); the upper lane of the cross products duplicates the lower.
    for (std::size_t j = 0; j < len; j += 2) {
      const __m256d v = _mm256_loadu_pd(as_doubles(data + j));
      const __m256d vs = _mm256_permute2f128_pd(v, v, 0x01);
      acc_aa = _mm256_fmadd_pd(v, v, acc_aa);
      acc_re = _mm256_fmadd_pd(v, vs, acc_re);
      acc_im = _mm256_fmadd_pd(v, swap_re_im(vs), acc_im);
    }
    m.p0 = lane(acc_aa, 0) + lane(acc_aa, 1);
    m.p1 = lane(acc_aa, 2) + lane(acc_aa, 3);
    m.coherence = {lane(acc_re, 0) + lane(acc_re, 1), lane(acc_im, 1) - lane(acc_im, 0)};
    return m;
  }
  for (std::size_t base = 0; base < len; base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; j += 2) {
      const __m256d a = _mm256_loadu_pd(as_doubles(data + j));
      const __m256d b = _mm256_loadu_pd(as_doubles(data + j + stride));
      acc_aa = _mm256_fmadd_pd(a, a, acc_aa);
      acc_bb = _mm256_fmadd_pd(b, b, acc_bb);
      acc_re = _mm256_fmadd_pd(a, b, acc_re);
      acc_im = _mm256_fmadd_pd(a, swap_re_im(b), acc_im);
    }
  }
  m.p0 = lane(acc_aa, 0) + lane(acc_aa, 1) + lane(acc_aa, 2) + lane(acc_aa, 3);
  m.p1 = lane(acc_bb, 0) + lane(acc_bb, 1) + lane(acc_bb, 2) + lane(acc_bb, 3);
  m.coherence = {lane(acc_re, 0) + lane(acc_re, 1) + lane(acc_re, 2) + lane(acc_re, 3),
                 lane(acc_im, 1) - lane(acc_im, 0) + lane(acc_im, 3) - lane(acc_im, 2)};
  return m;
}

}  // namespace

const KernelSet& avx2_kernel_table() {
  static const KernelSet set{"avx2", apply_gate_avx2, apply_diagonal_avx2, qubit_moments_avx2};
  return set;
}

}  // namespace qca::kernels
