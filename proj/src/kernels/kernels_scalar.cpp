#include "qca/kernels.hpp"

namespace qca::kernels {

namespace {

// std::complex operator* goes through the Annex G NaN-recovery path; the
// kernels work on components directly.
inline void cmul_acc(double ar, double ai, double br, double bi, double& re, double& im) {
  re += ar * br - ai * bi;
  im += ar * bi + ai * br;
}

void apply_gate_scalar(cplx* data, std::size_t len, std::size_t stride, const Gate2& gate) {
  const double g00r = gate.m[0].real(), g00i = gate.m[0].imag();
  const double g01r = gate.m[1].real(), g01i = gate.m[1].imag();
  const double g10r = gate.m[2].real(), g10i = gate.m[2].imag();
  const double g11r = gate.m[3].real(), g11i = gate.m[3].imag();
  for (std::size_t base = 0; base < len; base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; ++j) {
      const double ar = data[j].real(), ai = data[j].imag();
      const double br = data[j + stride].real(), bi = data[j + stride].imag();
      double r0 = 0, i0 = 0, r1 = 0, i1 = 0;
      cmul_acc(g00r, g00i, ar, ai, r0, i0);
      cmul_acc(g01r, g01i, br, bi, r0, i0);
      cmul_acc(g10r, g10i, ar, ai, r1, i1);
      cmul_acc(g11r, g11i, br, bi, r1, i1);
      data[j] = {r0, i0};
      data[j + stride] = {r1, i1};
    }
  }
}

void apply_diagonal_scalar(cplx* data, std::size_t len, const cplx* diag, std::size_t diag_len) {
  for (std::size_t off = 0; off < len; off += diag_len) {
    cplx* col = data + off;
    for (std::size_t i = 0; i < diag_len; ++i) {
      const double ar = col[i].real(), ai = col[i].imag();
      const double dr = diag[i].real(), di = diag[i].imag();
      col[i] = {ar * dr - ai * di, ar * di + ai * dr};
    }
  }
}

QubitMoments qubit_moments_scalar(const cplx* data, std::size_t len, std::size_t stride) {
  QubitMoments m;
  double cr = 0, ci = 0;
  for (std::size_t base = 0; base < len; base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; ++j) {
      const double ar = data[j].real(), ai = data[j].imag();
      const double br = data[j + stride].real(), bi = data[j + stride].imag();
      m.p0 += ar * ar + ai * ai;
      m.p1 += br * br + bi * bi;
      // a * conj(b)
      cr += ar * br + ai * bi;
      ci += ai * br - ar * bi;
    }
  }
  m.coherence = {cr, ci};
  return m;
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{"scalar", apply_gate_scalar, apply_diagonal_scalar, qubit_moments_scalar};
  return set;
}

}  // namespace qca::kernels
