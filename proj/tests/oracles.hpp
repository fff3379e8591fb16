#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "cft/algebra.hpp"

namespace cft::testing {

// exp(t B_k) summed term by term; the closed-form kernel must agree.
inline Multivector taylor_exp_bivector(const AlgebraSpec& spec, int k, double t, int terms = 60) {
  const Multivector b = Multivector::bivector_unit(spec, k);
  Multivector acc = Multivector::scalar(spec, 1.0);
  Multivector power = Multivector::scalar(spec, 1.0);
  for (int j = 1; j <= terms; ++j) {
    power = power * b;
    power *= t / j;  // power = (tB)^j / j!, folded incrementally
    acc += power;
  }
  return acc;
}

// Reference O(N^2) DFT, sum_j exp(sign 2 pi i j k / N) a_j.
inline std::vector<std::complex<double>> naive_dft(std::span<const std::complex<double>> a,
                                                   int sign) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * 3.141592653589793238462643 *
                         static_cast<double>(j * k % n) / static_cast<double>(n);
      acc += a[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

// Closed form for the v1-left extension of the [0,1] box in one dimension:
// (2 pi)^{-1/2} (e^z - 1)/z under B_1 <-> i with z = y' - i y.
inline Multivector box_extension_expected(const AlgebraSpec& spec, double y, double y_prime) {
  const std::complex<double> z{y_prime, -y};
  const std::complex<double> c = (std::exp(z) - 1.0) / z;
  const double scale = 0.3989422804014327;  // (2 pi)^{-1/2}
  Multivector out(spec);
  out[0] = scale * c.real();
  out[3] = scale * c.imag();  // B_1 = e_1 e'_1, mask 0b11 for n = 1
  return out;
}

inline double max_coeff_diff(const Multivector& a, const Multivector& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

inline double max_coeff_diff(const ComplexMultivector& a, const ComplexMultivector& b) {
  return std::max(max_coeff_diff(a.re, b.re), max_coeff_diff(a.im, b.im));
}

}  // namespace cft::testing
