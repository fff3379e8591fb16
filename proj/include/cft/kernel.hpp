#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cft/algebra.hpp"

namespace cft {

// Pattern s in {-1,+1}^n selecting an idempotent M^s and a reflection R_s.
struct SignPattern {
  std::vector<int> s;

  explicit SignPattern(std::vector<int> entries) : s(std::move(entries)) {
    for (int v : s)
      if (v != 1 && v != -1) throw std::invalid_argument("SignPattern: entries must be +-1");
  }

  int size() const { return static_cast<int>(s.size()); }

  // All 2^n patterns in a fixed order: bit k of the counter clear -> s_k = +1.
  static std::vector<SignPattern> all(int n) {
    std::vector<SignPattern> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint32_t p = 0; p < (std::uint32_t{1} << n); ++p) {
      std::vector<int> v(n);
      for (int k = 0; k < n; ++k) v[k] = (p >> k) & 1 ? -1 : 1;
      out.push_back(SignPattern(std::move(v)));
    }
    return out;
  }
};

// Point yhat = y + y' of R^{2n}, split into base and primed coordinates.
struct ExtendedPoint {
  std::vector<double> y;
  std::vector<double> y_prime;
};

namespace detail {

struct BivectorTerm {
  std::uint32_t blade_mask;  // blade of prod_{k in subset} B_k
  double blade_sign;         // sign of that product in ascending blade order
};

// One entry per subset of {B_1..B_n}, indexed by subset bitmask.
inline const std::vector<BivectorTerm>& bivector_terms(int n) {
  static const std::array<std::vector<BivectorTerm>, 5> tables = [] {
    std::array<std::vector<BivectorTerm>, 5> t;
    for (int dim_n = 1; dim_n <= 4; ++dim_n) {
      AlgebraSpec spec(dim_n);
      auto& tab = t[dim_n];
      tab.resize(std::size_t{1} << dim_n);
      for (std::uint32_t sub = 0; sub < (std::uint32_t{1} << dim_n); ++sub) {
        BladeIndex acc{0};
        int sign = 1;
        for (int k = 0; k < dim_n; ++k) {
          if (!((sub >> k) & 1)) continue;
          const std::uint32_t bk =
              (std::uint32_t{1} << k) | (std::uint32_t{1} << (dim_n + k));
          const BladeProduct p = blade_product(acc, BladeIndex{bk}, spec);
          sign *= p.sign;
          acc = p.result;
        }
        tab[sub] = {acc.mask, static_cast<double>(sign)};
      }
    }
    return t;
  }();
  return tables[n];
}

inline void check_point(const AlgebraSpec& spec, std::span<const double> x, const char* what) {
  if (static_cast<int>(x.size()) != spec.n)
    throw std::invalid_argument(std::string(what) + ": point dimension must equal n");
  for (double v : x)
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite input");
}

}  // namespace detail

// I(x,y) = B_1 x_1 y_1 + ... + B_n x_n y_n
inline Multivector eval_I(const AlgebraSpec& spec, std::span<const double> x,
                          std::span<const double> y) {
  detail::check_point(spec, x, "eval_I");
  detail::check_point(spec, y, "eval_I");
  Multivector out(spec);
  for (int k = 0; k < spec.n; ++k) {
    const std::uint32_t mask = (std::uint32_t{1} << k) | (std::uint32_t{1} << (spec.n + k));
    out[mask] = x[k] * y[k];
  }
  return out;
}

// Kernel prod_k (cos(x_k y_k) - sign * B_k sin(x_k y_k)); sign=+1 gives
// e^{-I(x,y)}, sign=-1 its inverse e^{+I(x,y)}. Closed form, forced by
// B_k^2 = -1; evaluated directly into `out` so transform loops do not
// allocate.
inline void eval_kernel_into(Multivector& out, std::span<const double> x,
                             std::span<const double> y, int sign) {
  const int n = out.spec().n;
  double c[4], s[4];
  for (int k = 0; k < n; ++k) {
    const double t = x[k] * y[k];
    c[k] = std::cos(t);
    s[k] = -sign * std::sin(t);
  }
  const auto& terms = detail::bivector_terms(n);
  for (double& v : out.coeffs()) v = 0.0;
  for (std::uint32_t sub = 0; sub < terms.size(); ++sub) {
    double prod = terms[sub].blade_sign;
    for (int k = 0; k < n; ++k) prod *= ((sub >> k) & 1) ? s[k] : c[k];
    out[terms[sub].blade_mask] = prod;
  }
}

inline Multivector eval_kernel(const AlgebraSpec& spec, std::span<const double> x,
                               std::span<const double> y, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("eval_kernel: sign must be +-1");
  detail::check_point(spec, x, "eval_kernel");
  detail::check_point(spec, y, "eval_kernel");
  Multivector out(spec);
  eval_kernel_into(out, x, y, sign);
  return out;
}

namespace detail {

inline double clamped_exp(double t) {
  if (std::abs(t) > 700.0)
    throw std::range_error("extended kernel: scalar exponent magnitude exceeds 700");
  return std::exp(t);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace detail

// e^{-I(x, yhat)} for sign=+1: the scalar factor e^{(x,y')} times the base
// kernel, since I(x, yhat) = I(x,y) - (x,y').
inline Multivector eval_extended_kernel_v1(const AlgebraSpec& spec, std::span<const double> x,
                                           const ExtendedPoint& p, int sign) {
  detail::check_point(spec, p.y_prime, "eval_extended_kernel_v1");
  Multivector k = eval_kernel(spec, x, p.y, sign);
  k *= detail::clamped_exp(sign * detail::dot(x, p.y_prime));
  return k;
}

// e^{-I(yhat, x)} for sign=+1; opposite scalar exponent, I(yhat,x) = I(x,y) + (x,y').
inline Multivector eval_extended_kernel_v2(const AlgebraSpec& spec, const ExtendedPoint& p,
                                           std::span<const double> x, int sign) {
  detail::check_point(spec, p.y_prime, "eval_extended_kernel_v2");
  Multivector k = eval_kernel(spec, x, p.y, sign);
  k *= detail::clamped_exp(-sign * detail::dot(x, p.y_prime));
  return k;
}

// M^s = prod_k (1 + i s_k B_k)/2
inline ComplexMultivector idempotent(const AlgebraSpec& spec, const SignPattern& pattern) {
  if (pattern.size() != spec.n)
    throw std::invalid_argument("idempotent: pattern length must equal n");
  ComplexMultivector acc(spec);
  acc.re[0] = 1.0;
  for (int k = 0; k < spec.n; ++k) {
    ComplexMultivector factor(spec);
    factor.re[0] = 0.5;
    factor.im = Multivector::bivector_unit(spec, k) * (0.5 * pattern.s[k]);
    acc = complex_product(acc, factor);
  }
  return acc;
}

// R_s(y), componentwise -s_k y_k; an involution.
inline std::vector<double> reflect(const SignPattern& pattern, std::span<const double> y) {
  if (pattern.size() != static_cast<int>(y.size()))
    throw std::invalid_argument("reflect: pattern length must equal point dimension");
  std::vector<double> out(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) out[k] = -pattern.s[k] * y[k];
  return out;
}

}  // namespace cft
