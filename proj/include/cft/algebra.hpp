#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace cft {

// Clifford algebra G_{2n} over R with orthonormal generators
// e_1..e_n, e'_1..e'_n, all squaring to +1. A basis blade is the product of
// a set of generators in ascending order and is indexed by a bitmask:
// bit i (i < n) is e_{i+1}, bit n+i is e'_{i+1}. The coefficient array of a
// multivector is dense, ordered by bitmask value.
struct AlgebraSpec {
  int n = 1;

  explicit AlgebraSpec(int base_dim = 1) : n(base_dim) {
    if (n < 1 || n > 4)
      throw std::invalid_argument("AlgebraSpec: base dimension must be in [1,4]");
  }

  int generators() const { return 2 * n; }
  int blade_count() const { return 1 << (2 * n); }
  bool operator==(const AlgebraSpec&) const = default;
};

struct BladeIndex {
  std::uint32_t mask = 0;
};

struct BladeProduct {
  int sign;
  BladeIndex result;
};

// Sign of the blade product e_A e_B: each generator of B is moved left past
// the higher-indexed generators of A, one transposition (= one factor -1)
// per crossing; coincident generators square to +1 and drop out of the mask.
// Everything else in the library (Cayley tables, kernels, idempotents)
// derives its signs from this function.
inline int blade_sign(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  for (std::uint32_t t = a >> 1; t != 0; t >>= 1) swaps += std::popcount(t & b);
  return (swaps & 1) ? -1 : 1;
}

inline BladeProduct blade_product(BladeIndex a, BladeIndex b, const AlgebraSpec& spec) {
  const auto count = static_cast<std::uint32_t>(spec.blade_count());
  if (a.mask >= count || b.mask >= count)
    throw std::invalid_argument("blade_product: mask out of range for algebra");
  return {blade_sign(a.mask, b.mask), BladeIndex{a.mask ^ b.mask}};
}

namespace detail {

// Cached Cayley sign tables, one per base dimension. Entry [a*dim + b] is the
// sign of e_a e_b.
inline const std::vector<std::int8_t>& cayley_table(int n) {
  static const std::array<std::vector<std::int8_t>, 5> tables = [] {
    std::array<std::vector<std::int8_t>, 5> t;
    for (int dim_n = 1; dim_n <= 4; ++dim_n) {
      const std::size_t dim = std::size_t{1} << (2 * dim_n);
      auto& tab = t[dim_n];
      tab.resize(dim * dim);
      for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
          tab[a * dim + b] = static_cast<std::int8_t>(
              blade_sign(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)));
    }
    return t;
  }();
  return tables[n];
}

}  // namespace detail

class Multivector {
 public:
  Multivector() : spec_(1), c_(4, 0.0) {}
  explicit Multivector(const AlgebraSpec& spec)
      : spec_(spec), c_(static_cast<std::size_t>(spec.blade_count()), 0.0) {}

  static Multivector scalar(const AlgebraSpec& spec, double v) {
    Multivector m(spec);
    m.c_[0] = v;
    return m;
  }

  static Multivector blade(const AlgebraSpec& spec, std::uint32_t mask, double v = 1.0) {
    if (mask >= static_cast<std::uint32_t>(spec.blade_count()))
      throw std::invalid_argument("Multivector::blade: mask out of range");
    Multivector m(spec);
    m.c_[mask] = v;
    return m;
  }

  // Generator e_{i+1} for i < n, e'_{i-n+1} for n <= i < 2n.
  static Multivector generator(const AlgebraSpec& spec, int i) {
    if (i < 0 || i >= spec.generators())
      throw std::invalid_argument("Multivector::generator: index out of range");
    return blade(spec, std::uint32_t{1} << i);
  }

  // B_{k+1} = e_{k+1} e'_{k+1}, the commuting square roots of -1.
  static Multivector bivector_unit(const AlgebraSpec& spec, int k) {
    if (k < 0 || k >= spec.n)
      throw std::invalid_argument("Multivector::bivector_unit: index out of range");
    return blade(spec, (std::uint32_t{1} << k) | (std::uint32_t{1} << (spec.n + k)));
  }

  const AlgebraSpec& spec() const { return spec_; }
  std::size_t size() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  std::span<const double> coeffs() const { return c_; }
  std::span<double> coeffs() { return c_; }

  Multivector& operator+=(const Multivector& o) {
    check_spec(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    check_spec(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Multivector& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator-(Multivector a) {
    for (double& v : a.c_) v = -v;
    return a;
  }

  void check_spec(const Multivector& o) const {
    if (!(spec_ == o.spec_))
      throw std::invalid_argument("Multivector: algebra spec mismatch");
  }

 private:
  AlgebraSpec spec_;
  std::vector<double> c_;
};

// out += a b. Zero coefficients are skipped, so products against sparse
// operands (kernels, idempotents, single blades) stay cheap.
inline void add_geometric_product(Multivector& out, const Multivector& a, const Multivector& b) {
  a.check_spec(b);
  out.check_spec(a);
  const int dim = a.spec().blade_count();
  const auto& signs = detail::cayley_table(a.spec().n);
  for (int i = 0; i < dim; ++i) {
    const double ca = a[i];
    if (ca == 0.0) continue;
    const std::int8_t* row = signs.data() + static_cast<std::size_t>(i) * dim;
    for (int j = 0; j < dim; ++j) {
      const double cb = b[j];
      if (cb == 0.0) continue;
      out[i ^ j] += row[j] * ca * cb;
    }
  }
}

inline Multivector geometric_product(const Multivector& a, const Multivector& b) {
  Multivector out(a.spec());
  add_geometric_product(out, a, b);
  return out;
}

inline Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}

inline Multivector grade_projection(const Multivector& a, int k) {
  if (k < 0 || k > a.spec().generators())
    throw std::out_of_range("grade_projection: grade out of range");
  Multivector out(a.spec());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::popcount(static_cast<std::uint32_t>(i)) == k) out[i] = a[i];
  return out;
}

// Reversion: blades of grade k pick up (-1)^{k(k-1)/2}; fixes scalars and
// vectors, anti-automorphism on products.
inline Multivector reversion(const Multivector& a) {
  Multivector out(a.spec());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int k = std::popcount(static_cast<std::uint32_t>(i));
    const int flip = (k * (k - 1) / 2) & 1;
    out[i] = flip ? -a[i] : a[i];
  }
  return out;
}

// A . B = <A B^dag>_0
inline double scalar_product(const Multivector& a, const Multivector& b) {
  a.check_spec(b);
  const Multivector br = reversion(b);
  const int dim = a.spec().blade_count();
  const auto& signs = detail::cayley_table(a.spec().n);
  double acc = 0.0;
  // only i == j lands on the scalar blade
  for (int i = 0; i < dim; ++i)
    acc += signs[static_cast<std::size_t>(i) * dim + i] * a[i] * br[i];
  return acc;
}

inline double norm(const Multivector& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * a[i];
  return std::sqrt(acc);
}

// True iff A lies in the span of products of the B_k, i.e. every blade with a
// nonzero coefficient uses e_k and e'_k in pairs.
inline bool in_bivector_subalgebra(const Multivector& a, double tol = 0.0) {
  const int n = a.spec().n;
  const std::uint32_t low = (std::uint32_t{1} << n) - 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) <= tol) continue;
    const auto mask = static_cast<std::uint32_t>(i);
    if ((mask & low) != (mask >> n)) return false;
  }
  return true;
}

// Element of C (x) G_{2n}, stored as a pair of real multivectors.
struct ComplexMultivector {
  Multivector re, im;

  ComplexMultivector() = default;
  explicit ComplexMultivector(const AlgebraSpec& spec) : re(spec), im(spec) {}
  ComplexMultivector(Multivector real_part, Multivector imag_part)
      : re(std::move(real_part)), im(std::move(imag_part)) {
    re.check_spec(im);
  }

  static ComplexMultivector from_real(Multivector m) {
    Multivector z(m.spec());
    return {std::move(m), std::move(z)};
  }

  const AlgebraSpec& spec() const { return re.spec(); }

  ComplexMultivector& operator+=(const ComplexMultivector& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexMultivector& operator-=(const ComplexMultivector& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexMultivector& operator*=(double s) {
    re *= s;
    im *= s;
    return *this;
  }
  friend ComplexMultivector operator+(ComplexMultivector a, const ComplexMultivector& b) {
    return a += b;
  }
  friend ComplexMultivector operator-(ComplexMultivector a, const ComplexMultivector& b) {
    return a -= b;
  }
  friend ComplexMultivector operator*(ComplexMultivector a, double s) { return a *= s; }
};

inline void add_complex_product(ComplexMultivector& out, const ComplexMultivector& a,
                                const ComplexMultivector& b) {
  add_geometric_product(out.re, a.re, b.re);
  Multivector t = geometric_product(a.im, b.im);
  out.re -= t;
  add_geometric_product(out.im, a.re, b.im);
  add_geometric_product(out.im, a.im, b.re);
}

inline ComplexMultivector complex_product(const ComplexMultivector& a,
                                          const ComplexMultivector& b) {
  ComplexMultivector out(a.spec());
  add_complex_product(out, a, b);
  return out;
}

inline ComplexMultivector operator*(const ComplexMultivector& a, const ComplexMultivector& b) {
  return complex_product(a, b);
}

inline ComplexMultivector reversion(const ComplexMultivector& a) {
  return {reversion(a.re), reversion(a.im)};
}

inline double norm(const ComplexMultivector& a) {
  const double nr = norm(a.re), ni = norm(a.im);
  return std::sqrt(nr * nr + ni * ni);
}

}  // namespace cft
