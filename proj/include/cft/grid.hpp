#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cft/algebra.hpp"

namespace cft {

// Uniform rectangular grid in R^n, node j at origin + j * spacing, row-major
// ordering with axis 0 slowest. Axis lengths must be even: the fast engine
// reflects frequencies by index negation and needs the Nyquist index to pair
// with itself.
struct GridSpec {
  int n = 1;
  std::vector<int> dims;
  std::vector<double> origin;
  std::vector<double> spacing;

  GridSpec() : dims{2}, origin{0.0}, spacing{1.0} {}

  GridSpec(std::vector<int> d, std::vector<double> o, std::vector<double> h)
      : n(static_cast<int>(d.size())), dims(std::move(d)), origin(std::move(o)),
        spacing(std::move(h)) {
    if (n < 1 || n > 4) throw std::invalid_argument("GridSpec: dimension must be in [1,4]");
    if (origin.size() != dims.size() || spacing.size() != dims.size())
      throw std::invalid_argument("GridSpec: dims/origin/spacing lengths differ");
    std::size_t total = 1;
    for (int k = 0; k < n; ++k) {
      if (dims[k] < 2 || dims[k] % 2 != 0)
        throw std::invalid_argument("GridSpec: axis lengths must be even and >= 2");
      if (!(spacing[k] > 0.0) || !std::isfinite(spacing[k]))
        throw std::invalid_argument("GridSpec: spacing must be positive and finite");
      if (!std::isfinite(origin[k]))
        throw std::invalid_argument("GridSpec: origin must be finite");
      total *= static_cast<std::size_t>(dims[k]);
      if (total > (std::size_t{1} << 24))
        throw std::invalid_argument("GridSpec: total point count exceeds 2^24");
    }
  }

  std::size_t point_count() const {
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    return total;
  }

  void multi_index(std::size_t flat, std::span<int> out) const {
    for (int k = n - 1; k >= 0; --k) {
      out[k] = static_cast<int>(flat % static_cast<std::size_t>(dims[k]));
      flat /= static_cast<std::size_t>(dims[k]);
    }
  }

  std::size_t flat_index(std::span<const int> idx) const {
    std::size_t flat = 0;
    for (int k = 0; k < n; ++k)
      flat = flat * static_cast<std::size_t>(dims[k]) + static_cast<std::size_t>(idx[k]);
    return flat;
  }

  void coords(std::size_t flat, std::span<double> out) const {
    for (int k = n - 1; k >= 0; --k) {
      const auto j = flat % static_cast<std::size_t>(dims[k]);
      out[k] = origin[k] + static_cast<double>(j) * spacing[k];
      flat /= static_cast<std::size_t>(dims[k]);
    }
  }

  std::vector<double> coords(std::size_t flat) const {
    std::vector<double> out(n);
    coords(flat, out);
    return out;
  }

  double cell_volume() const {
    double v = 1.0;
    for (double h : spacing) v *= h;
    return v;
  }

  // Quadrature weight of one node under the normalized measure
  // dm = (2 pi)^{-n/2} dx.
  double measure_weight() const {
    return cell_volume() * std::pow(2.0 * std::numbers::pi, -0.5 * n);
  }

  bool operator==(const GridSpec&) const = default;
};

// One multivector (optionally complexified) per grid node, stored flat:
// per node, 4^n coefficients, followed by 4^n imaginary coefficients when
// complex. This matches the MVF1 payload byte for byte.
class SampledField {
 public:
  SampledField() : grid_(), spec_(1), complex_(false), data_(grid_.point_count() * 4, 0.0) {}

  SampledField(GridSpec grid, AlgebraSpec spec, bool complex_values = false)
      : grid_(std::move(grid)), spec_(spec), complex_(complex_values) {
    if (grid_.n != spec_.n)
      throw std::invalid_argument("SampledField: grid and algebra dimension differ");
    data_.assign(grid_.point_count() * block_size(), 0.0);
  }

  const GridSpec& grid() const { return grid_; }
  const AlgebraSpec& spec() const { return spec_; }
  bool is_complex() const { return complex_; }
  std::size_t points() const { return grid_.point_count(); }
  std::size_t blades() const { return static_cast<std::size_t>(spec_.blade_count()); }
  std::size_t block_size() const { return blades() * (complex_ ? 2 : 1); }

  std::span<double> re(std::size_t p) { return {data_.data() + p * block_size(), blades()}; }
  std::span<const double> re(std::size_t p) const {
    return {data_.data() + p * block_size(), blades()};
  }
  std::span<double> im(std::size_t p) {
    return {data_.data() + p * block_size() + blades(), complex_ ? blades() : 0};
  }
  std::span<const double> im(std::size_t p) const {
    return {data_.data() + p * block_size() + blades(), complex_ ? blades() : 0};
  }

  Multivector value(std::size_t p) const {
    Multivector m(spec_);
    const auto src = re(p);
    for (std::size_t i = 0; i < src.size(); ++i) m[i] = src[i];
    return m;
  }

  ComplexMultivector cvalue(std::size_t p) const {
    ComplexMultivector m(spec_);
    const auto sr = re(p);
    for (std::size_t i = 0; i < sr.size(); ++i) m.re[i] = sr[i];
    if (complex_) {
      const auto si = im(p);
      for (std::size_t i = 0; i < si.size(); ++i) m.im[i] = si[i];
    }
    return m;
  }

  void set_value(std::size_t p, const Multivector& m) {
    spec_check(m.spec());
    auto dst = re(p);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = m[i];
    if (complex_) {
      auto di = im(p);
      for (double& v : di) v = 0.0;
    }
  }

  void set_value(std::size_t p, const ComplexMultivector& m) {
    spec_check(m.spec());
    if (!complex_)
      throw std::invalid_argument("SampledField: complex value assigned to real field");
    auto dr = re(p);
    auto di = im(p);
    for (std::size_t i = 0; i < dr.size(); ++i) {
      dr[i] = m.re[i];
      di[i] = m.im[i];
    }
  }

  std::span<const double> raw() const { return data_; }
  std::span<double> raw() { return data_; }

 private:
  void spec_check(const AlgebraSpec& s) const {
    if (!(s == spec_)) throw std::invalid_argument("SampledField: algebra spec mismatch");
  }

  GridSpec grid_;
  AlgebraSpec spec_;
  bool complex_;
  std::vector<double> data_;
};

namespace detail {

inline void check_same_grid(const SampledField& a, const SampledField& b, const char* what) {
  if (!(a.grid() == b.grid()) || !(a.spec() == b.spec()))
    throw std::invalid_argument(std::string(what) + ": grid or algebra mismatch");
}

inline double node_norm_sq(const SampledField& f, std::size_t p) {
  double acc = 0.0;
  for (double v : f.re(p)) acc += v * v;
  for (double v : f.im(p)) acc += v * v;
  return acc;
}

}  // namespace detail

// ||f||_2 under dm: sqrt( sum_j |f_j|^2 * prod(h) * (2 pi)^{-n/2} ).
inline double l2_norm(const SampledField& f) {
  double acc = 0.0;
  for (std::size_t p = 0; p < f.points(); ++p) acc += detail::node_norm_sq(f, p);
  return std::sqrt(acc * f.grid().measure_weight());
}

inline double l1_norm(const SampledField& f) {
  double acc = 0.0;
  for (std::size_t p = 0; p < f.points(); ++p) acc += std::sqrt(detail::node_norm_sq(f, p));
  return acc * f.grid().measure_weight();
}

inline double linf_norm(const SampledField& f) {
  double best = 0.0;
  for (std::size_t p = 0; p < f.points(); ++p)
    best = std::max(best, detail::node_norm_sq(f, p));
  return std::sqrt(best);
}

// (f,g)_2 = sum_j f_j . g_j * prod(h); plain Lebesgue weight, no (2 pi)
// factor, so (f,f)_2 = ||f||_2^2 (2 pi)^{n/2}.
inline double inner_product(const SampledField& f, const SampledField& g) {
  detail::check_same_grid(f, g, "inner_product");
  if (f.is_complex() || g.is_complex())
    throw std::invalid_argument("inner_product: defined for real-valued fields");
  double acc = 0.0;
  for (std::size_t p = 0; p < f.points(); ++p)
    acc += scalar_product(f.value(p), g.value(p));
  return acc * f.grid().cell_volume();
}

inline SampledField add(const SampledField& a, const SampledField& b) {
  detail::check_same_grid(a, b, "add");
  if (a.is_complex() != b.is_complex()) throw std::invalid_argument("add: complex flag mismatch");
  SampledField out = a;
  auto dst = out.raw();
  const auto src = b.raw();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  return out;
}

inline SampledField sub(const SampledField& a, const SampledField& b) {
  detail::check_same_grid(a, b, "sub");
  if (a.is_complex() != b.is_complex()) throw std::invalid_argument("sub: complex flag mismatch");
  SampledField out = a;
  auto dst = out.raw();
  const auto src = b.raw();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= src[i];
  return out;
}

inline SampledField scale(const SampledField& f, double s) {
  SampledField out = f;
  for (double& v : out.raw()) v *= s;
  return out;
}

// Pointwise A f(x_j).
inline SampledField left_multiply(const Multivector& a, const SampledField& f) {
  SampledField out(f.grid(), f.spec(), f.is_complex());
  for (std::size_t p = 0; p < f.points(); ++p) {
    if (f.is_complex()) {
      ComplexMultivector v = f.cvalue(p);
      out.set_value(p, ComplexMultivector{a * v.re, a * v.im});
    } else {
      out.set_value(p, a * f.value(p));
    }
  }
  return out;
}

// Pointwise f(x_j) A.
inline SampledField right_multiply(const SampledField& f, const Multivector& a) {
  SampledField out(f.grid(), f.spec(), f.is_complex());
  for (std::size_t p = 0; p < f.points(); ++p) {
    if (f.is_complex()) {
      ComplexMultivector v = f.cvalue(p);
      out.set_value(p, ComplexMultivector{v.re * a, v.im * a});
    } else {
      out.set_value(p, f.value(p) * a);
    }
  }
  return out;
}

inline SampledField to_complex(const SampledField& f) {
  if (f.is_complex()) return f;
  SampledField out(f.grid(), f.spec(), true);
  for (std::size_t p = 0; p < f.points(); ++p) {
    auto dst = out.re(p);
    const auto src = f.re(p);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i];
  }
  return out;
}

inline SampledField real_part(const SampledField& f) {
  SampledField out(f.grid(), f.spec(), false);
  for (std::size_t p = 0; p < f.points(); ++p) {
    auto dst = out.re(p);
    const auto src = f.re(p);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i];
  }
  return out;
}

inline double imag_linf(const SampledField& f) {
  double best = 0.0;
  for (std::size_t p = 0; p < f.points(); ++p) {
    double acc = 0.0;
    for (double v : f.im(p)) acc += v * v;
    best = std::max(best, acc);
  }
  return std::sqrt(best);
}

// max_j |a_j - b_j| over nodes (multivector norm per node).
inline double max_node_diff(const SampledField& a, const SampledField& b) {
  detail::check_same_grid(a, b, "max_node_diff");
  double best = 0.0;
  for (std::size_t p = 0; p < a.points(); ++p) {
    const ComplexMultivector va = a.cvalue(p), vb = b.cvalue(p);
    double acc = 0.0;
    for (std::size_t i = 0; i < va.re.size(); ++i) {
      const double dr = va.re[i] - vb.re[i];
      const double di = va.im[i] - vb.im[i];
      acc += dr * dr + di * di;
    }
    best = std::max(best, acc);
  }
  return std::sqrt(best);
}

// max_j |a_j - b_j| / max_j |b_j|.
inline double rel_linf(const SampledField& a, const SampledField& b) {
  const double ref = linf_norm(b);
  const double diff = max_node_diff(a, b);
  return ref > 0.0 ? diff / ref : diff;
}

}  // namespace cft
