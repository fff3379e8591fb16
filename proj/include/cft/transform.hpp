#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cft/algebra.hpp"
#include "cft/dft.hpp"
#include "cft/grid.hpp"
#include "cft/kernel.hpp"
#include "cft/parallel.hpp"

namespace cft {

enum class Side { left, right };
enum class Direction { forward, inverse };
enum class Engine { direct, fast };

struct TransformRequest {
  Side side = Side::left;
  Direction direction = Direction::forward;
  Engine engine = Engine::fast;
  std::optional<GridSpec> output_grid;  // direct engine only; fast derives its grid
  int threads = 1;
};

// Frequency grid derived from a spatial grid: per axis, y_m = 2 pi m / (N h)
// for m in [-N/2, N/2). Discrete sums against this grid converge to the
// continuum transform under dm as h -> 0, and the reflection y -> -y is an
// exact index permutation (Nyquist self-paired).
inline GridSpec frequency_grid(const GridSpec& g) {
  std::vector<double> origin(g.n), spacing(g.n);
  for (int k = 0; k < g.n; ++k) {
    spacing[k] = 2.0 * std::numbers::pi / (g.dims[k] * g.spacing[k]);
    origin[k] = -std::numbers::pi / g.spacing[k];
  }
  return GridSpec(g.dims, std::move(origin), std::move(spacing));
}

namespace detail {

inline int kernel_sign(Direction d) { return d == Direction::forward ? 1 : -1; }
inline int dft_sign(Direction d) { return d == Direction::forward ? -1 : 1; }

// Kernel from per-axis factors c_k = cos(x_k y_k), s_k = -sign sin(x_k y_k).
inline void kernel_from_factors(Multivector& out, const double* c, const double* s, int n) {
  const auto& terms = bivector_terms(n);
  for (double& v : out.coeffs()) v = 0.0;
  for (std::uint32_t sub = 0; sub < terms.size(); ++sub) {
    double prod = terms[sub].blade_sign;
    for (int k = 0; k < n; ++k) prod *= ((sub >> k) & 1) ? s[k] : c[k];
    out[terms[sub].blade_mask] = prod;
  }
}

}  // namespace detail

// Direct quadrature of the transform integral: for every output node y,
// sum_j w K(x_j, y) f_j (left) or f_j K(x_j, y) (right) with
// w = prod(h) (2 pi)^{-n/2}. O(N_in N_out); this is the oracle the fast
// engine is checked against, and it accepts an arbitrary output grid.
inline SampledField cft_direct(const SampledField& f, const TransformRequest& req) {
  if (req.engine != Engine::direct)
    throw std::invalid_argument("cft_direct: request engine must be direct");
  const GridSpec out_grid = req.output_grid ? *req.output_grid : frequency_grid(f.grid());
  if (out_grid.n != f.grid().n)
    throw std::invalid_argument("cft_direct: output grid dimension mismatch");
  const int n = f.grid().n;
  const int ksign = detail::kernel_sign(req.direction);
  const double w = f.grid().measure_weight();

  // Per-axis trig tables; the kernel factors over axes, so x_j.y_m only ever
  // combines one input index with one output index per axis.
  std::vector<std::vector<double>> cos_tab(n), sin_tab(n);
  for (int k = 0; k < n; ++k) {
    const int ni = f.grid().dims[k], no = out_grid.dims[k];
    cos_tab[k].resize(static_cast<std::size_t>(no) * ni);
    sin_tab[k].resize(static_cast<std::size_t>(no) * ni);
    for (int m = 0; m < no; ++m) {
      const double y = out_grid.origin[k] + m * out_grid.spacing[k];
      for (int j = 0; j < ni; ++j) {
        const double x = f.grid().origin[k] + j * f.grid().spacing[k];
        const double t = x * y;
        cos_tab[k][static_cast<std::size_t>(m) * ni + j] = std::cos(t);
        sin_tab[k][static_cast<std::size_t>(m) * ni + j] = -ksign * std::sin(t);
      }
    }
  }

  SampledField out(out_grid, f.spec(), f.is_complex());
  const std::size_t n_in = f.points();

  parallel_for(out.points(), req.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<int> m(n), j(n);
    Multivector kern(f.spec());
    Multivector acc_re(f.spec()), acc_im(f.spec());
    double c[4], s[4];
    for (std::size_t po = begin; po < end; ++po) {
      out_grid.multi_index(po, m);
      for (double& v : acc_re.coeffs()) v = 0.0;
      for (double& v : acc_im.coeffs()) v = 0.0;
      std::fill(j.begin(), j.end(), 0);
      for (std::size_t pi = 0; pi < n_in; ++pi) {
        for (int k = 0; k < n; ++k) {
          const std::size_t at =
              static_cast<std::size_t>(m[k]) * f.grid().dims[k] + j[k];
          c[k] = cos_tab[k][at];
          s[k] = sin_tab[k][at];
        }
        detail::kernel_from_factors(kern, c, s, n);
        if (req.side == Side::left) {
          add_geometric_product(acc_re, kern, f.value(pi));
          if (f.is_complex()) add_geometric_product(acc_im, kern, f.cvalue(pi).im);
        } else {
          add_geometric_product(acc_re, f.value(pi), kern);
          if (f.is_complex()) add_geometric_product(acc_im, f.cvalue(pi).im, kern);
        }
        for (int k = n - 1; k >= 0; --k) {  // odometer over the input grid
          if (++j[k] < f.grid().dims[k]) break;
          j[k] = 0;
        }
      }
      acc_re *= w;
      if (f.is_complex()) {
        acc_im *= w;
        out.set_value(po, ComplexMultivector{acc_re, acc_im});
      } else {
        out.set_value(po, acc_re);
      }
    }
  });
  return out;
}

// Single-point direct evaluation on an arbitrary y.
inline ComplexMultivector cft_direct_at(const SampledField& f, std::span<const double> y,
                                        Direction direction = Direction::forward,
                                        Side side = Side::left) {
  const int ksign = detail::kernel_sign(direction);
  Multivector kern(f.spec());
  ComplexMultivector acc(f.spec());
  std::vector<double> x(f.grid().n);
  for (std::size_t p = 0; p < f.points(); ++p) {
    f.grid().coords(p, x);
    eval_kernel_into(kern, x, y, ksign);
    const ComplexMultivector v = f.cvalue(p);
    if (side == Side::left) {
      add_geometric_product(acc.re, kern, v.re);
      add_geometric_product(acc.im, kern, v.im);
    } else {
      add_geometric_product(acc.re, v.re, kern);
      add_geometric_product(acc.im, v.im, kern);
    }
  }
  acc *= f.grid().measure_weight();
  return acc;
}

// Channel-wise classical transform (F f)(y) = int e^{-i x.y} f(x) dm(x) on
// the derived frequency grid, computed as one complex DFT per coefficient
// channel with the continuum calibration: weight prod(h) (2 pi)^{-n/2},
// (-1)^j input phase to center the output on [-pi/h, pi/h), and the
// e^{i sign origin.y} factor for the input origin offset.
inline SampledField classical_ft(const SampledField& f,
                                 Direction direction = Direction::forward, int threads = 1) {
  const int sigma = detail::dft_sign(direction);
  const GridSpec out_grid = frequency_grid(f.grid());
  const int n = f.grid().n;
  const std::size_t points = f.points();
  const double w = f.grid().measure_weight();

  // Per-point factor w * prod_k exp(i sigma o_k y_{m_k}) and input parity.
  std::vector<std::vector<std::complex<double>>> axis_q(n);
  for (int k = 0; k < n; ++k) {
    axis_q[k].resize(out_grid.dims[k]);
    for (int m = 0; m < out_grid.dims[k]; ++m) {
      const double y = out_grid.origin[k] + m * out_grid.spacing[k];
      axis_q[k][m] = std::polar(1.0, sigma * f.grid().origin[k] * y);
    }
  }
  std::vector<std::complex<double>> post(points);
  std::vector<double> parity(points);
  {
    std::vector<int> idx(n);
    for (std::size_t p = 0; p < points; ++p) {
      f.grid().multi_index(p, idx);
      std::complex<double> q{w, 0.0};
      int sum = 0;
      for (int k = 0; k < n; ++k) {
        q *= axis_q[k][idx[k]];
        sum += idx[k];
      }
      post[p] = q;
      parity[p] = (sum & 1) ? -1.0 : 1.0;
    }
  }

  SampledField out(out_grid, f.spec(), true);
  const std::size_t nb = f.blades();
  parallel_for(nb, threads, [&](std::size_t cb, std::size_t ce) {
    std::vector<std::complex<double>> buf(points);
    for (std::size_t c = cb; c < ce; ++c) {
      for (std::size_t p = 0; p < points; ++p) {
        const double re = f.re(p)[c];
        const double im = f.is_complex() ? f.im(p)[c] : 0.0;
        buf[p] = parity[p] * std::complex<double>(re, im);
      }
      dft_nd(buf, f.grid().dims, sigma);
      for (std::size_t p = 0; p < points; ++p) {
        const std::complex<double> v = post[p] * buf[p];
        out.re(p)[c] = v.real();
        out.im(p)[c] = v.imag();
      }
    }
  });
  return out;
}

// Fast engine: classical transform per channel, then recombination
// F_o f = sum_s M^s (F f)(R_s y) (right side: idempotents on the right).
// R_s acts on the frequency grid as the exact index map m -> -s m mod N.
// For real input the imaginary part cancels across paired patterns; its
// residual norm (relative to the field norm) is reported through
// `imag_residue` and the result is the real part.
inline SampledField cft_fast(const SampledField& f, const TransformRequest& req,
                             double* imag_residue = nullptr) {
  if (req.engine != Engine::fast)
    throw std::invalid_argument("cft_fast: request engine must be fast");
  if (req.output_grid && !(*req.output_grid == frequency_grid(f.grid())))
    throw std::invalid_argument("cft_fast: fast engine output grid is derived from the input");
  const int n = f.grid().n;
  const SampledField g = classical_ft(f, req.direction, req.threads);

  const auto patterns = SignPattern::all(n);
  std::vector<ComplexMultivector> ms;
  ms.reserve(patterns.size());
  for (const auto& s : patterns) ms.push_back(idempotent(f.spec(), s));

  SampledField mixed(g.grid(), f.spec(), true);
  parallel_for(g.points(), req.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<int> idx(n), src(n);
    ComplexMultivector acc(f.spec());
    for (std::size_t p = begin; p < end; ++p) {
      g.grid().multi_index(p, idx);
      for (double& v : acc.re.coeffs()) v = 0.0;
      for (double& v : acc.im.coeffs()) v = 0.0;
      for (std::size_t si = 0; si < patterns.size(); ++si) {
        const auto& s = patterns[si].s;
        for (int k = 0; k < n; ++k) {
          const int N = g.grid().dims[k];
          src[k] = s[k] == 1 ? (N - idx[k]) % N : idx[k];
        }
        const ComplexMultivector gv = g.cvalue(g.grid().flat_index(src));
        if (req.side == Side::left)
          add_complex_product(acc, ms[si], gv);
        else
          add_complex_product(acc, gv, ms[si]);
      }
      mixed.set_value(p, acc);
    }
  });

  if (f.is_complex()) {
    if (imag_residue) *imag_residue = 0.0;
    return mixed;
  }
  if (imag_residue) {
    double imag_sq = 0.0, field_sq = 0.0;
    for (std::size_t p = 0; p < mixed.points(); ++p)
      for (double v : mixed.im(p)) imag_sq += v * v;
    for (double v : f.raw()) field_sq += v * v;
    *imag_residue = field_sq > 0.0 ? std::sqrt(imag_sq / field_sq) : std::sqrt(imag_sq);
  }
  return real_part(mixed);
}

inline SampledField transform(const SampledField& f, const TransformRequest& req,
                              double* imag_residue = nullptr) {
  if (req.engine == Engine::direct) {
    if (imag_residue) *imag_residue = 0.0;
    return cft_direct(f, req);
  }
  return cft_fast(f, req, imag_residue);
}

inline SampledField cft_inverse(const SampledField& f, TransformRequest req) {
  req.direction = Direction::inverse;
  return transform(f, req);
}

namespace detail {

inline long long grid_steps(double offset, double h, const char* what) {
  const double steps = offset / h;
  const long long rounded = std::llround(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps)))
    throw std::invalid_argument(std::string(what) + ": offset is not a grid multiple");
  return rounded;
}

inline int wrap(long long v, int N) {
  long long r = v % N;
  if (r < 0) r += N;
  return static_cast<int>(r);
}

// Gathers out[p] = f[src(p)] for a per-axis index remapping.
template <typename MapFn>
SampledField permute_nodes(const SampledField& f, MapFn&& src_of) {
  SampledField out(f.grid(), f.spec(), f.is_complex());
  const int n = f.grid().n;
  std::vector<int> idx(n), src(n);
  for (std::size_t p = 0; p < f.points(); ++p) {
    f.grid().multi_index(p, idx);
    src_of(idx, src);
    const std::size_t q = f.grid().flat_index(src);
    auto dst = out.raw().subspan(p * out.block_size(), out.block_size());
    auto s = f.raw().subspan(q * f.block_size(), f.block_size());
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = s[i];
  }
  return out;
}

}  // namespace detail

// tau_u f (x) = f(x - u); u must be a per-axis multiple of the spacing, the
// shift wraps periodically.
inline SampledField translate(const SampledField& f, std::span<const double> u) {
  const int n = f.grid().n;
  if (static_cast<int>(u.size()) != n)
    throw std::invalid_argument("translate: offset dimension mismatch");
  std::vector<long long> t(n);
  for (int k = 0; k < n; ++k)
    t[k] = detail::grid_steps(u[k], f.grid().spacing[k], "translate");
  return detail::permute_nodes(f, [&](const std::vector<int>& idx, std::vector<int>& src) {
    for (int k = 0; k < n; ++k) src[k] = detail::wrap(idx[k] - t[k], f.grid().dims[k]);
  });
}

// Pointwise multiplication by e^{I(x,u)} on the chosen side.
inline SampledField modulate(const SampledField& f, std::span<const double> u, Side side) {
  const int n = f.grid().n;
  if (static_cast<int>(u.size()) != n)
    throw std::invalid_argument("modulate: offset dimension mismatch");
  SampledField out(f.grid(), f.spec(), f.is_complex());
  Multivector kern(f.spec());
  std::vector<double> x(n);
  for (std::size_t p = 0; p < f.points(); ++p) {
    f.grid().coords(p, x);
    eval_kernel_into(kern, x, u, -1);  // e^{+I(x,u)}
    const ComplexMultivector v = f.cvalue(p);
    ComplexMultivector r(f.spec());
    if (side == Side::left) {
      add_geometric_product(r.re, kern, v.re);
      add_geometric_product(r.im, kern, v.im);
    } else {
      add_geometric_product(r.re, v.re, kern);
      add_geometric_product(r.im, v.im, kern);
    }
    if (f.is_complex())
      out.set_value(p, r);
    else
      out.set_value(p, r.re);
  }
  return out;
}

// h(x) = f^dag(-x). Needs 2*origin to be a grid multiple so that -x_j is a
// node of the periodic extension.
inline SampledField reverse_flip(const SampledField& f) {
  const int n = f.grid().n;
  std::vector<long long> s(n);
  for (int k = 0; k < n; ++k)
    s[k] = detail::grid_steps(-2.0 * f.grid().origin[k], f.grid().spacing[k], "reverse_flip");
  SampledField out = detail::permute_nodes(
      f, [&](const std::vector<int>& idx, std::vector<int>& src) {
        for (int k = 0; k < n; ++k) src[k] = detail::wrap(s[k] - idx[k], f.grid().dims[k]);
      });
  for (std::size_t p = 0; p < out.points(); ++p) {
    if (out.is_complex()) {
      const ComplexMultivector v = out.cvalue(p);
      out.set_value(p, reversion(v));
    } else {
      out.set_value(p, reversion(out.value(p)));
    }
  }
  return out;
}

// Discrete convolution (f*g)(y_m) = w sum_j f(y_m - x_j) g(x_j) with periodic
// wraparound; the grid lattice must contain x = 0 so y - x lands on nodes.
inline SampledField convolve(const SampledField& f, const SampledField& g, int threads = 1) {
  detail::check_same_grid(f, g, "convolve");
  if (f.is_complex() || g.is_complex())
    throw std::invalid_argument("convolve: defined for real-valued fields");
  const int n = f.grid().n;
  std::vector<long long> align(n);
  for (int k = 0; k < n; ++k)
    align[k] = detail::grid_steps(-f.grid().origin[k], f.grid().spacing[k], "convolve");
  const double w = f.grid().measure_weight();

  SampledField out(f.grid(), f.spec(), false);
  parallel_for(f.points(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<int> m(n), j(n), src(n);
    Multivector acc(f.spec());
    for (std::size_t po = begin; po < end; ++po) {
      f.grid().multi_index(po, m);
      for (double& v : acc.coeffs()) v = 0.0;
      std::fill(j.begin(), j.end(), 0);
      for (std::size_t pj = 0; pj < g.points(); ++pj) {
        for (int k = 0; k < n; ++k)
          src[k] = detail::wrap(static_cast<long long>(m[k]) - j[k] + align[k],
                                f.grid().dims[k]);
        add_geometric_product(acc, f.value(f.grid().flat_index(src)), g.value(pj));
        for (int k = n - 1; k >= 0; --k) {
          if (++j[k] < f.grid().dims[k]) break;
          j[k] = 0;
        }
      }
      acc *= w;
      out.set_value(po, acc);
    }
  });
  return out;
}

// Central difference along axis k, periodic.
inline SampledField partial_derivative(const SampledField& f, int k) {
  const int n = f.grid().n;
  if (k < 0 || k >= n) throw std::out_of_range("partial_derivative: axis out of range");
  const double inv2h = 1.0 / (2.0 * f.grid().spacing[k]);
  SampledField out(f.grid(), f.spec(), f.is_complex());
  std::vector<int> idx(n), up(n), dn(n);
  for (std::size_t p = 0; p < f.points(); ++p) {
    f.grid().multi_index(p, idx);
    up = idx;
    dn = idx;
    up[k] = detail::wrap(idx[k] + 1, f.grid().dims[k]);
    dn[k] = detail::wrap(idx[k] - 1, f.grid().dims[k]);
    const auto a = f.raw().subspan(f.grid().flat_index(up) * f.block_size(), f.block_size());
    const auto b = f.raw().subspan(f.grid().flat_index(dn) * f.block_size(), f.block_size());
    auto dst = out.raw().subspan(p * out.block_size(), out.block_size());
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = (a[i] - b[i]) * inv2h;
  }
  return out;
}

}  // namespace cft
