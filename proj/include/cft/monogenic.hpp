#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cft/algebra.hpp"
#include "cft/grid.hpp"
#include "cft/kernel.hpp"
#include "cft/transform.hpp"

namespace cft {

// The four extensions of the transform to yhat = y + y' in R^{2n}:
// v1 integrates against e^{-I(x, yhat)} (scalar weight e^{+(x,y')}),
// v2 against e^{-I(yhat, x)} (weight e^{-(x,y')}); left/right pick the side
// the kernel multiplies on. v1_left produces monogenic functions, v2_right
// right-monogenic ones.
enum class ExtensionVariant { v1_left, v1_right, v2_left, v2_right };

struct ExtensionSpec {
  ExtensionVariant variant;
  const SampledField& source;
};

struct divergent_extension : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline int exponent_sign(ExtensionVariant v) {
  return (v == ExtensionVariant::v1_left || v == ExtensionVariant::v1_right) ? 1 : -1;
}

inline Side variant_side(ExtensionVariant v) {
  return (v == ExtensionVariant::v1_left || v == ExtensionVariant::v2_left) ? Side::left
                                                                            : Side::right;
}

inline bool boundary_node(const GridSpec& g, std::span<const int> idx) {
  for (int k = 0; k < g.n; ++k)
    if (idx[k] == 0 || idx[k] == g.dims[k] - 1) return true;
  return false;
}

}  // namespace detail

// Pointwise quadrature of the extended kernel against the source density.
// Requires the weighted integrand e^{+-(x,y')} f(x) to decay on the grid:
// its magnitude on boundary nodes must stay below 1e-10 of its maximum.
inline Multivector extend(const ExtensionSpec& spec, const ExtendedPoint& p) {
  const SampledField& src = spec.source;
  if (src.is_complex())
    throw std::invalid_argument("extend: source must be a real-valued field");
  const int n = src.grid().n;
  if (static_cast<int>(p.y.size()) != n || static_cast<int>(p.y_prime.size()) != n)
    throw std::invalid_argument("extend: point dimension mismatch");

  const int es = detail::exponent_sign(spec.variant);
  const Side side = detail::variant_side(spec.variant);

  std::vector<double> weight(src.points());
  double max_all = 0.0, max_boundary = 0.0;
  {
    std::vector<double> x(n);
    std::vector<int> idx(n);
    for (std::size_t j = 0; j < src.points(); ++j) {
      src.grid().coords(j, x);
      weight[j] = detail::clamped_exp(es * detail::dot(x, p.y_prime));
      const double mag = weight[j] * norm(src.value(j));
      max_all = std::max(max_all, mag);
      src.grid().multi_index(j, idx);
      if (detail::boundary_node(src.grid(), idx)) max_boundary = std::max(max_boundary, mag);
    }
  }
  if (max_all > 0.0 && max_boundary >= 1e-10 * max_all)
    throw divergent_extension("extend: weighted integrand does not decay on the grid");

  Multivector kern(src.spec());
  Multivector acc(src.spec());
  std::vector<double> x(n);
  for (std::size_t j = 0; j < src.points(); ++j) {
    src.grid().coords(j, x);
    eval_kernel_into(kern, x, p.y, 1);
    kern *= weight[j];
    if (side == Side::left)
      add_geometric_product(acc, kern, src.value(j));
    else
      add_geometric_product(acc, src.value(j), kern);
  }
  acc *= src.grid().measure_weight();
  return acc;
}

using ExtendedFn = std::function<Multivector(const ExtendedPoint&)>;

inline ExtendedFn extension_fn(const ExtensionSpec& spec) {
  return [&spec](const ExtendedPoint& p) { return extend(spec, p); };
}

// Central-difference estimate of the plane Dirac operator
// d_i = e_i d/dy_i + e'_i d/dy'_i applied on the chosen side.
inline Multivector dirac_residual_fn(const ExtendedFn& fn, const ExtendedPoint& p, double step,
                                     int axis, Side side) {
  if (!(step >= 1e-6))
    throw std::invalid_argument("dirac_residual: step below cancellation guard 1e-6");
  const int n = static_cast<int>(p.y.size());
  if (axis < 0 || axis >= n) throw std::out_of_range("dirac_residual: axis out of range");

  auto shifted = [&p](bool primed, int axis_k, double delta) {
    ExtendedPoint q = p;
    (primed ? q.y_prime : q.y)[axis_k] += delta;
    return q;
  };
  const double inv2h = 1.0 / (2.0 * step);
  Multivector dy = (fn(shifted(false, axis, step)) - fn(shifted(false, axis, -step))) * inv2h;
  Multivector dyp = (fn(shifted(true, axis, step)) - fn(shifted(true, axis, -step))) * inv2h;

  const AlgebraSpec& spec = dy.spec();
  const Multivector e = Multivector::generator(spec, axis);
  const Multivector ep = Multivector::generator(spec, spec.n + axis);
  if (side == Side::left) return e * dy + ep * dyp;
  return dy * e + dyp * ep;
}

inline Multivector dirac_residual(const ExtensionSpec& spec, const ExtendedPoint& p, double step,
                                  int axis) {
  return dirac_residual_fn(extension_fn(spec), p, step, axis,
                           detail::variant_side(spec.variant));
}

// Axis-aligned rectangle in the (e_k, e'_k) coordinate plane; the remaining
// coordinates are held at `base`.
struct PlaneRect {
  int axis = 0;
  double y_lo = 0.0, y_hi = 1.0;
  double yp_lo = -1.0, yp_hi = 0.0;
  ExtendedPoint base;
};

// Norm of the discrete Clifford-Cauchy boundary integral over the rectangle,
// sum over the four edges of n(x) f(x) ds (left) or f(x) n(x) ds (right),
// midpoint rule with points_per_edge nodes. Near zero when f is monogenic
// (resp. right-monogenic) with respect to B_{axis}.
inline double cauchy_boundary_check_fn(const ExtendedFn& fn, const AlgebraSpec& spec,
                                       const PlaneRect& rect, int points_per_edge, Side side) {
  if (!(rect.y_hi > rect.y_lo) || !(rect.yp_hi > rect.yp_lo))
    throw std::invalid_argument("cauchy_boundary_check: degenerate rectangle");
  if (points_per_edge < 1)
    throw std::invalid_argument("cauchy_boundary_check: need at least one node per edge");
  const int k = rect.axis;
  if (k < 0 || k >= spec.n) throw std::out_of_range("cauchy_boundary_check: axis out of range");

  Multivector total(spec);
  auto edge = [&](bool primed_normal, double fixed, double lo, double hi, double orientation) {
    const double len = hi - lo;
    const double ds = len / points_per_edge;
    Multivector normal =
        Multivector::generator(spec, primed_normal ? spec.n + k : k) * orientation;
    Multivector acc(spec);
    for (int i = 0; i < points_per_edge; ++i) {
      const double t = lo + (i + 0.5) * ds;
      ExtendedPoint q = rect.base;
      if (primed_normal) {  // normal along e'_k: edge varies in y_k at fixed y'_k
        q.y[k] = t;
        q.y_prime[k] = fixed;
      } else {  // normal along e_k: edge varies in y'_k at fixed y_k
        q.y[k] = fixed;
        q.y_prime[k] = t;
      }
      const Multivector v = fn(q);
      if (side == Side::left)
        add_geometric_product(acc, normal, v);
      else
        add_geometric_product(acc, v, normal);
    }
    acc *= ds;
    total += acc;
  };

  edge(false, rect.y_hi, rect.yp_lo, rect.yp_hi, +1.0);   // right, n = +e_k
  edge(false, rect.y_lo, rect.yp_lo, rect.yp_hi, -1.0);   // left, n = -e_k
  edge(true, rect.yp_hi, rect.y_lo, rect.y_hi, +1.0);     // top, n = +e'_k
  edge(true, rect.yp_lo, rect.y_lo, rect.y_hi, -1.0);     // bottom, n = -e'_k
  return norm(total);
}

inline double cauchy_boundary_check(const ExtensionSpec& spec, const PlaneRect& rect,
                                    int points_per_edge) {
  return cauchy_boundary_check_fn(extension_fn(spec), spec.source.spec(), rect, points_per_edge,
                                  detail::variant_side(spec.variant));
}

// Density recovery from a single slice: F(x) = e^{-(x,y')} (F_o^{-1} f_{y'})(x).
inline SampledField pw_recover(const SampledField& slice, std::span<const double> y_prime,
                               TransformRequest req = {}) {
  if (slice.is_complex())
    throw std::invalid_argument("pw_recover: slice must be a real-valued field");
  const int n = slice.grid().n;
  if (static_cast<int>(y_prime.size()) != n)
    throw std::invalid_argument("pw_recover: slice dimension mismatch");
  req.direction = Direction::inverse;
  SampledField rec = transform(slice, req);
  std::vector<double> x(n);
  for (std::size_t p = 0; p < rec.points(); ++p) {
    rec.grid().coords(p, x);
    double t = 0.0;
    for (int k = 0; k < n; ++k) t -= x[k] * y_prime[k];
    if (std::abs(t) > 700.0)
      throw std::range_error("pw_recover: exponential weight out of range");
    Multivector v = rec.value(p);
    v *= std::exp(t);
    rec.set_value(p, v);
  }
  return rec;
}

enum class SupportCase { half_space, ball };

struct PwOptions {
  SupportCase support = SupportCase::half_space;
  double radius = 1.0;                      // ball case: A
  std::vector<std::vector<double>> slices;  // y' values, entries of length n
  int growth_samples = 100;                 // ball case: yhat samples
  double growth_range = 5.0;                // ball case: |yhat| <= range
  std::uint64_t seed = 1357;                // ball case, n >= 2: yhat sampling
  double tol = 1e-9;                        // slack on the verified inequalities
  int threads = 1;
};

struct PwReport {
  double sup_slice_norm = 0.0;        // sup over slices of ||f_{y'}||_2^2
  double density_norm = 0.0;          // ||F||_2^2
  double outside_support_mass = 0.0;  // recovered |.|^2 mass fraction outside the support
  int growth_violations = 0;
  std::vector<double> slice_norms;
  double recovery_error = 0.0;  // max-node error of the recovered density, relative
};

namespace detail {

inline bool in_support(SupportCase c, double radius, std::span<const double> x) {
  if (c == SupportCase::half_space) {
    for (double v : x)
      if (!(v > 0.0)) return false;
    return true;
  }
  double q = 0.0;
  for (double v : x) q += v * v;
  return q <= radius * radius;
}

// Slice of the v1 extension as a field over y: f_{y'} = F_o(e^{(.,y')} F).
inline SampledField extension_slice(const SampledField& density, std::span<const double> y_prime,
                                    int threads) {
  SampledField weighted = density;
  std::vector<double> x(density.grid().n);
  for (std::size_t p = 0; p < weighted.points(); ++p) {
    weighted.grid().coords(p, x);
    double t = 0.0;
    for (int k = 0; k < weighted.grid().n; ++k) t += x[k] * y_prime[k];
    if (std::abs(t) > 700.0)
      throw std::range_error("extension_slice: exponential weight out of range");
    const double w = std::exp(t);
    for (double& v : weighted.raw().subspan(p * weighted.block_size(), weighted.block_size()))
      v *= w;
  }
  TransformRequest req;
  req.threads = threads;
  return cft_fast(weighted, req);
}

}  // namespace detail

// Checks the computable content of the Paley-Wiener statements for a density
// with the given support: slice norms against ||F||_2^2 (half-space) or the
// e^{A|y'|} envelope plus the pointwise e^{A|yhat|} growth bound with
// C = ||F||_1 (ball), and recovery of the density from one slice.
inline PwReport pw_verify(const SampledField& density, const PwOptions& opt) {
  if (density.is_complex())
    throw std::invalid_argument("pw_verify: density must be a real-valued field");
  if (opt.slices.empty()) throw std::invalid_argument("pw_verify: need at least one slice");
  const int n = density.grid().n;
  for (const auto& s : opt.slices)
    if (static_cast<int>(s.size()) != n)
      throw std::invalid_argument("pw_verify: slice dimension mismatch");

  // Support precondition: less than 1e-12 of the squared mass outside.
  double total_sq = 0.0, outside_sq = 0.0;
  {
    std::vector<double> x(n);
    for (std::size_t p = 0; p < density.points(); ++p) {
      density.grid().coords(p, x);
      const double m = detail::node_norm_sq(density, p);
      total_sq += m;
      if (!detail::in_support(opt.support, opt.radius, x)) outside_sq += m;
    }
  }
  if (total_sq > 0.0 && outside_sq > 1e-12 * total_sq)
    throw std::invalid_argument("pw_verify: support precondition violated");

  PwReport report;
  const double l2 = l2_norm(density);
  report.density_norm = l2 * l2;
  if (total_sq == 0.0) return report;

  std::vector<SampledField> slice_fields;
  slice_fields.reserve(opt.slices.size());
  for (const auto& yp : opt.slices) {
    slice_fields.push_back(detail::extension_slice(density, yp, opt.threads));
    const double sn = l2_norm(slice_fields.back());
    report.slice_norms.push_back(sn * sn);
    report.sup_slice_norm = std::max(report.sup_slice_norm, sn * sn);
  }

  auto yp_mag = [](std::span<const double> v) {
    double q = 0.0;
    for (double t : v) q += t * t;
    return std::sqrt(q);
  };

  if (opt.support == SupportCase::half_space) {
    for (std::size_t i = 0; i + 1 < opt.slices.size(); ++i) {
      bool le = true, ge = true;
      for (int k = 0; k < n; ++k) {
        le = le && opt.slices[i][k] <= opt.slices[i + 1][k];
        ge = ge && opt.slices[i][k] >= opt.slices[i + 1][k];
      }
      // norms must follow the componentwise order of the slices
      if (le && report.slice_norms[i] > report.slice_norms[i + 1] * (1.0 + opt.tol))
        ++report.growth_violations;
      if (ge && report.slice_norms[i] < report.slice_norms[i + 1] / (1.0 + opt.tol))
        ++report.growth_violations;
    }
    for (double sn : report.slice_norms)
      if (sn > report.density_norm * (1.0 + opt.tol)) ++report.growth_violations;
  } else {
    for (std::size_t i = 0; i < opt.slices.size(); ++i) {
      const double bound =
          std::exp(2.0 * opt.radius * yp_mag(opt.slices[i])) * report.density_norm;
      if (report.slice_norms[i] > bound * (1.0 + opt.tol)) ++report.growth_violations;
    }
    // Pointwise growth |f(yhat)| <= C e^{A |yhat|} with C = ||F||_1.
    const double c_bound = l1_norm(density);
    ExtensionSpec ext{ExtensionVariant::v1_left, density};
    std::vector<ExtendedPoint> samples;
    if (n == 1) {
      const int side_count = static_cast<int>(std::round(std::sqrt(opt.growth_samples)));
      for (int a = 0; a < side_count; ++a)
        for (int b = 0; b < side_count; ++b) {
          const double y = -opt.growth_range + (a + 0.5) * 2.0 * opt.growth_range / side_count;
          const double yp = -opt.growth_range + (b + 0.5) * 2.0 * opt.growth_range / side_count;
          if (y * y + yp * yp <= opt.growth_range * opt.growth_range)
            samples.push_back({{y}, {yp}});
        }
    } else {
      std::uint64_t state = opt.seed;
      auto next_uniform = [&state, &opt] {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const double u = static_cast<double>(state >> 11) * 0x1.0p-53;
        return (2.0 * u - 1.0) * opt.growth_range;
      };
      while (static_cast<int>(samples.size()) < opt.growth_samples) {
        ExtendedPoint q;
        q.y.resize(n);
        q.y_prime.resize(n);
        double mag = 0.0;
        for (int k = 0; k < n; ++k) {
          q.y[k] = next_uniform();
          q.y_prime[k] = next_uniform();
          mag += q.y[k] * q.y[k] + q.y_prime[k] * q.y_prime[k];
        }
        if (mag <= opt.growth_range * opt.growth_range) samples.push_back(std::move(q));
      }
    }
    for (const auto& q : samples) {
      double mag = 0.0;
      for (int k = 0; k < n; ++k) mag += q.y[k] * q.y[k] + q.y_prime[k] * q.y_prime[k];
      const double bound = c_bound * std::exp(opt.radius * std::sqrt(mag));
      if (norm(extend(ext, q)) > bound * (1.0 + opt.tol)) ++report.growth_violations;
    }
  }

  // Recover the density from one slice and measure support leakage.
  std::size_t pick = 0;
  if (opt.support == SupportCase::half_space) {
    double best = -1e300;
    for (std::size_t i = 0; i < opt.slices.size(); ++i) {
      double sum = 0.0;
      for (double v : opt.slices[i]) sum += v;
      if (sum > best) {
        best = sum;
        pick = i;
      }
    }
  }
  TransformRequest rec_req;
  rec_req.threads = opt.threads;
  const GridSpec derived = frequency_grid(slice_fields[pick].grid());
  if (!(derived == density.grid())) {
    rec_req.engine = Engine::direct;
    rec_req.output_grid = density.grid();
  }
  const SampledField recovered = pw_recover(slice_fields[pick], opt.slices[pick], rec_req);

  double rec_total = 0.0, rec_outside = 0.0;
  {
    std::vector<double> x(n);
    for (std::size_t p = 0; p < recovered.points(); ++p) {
      recovered.grid().coords(p, x);
      const double m = detail::node_norm_sq(recovered, p);
      rec_total += m;
      if (!detail::in_support(opt.support, opt.radius, x)) rec_outside += m;
    }
  }
  report.outside_support_mass = rec_total > 0.0 ? rec_outside / rec_total : 0.0;
  report.recovery_error = rel_linf(recovered, density);
  return report;
}

}  // namespace cft
