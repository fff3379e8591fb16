#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cft/grid.hpp"

namespace cft {

// Scalar profile times a constant multivector factor; the built-in shapes
// cover the test inputs used throughout: rapidly decaying smooth fields,
// compactly supported densities, and band-limited oscillations.
struct FieldGenerator {
  enum class Kind {
    gaussian,             // exp(-|x-center|^2 / (2 sigma^2))
    box_indicator,        // 1 on [lo,hi] per axis
    ball_indicator,       // 1 on |x-center| <= radius
    polynomial_gaussian,  // prod (x-center)^exponents * gaussian
    trig_polynomial,      // sum_t amp * cos(freq . x + phase)
  };

  struct TrigTerm {
    double amplitude = 1.0;
    std::vector<double> freq;
    double phase = 0.0;
  };

  Kind kind = Kind::gaussian;
  double amplitude = 1.0;
  double sigma = 1.0;
  double radius = 1.0;
  std::vector<double> center;
  std::vector<double> box_lo, box_hi;
  std::vector<int> exponents;
  std::vector<TrigTerm> terms;
  std::optional<Multivector> blade_weights;  // empty -> scalar 1

  void validate(int n) const {
    auto want = [n](const std::vector<double>& v, const char* what) {
      if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument(std::string("FieldGenerator: ") + what +
                                    " must have length n");
    };
    switch (kind) {
      case Kind::gaussian:
        if (!center.empty()) want(center, "center");
        if (!(sigma > 0.0)) throw std::invalid_argument("FieldGenerator: sigma must be > 0");
        break;
      case Kind::box_indicator:
        want(box_lo, "box_lo");
        want(box_hi, "box_hi");
        for (int k = 0; k < n; ++k)
          if (!(box_lo[k] <= box_hi[k]))
            throw std::invalid_argument("FieldGenerator: box bounds out of order");
        break;
      case Kind::ball_indicator:
        if (!center.empty()) want(center, "center");
        if (!(radius > 0.0)) throw std::invalid_argument("FieldGenerator: radius must be > 0");
        break;
      case Kind::polynomial_gaussian:
        if (!center.empty()) want(center, "center");
        if (static_cast<int>(exponents.size()) != n)
          throw std::invalid_argument("FieldGenerator: exponents must have length n");
        for (int e : exponents)
          if (e < 0) throw std::invalid_argument("FieldGenerator: exponents must be >= 0");
        if (!(sigma > 0.0)) throw std::invalid_argument("FieldGenerator: sigma must be > 0");
        break;
      case Kind::trig_polynomial:
        if (terms.empty())
          throw std::invalid_argument("FieldGenerator: trig polynomial needs terms");
        for (const auto& t : terms) want(t.freq, "term frequency");
        break;
    }
  }

  double profile(std::span<const double> x) const {
    const int n = static_cast<int>(x.size());
    auto centered = [this, x](int k) { return x[k] - (center.empty() ? 0.0 : center[k]); };
    switch (kind) {
      case Kind::gaussian: {
        double q = 0.0;
        for (int k = 0; k < n; ++k) q += centered(k) * centered(k);
        return amplitude * std::exp(-q / (2.0 * sigma * sigma));
      }
      case Kind::box_indicator: {
        for (int k = 0; k < n; ++k)
          if (x[k] < box_lo[k] || x[k] > box_hi[k]) return 0.0;
        return amplitude;
      }
      case Kind::ball_indicator: {
        double q = 0.0;
        for (int k = 0; k < n; ++k) q += centered(k) * centered(k);
        return q <= radius * radius ? amplitude : 0.0;
      }
      case Kind::polynomial_gaussian: {
        double q = 0.0, poly = 1.0;
        for (int k = 0; k < n; ++k) {
          const double c = centered(k);
          q += c * c;
          for (int e = 0; e < exponents[k]; ++e) poly *= c;
        }
        return amplitude * poly * std::exp(-q / (2.0 * sigma * sigma));
      }
      case Kind::trig_polynomial: {
        double acc = 0.0;
        for (const auto& t : terms) {
          double arg = t.phase;
          for (int k = 0; k < n; ++k) arg += t.freq[k] * x[k];
          acc += t.amplitude * std::cos(arg);
        }
        return amplitude * acc;
      }
    }
    return 0.0;
  }

  // Generator for x -> profile(x / lambda); realizes dilation by resampling.
  FieldGenerator dilated(double lambda) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("FieldGenerator: dilation must be > 0");
    FieldGenerator g = *this;
    for (double& v : g.center) v *= lambda;
    switch (kind) {
      case Kind::gaussian:
        g.sigma *= lambda;
        break;
      case Kind::box_indicator:
        for (double& v : g.box_lo) v *= lambda;
        for (double& v : g.box_hi) v *= lambda;
        break;
      case Kind::ball_indicator:
        g.radius *= lambda;
        break;
      case Kind::polynomial_gaussian: {
        g.sigma *= lambda;
        int total = 0;
        for (int e : exponents) total += e;
        g.amplitude *= std::pow(lambda, -total);
        break;
      }
      case Kind::trig_polynomial:
        for (auto& t : g.terms)
          for (double& v : t.freq) v /= lambda;
        break;
    }
    return g;
  }
};

inline FieldGenerator dilate(const FieldGenerator& gen, double lambda) {
  return gen.dilated(lambda);
}

inline SampledField sample(const FieldGenerator& gen, const GridSpec& grid,
                           const AlgebraSpec& spec) {
  gen.validate(grid.n);
  Multivector weights =
      gen.blade_weights ? *gen.blade_weights : Multivector::scalar(spec, 1.0);
  if (!(weights.spec() == spec))
    throw std::invalid_argument("sample: blade weights use a different algebra");
  SampledField out(grid, spec);
  std::vector<double> x(grid.n);
  for (std::size_t p = 0; p < out.points(); ++p) {
    grid.coords(p, x);
    out.set_value(p, weights * gen.profile(x));
  }
  return out;
}

// Direct sampling of an arbitrary multivector-valued function; test inputs
// that do not fit a named generator go through here.
inline SampledField sample_fn(const GridSpec& grid, const AlgebraSpec& spec,
                              const std::function<Multivector(std::span<const double>)>& fn) {
  SampledField out(grid, spec);
  std::vector<double> x(grid.n);
  for (std::size_t p = 0; p < out.points(); ++p) {
    grid.coords(p, x);
    out.set_value(p, fn(x));
  }
  return out;
}

}  // namespace cft
