#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "cft/generators.hpp"
#include "cft/grid.hpp"

namespace cft {

// Seeded generator with an explicit uniform mapping, so streams are
// reproducible across standard libraries as well as across runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi_inclusive) {
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi_inclusive - lo + 1));
  }

 private:
  std::mt19937_64 eng_;
};

inline Multivector random_multivector(Rng& rng, const AlgebraSpec& spec, double lo = -1.0,
                                      double hi = 1.0) {
  Multivector m(spec);
  for (double& v : m.coeffs()) v = rng.uniform(lo, hi);
  return m;
}

inline ComplexMultivector random_complex_multivector(Rng& rng, const AlgebraSpec& spec,
                                                     double lo = -1.0, double hi = 1.0) {
  return {random_multivector(rng, spec, lo, hi), random_multivector(rng, spec, lo, hi)};
}

// Random multivector field: per blade channel a few grid-periodic cosine
// modes, optionally under a gaussian envelope. With envelope_sigma <= 0 the
// field is exactly band-limited on the grid.
inline SampledField random_field(const GridSpec& grid, const AlgebraSpec& spec, Rng& rng,
                                 int max_mode = 3, double envelope_sigma = 0.0,
                                 bool complex_values = false) {
  SampledField out(grid, spec, complex_values);
  const int n = grid.n;
  const int parts = complex_values ? 2 : 1;
  struct Mode {
    double amp, phase;
    std::vector<double> freq;
  };
  std::vector<std::vector<Mode>> modes(out.blades() * parts);
  for (auto& channel : modes) {
    const int count = 1 + rng.uniform_int(0, 2);
    for (int t = 0; t < count; ++t) {
      Mode m;
      m.amp = rng.uniform(-1.0, 1.0);
      m.phase = rng.uniform(0.0, 6.283185307179586);
      m.freq.resize(n);
      for (int k = 0; k < n; ++k) {
        const double period = grid.dims[k] * grid.spacing[k];
        m.freq[k] = 2.0 * std::numbers::pi * rng.uniform_int(0, max_mode) / period;
      }
      channel.push_back(std::move(m));
    }
  }
  std::vector<double> x(n);
  for (std::size_t p = 0; p < out.points(); ++p) {
    grid.coords(p, x);
    double envelope = 1.0;
    if (envelope_sigma > 0.0) {
      double q = 0.0;
      for (double v : x) q += v * v;
      envelope = std::exp(-q / (2.0 * envelope_sigma * envelope_sigma));
    }
    for (std::size_t c = 0; c < out.blades(); ++c) {
      auto eval = [&](const std::vector<Mode>& channel) {
        double acc = 0.0;
        for (const auto& m : channel) {
          double arg = m.phase;
          for (int k = 0; k < n; ++k) arg += m.freq[k] * x[k];
          acc += m.amp * std::cos(arg);
        }
        return acc * envelope;
      };
      out.re(p)[c] = eval(modes[c]);
      if (complex_values) out.im(p)[c] = eval(modes[out.blades() + c]);
    }
  }
  return out;
}

}  // namespace cft
