#include <gtest/gtest.h>

#include <cmath>

#include "cft/generators.hpp"
#include "cft/rng.hpp"
#include "cft/transform.hpp"
#include "oracles.hpp"

namespace cft {
namespace {

TransformRequest make_req(Engine e, Side s = Side::left,
                          Direction d = Direction::forward) {
  TransformRequest r;
  r.engine = e;
  r.side = s;
  r.direction = d;
  return r;
}

GridSpec symmetric_grid(int n, int dims, double half_width) {
  std::vector<int> d(n, dims);
  const double h = 2.0 * half_width / dims;
  return GridSpec(d, std::vector<double>(n, -half_width), std::vector<double>(n, h));
}

// Pointwise kernel multiplication K(u, y_m) f_m on the chosen side, with the
// e^{-I(u,y)} sign convention.
SampledField kernel_multiply(std::span<const double> u, const SampledField& f, Side side) {
  SampledField out(f.grid(), f.spec(), f.is_complex());
  Multivector k(f.spec());
  std::vector<double> y(f.grid().n);
  for (std::size_t p = 0; p < f.points(); ++p) {
    f.grid().coords(p, y);
    eval_kernel_into(k, u, y, 1);
    if (side == Side::left)
      out.set_value(p, k * f.value(p));
    else
      out.set_value(p, f.value(p) * k);
  }
  return out;
}

SampledField pointwise_product(const SampledField& a, const SampledField& b) {
  SampledField out(a.grid(), a.spec(), false);
  for (std::size_t p = 0; p < a.points(); ++p) out.set_value(p, a.value(p) * b.value(p));
  return out;
}

TEST(Translate, IdentityAndErrors) {
  Rng rng(1);
  const GridSpec g = symmetric_grid(1, 32, 4.0);
  const SampledField f = random_field(g, AlgebraSpec(1), rng, 4);
  const std::vector<double> zero{0.0};
  EXPECT_EQ(max_node_diff(translate(f, zero), f), 0.0);
  const std::vector<double> off{0.1};  // not a multiple of h = 0.25
  EXPECT_THROW(translate(f, off), std::invalid_argument);
}

TEST(Translate, TransformPicksUpKernelFactor) {
  // F_o(tau_u f) = e^{-I(u,y)} (F_o f) and (tau_u f) F_o = (f F_o) e^{-I(u,y)}
  Rng rng(2);
  for (int n : {1, 2}) {
    const GridSpec g = symmetric_grid(n, 16, 4.0);
    const SampledField f = random_field(g, AlgebraSpec(n), rng, 3);
    std::vector<double> u(n, 0.0);
    u[0] = 3 * g.spacing[0];
    const SampledField shifted = translate(f, u);

    const SampledField lhs = cft_fast(shifted, make_req(Engine::fast));
    const SampledField rhs = kernel_multiply(u, cft_fast(f, make_req(Engine::fast)), Side::left);
    EXPECT_LE(rel_linf(lhs, rhs), 1e-12);

    const SampledField lhs_r = cft_fast(shifted, make_req(Engine::fast, Side::right));
    const SampledField rhs_r =
        kernel_multiply(u, cft_fast(f, make_req(Engine::fast, Side::right)), Side::right);
    EXPECT_LE(rel_linf(lhs_r, rhs_r), 1e-12);
  }
}

TEST(Translate, GaussianWithinContinuumTolerance) {
  const GridSpec g = symmetric_grid(1, 128, 8.0);
  FieldGenerator gen;
  gen.kind = FieldGenerator::Kind::gaussian;
  const SampledField f = sample(gen, g, AlgebraSpec(1));
  const std::vector<double> u{8 * g.spacing[0]};
  const SampledField lhs = cft_fast(translate(f, u), make_req(Engine::fast));
  const SampledField rhs = kernel_multiply(u, cft_fast(f, make_req(Engine::fast)), Side::left);
  EXPECT_LE(rel_linf(lhs, rhs), 1e-6);
}

TEST(Modulate, ShiftsTheTransform) {
  // h1 = e^{I(x,u)} f  =>  F_o h1 = tau_u (F_o f); right-hand variant with
  // the factor on the right.
  Rng rng(3);
  const GridSpec g = symmetric_grid(1, 32, 4.0);
  const SampledField f = random_field(g, AlgebraSpec(1), rng, 4);
  const GridSpec fg = frequency_grid(g);
  const std::vector<double> u{2 * fg.spacing[0]};

  const SampledField lhs = cft_fast(modulate(f, u, Side::left), make_req(Engine::fast));
  const SampledField rhs = translate(cft_fast(f, make_req(Engine::fast)), u);
  EXPECT_LE(rel_linf(lhs, rhs), 1e-12);

  const SampledField lhs_r =
      cft_fast(modulate(f, u, Side::right), make_req(Engine::fast, Side::right));
  const SampledField rhs_r = translate(cft_fast(f, make_req(Engine::fast, Side::right)), u);
  EXPECT_LE(rel_linf(lhs_r, rhs_r), 1e-12);
}

TEST(Dilate, ScalesTheTransform) {
  // h(x) = f(x/lambda)  =>  (F_o h)(y) = lambda^n (F_o f)(lambda y)
  const double lambda = 2.0;
  const GridSpec g = symmetric_grid(1, 128, 8.0);
  FieldGenerator gen;
  gen.kind = FieldGenerator::Kind::gaussian;
  gen.sigma = 0.5;
  const AlgebraSpec spec(1);
  const SampledField f = sample(gen, g, spec);
  const SampledField h = sample(gen.dilated(lambda), g, spec);

  const SampledField lhs = cft_fast(h, make_req(Engine::fast));

  const GridSpec fg = frequency_grid(g);
  GridSpec scaled(fg.dims, {fg.origin[0] * lambda}, {fg.spacing[0] * lambda});
  TransformRequest req = make_req(Engine::direct);
  req.output_grid = scaled;
  const SampledField at_scaled = cft_direct(f, req);

  // compare only where lambda y stays inside the sampling band of f
  const double band = 0.9 * std::numbers::pi / g.spacing[0];
  double worst = 0.0;
  std::vector<double> y(1);
  for (std::size_t p = 0; p < lhs.points(); ++p) {
    scaled.coords(p, y);
    if (std::abs(y[0]) > band) continue;
    worst = std::max(worst,
                     testing::max_coeff_diff(lhs.value(p), at_scaled.value(p) * lambda));
  }
  EXPECT_LE(worst / linf_norm(lhs), 1e-6);
}

TEST(ReverseFlip, MatchesReversedRightTransform) {
  // h(x) = f^dag(-x)  =>  F_o h = (f F_o)^dag
  Rng rng(4);
  const GridSpec g = symmetric_grid(2, 16, 4.0);
  const SampledField f = random_field(g, AlgebraSpec(2), rng, 3);
  const SampledField lhs = cft_fast(reverse_flip(f), make_req(Engine::fast));
  SampledField rhs = cft_fast(f, make_req(Engine::fast, Side::right));
  for (std::size_t p = 0; p < rhs.points(); ++p) rhs.set_value(p, reversion(rhs.value(p)));
  EXPECT_LE(rel_linf(lhs, rhs), 1e-10);
}

TEST(Convolve, DeltaIsNeutral) {
  Rng rng(5);
  const GridSpec g = symmetric_grid(1, 32, 4.0);
  const AlgebraSpec spec(1);
  const SampledField f = random_field(g, spec, rng, 4);
  SampledField delta(g, spec);
  const double mass = std::sqrt(2.0 * std::numbers::pi) / g.cell_volume();
  delta.set_value(16, Multivector::scalar(spec, mass));  // node at x = 0
  EXPECT_LE(rel_linf(convolve(f, delta), f), 1e-12);
}

TEST(Convolve, TheoremBothDirections) {
  Rng rng(6);
  const GridSpec g = symmetric_grid(1, 64, 6.0);
  const AlgebraSpec spec(1);
  // f valued in G(B_1): scalar + B_1 channels only
  SampledField f(g, spec);
  std::vector<double> x(1);
  for (std::size_t p = 0; p < f.points(); ++p) {
    g.coords(p, x);
    const double env = std::exp(-x[0] * x[0]);
    Multivector v = Multivector::scalar(spec, env * std::cos(x[0]));
    v += Multivector::bivector_unit(spec, 0) * (env * std::sin(2.0 * x[0]));
    f.set_value(p, v);
  }
  const SampledField grand = random_field(g, spec, rng, 3, 1.2);

  const auto req = make_req(Engine::fast);
  const SampledField lhs = cft_fast(convolve(f, grand), req);
  const SampledField rhs = pointwise_product(cft_fast(f, req), cft_fast(grand, req));
  EXPECT_LE(rel_linf(lhs, rhs), 1e-6);

  const auto rreq = make_req(Engine::fast, Side::right);
  const SampledField lhs_r = cft_fast(convolve(grand, f), rreq);
  const SampledField rhs_r = pointwise_product(cft_fast(grand, rreq), cft_fast(f, rreq));
  EXPECT_LE(rel_linf(lhs_r, rhs_r), 1e-6);
}

TEST(Convolve, HypothesisIsNecessary) {
  // f with a bare vector component does not commute with the kernel; the
  // factorization must visibly fail.
  const GridSpec g = symmetric_grid(1, 64, 6.0);
  const AlgebraSpec spec(1);
  SampledField f(g, spec), grand(g, spec);
  std::vector<double> x(1);
  for (std::size_t p = 0; p < f.points(); ++p) {
    g.coords(p, x);
    const double env = std::exp(-x[0] * x[0]);
    f.set_value(p, Multivector::generator(spec, 0) * (env * std::cos(x[0])));
    grand.set_value(p, Multivector::generator(spec, 1) * (env * std::sin(x[0])));
  }
  const auto req = make_req(Engine::fast);
  const SampledField lhs = cft_fast(convolve(f, grand), req);
  const SampledField rhs = pointwise_product(cft_fast(f, req), cft_fast(grand, req));
  EXPECT_GT(rel_linf(lhs, rhs), 1e-3);
}

TEST(Convolve, RejectsMismatchedGrids) {
  const SampledField a(symmetric_grid(1, 16, 4.0), AlgebraSpec(1));
  const SampledField b(symmetric_grid(1, 32, 4.0), AlgebraSpec(1));
  EXPECT_THROW(convolve(a, b), std::invalid_argument);
}

TEST(PartialDerivative, ConstantFieldVanishes) {
  const GridSpec g = symmetric_grid(2, 8, 4.0);
  FieldGenerator gen;
  gen.kind = FieldGenerator::Kind::box_indicator;
  gen.box_lo = {-10.0, -10.0};
  gen.box_hi = {10.0, 10.0};  // covers the grid: constant 1
  const SampledField f = sample(gen, g, AlgebraSpec(2));
  EXPECT_EQ(linf_norm(partial_derivative(f, 0)), 0.0);
  EXPECT_THROW(partial_derivative(f, 2), std::out_of_range);
}

double diff_theorem_error(int dims) {
  // max-node error of F_o(df/dx) vs B y (F_o f) for the unit gaussian
  const GridSpec g = symmetric_grid(1, dims, 8.0);
  const AlgebraSpec spec(1);
  FieldGenerator gen;
  gen.kind = FieldGenerator::Kind::gaussian;
  const SampledField f = sample(gen, g, spec);
  TransformRequest req;
  const SampledField lhs = cft_fast(partial_derivative(f, 0), req);
  SampledField rhs = cft_fast(f, req);
  std::vector<double> y(1);
  for (std::size_t p = 0; p < rhs.points(); ++p) {
    rhs.grid().coords(p, y);
    rhs.set_value(p, Multivector::bivector_unit(spec, 0) * y[0] * rhs.value(p));
  }
  return max_node_diff(lhs, rhs);
}

TEST(DifferentiationTheorem, SecondOrderInSpace) {
  const double e512 = diff_theorem_error(512);
  const double e1024 = diff_theorem_error(1024);
  EXPECT_LE(e1024, 1e-4);
  EXPECT_NEAR(e512 / e1024, 4.0, 1.0);  // O(h^2)
}

TEST(DifferentiationTheorem, FrequencyDerivative) {
  // d(F_o f)/dy = F_o(-B x f); the frequency step is 2 pi / (N h), so the
  // domain must be wide for the central difference on the output side.
  auto err = [](int dims, double half_width) {
    const GridSpec g = symmetric_grid(1, dims, half_width);
    const AlgebraSpec spec(1);
    FieldGenerator gen;
    gen.kind = FieldGenerator::Kind::gaussian;
    const SampledField f = sample(gen, g, spec);
    TransformRequest req;
    const SampledField lhs = partial_derivative(cft_fast(f, req), 0);
    SampledField weighted(g, spec);
    std::vector<double> x(1);
    for (std::size_t p = 0; p < f.points(); ++p) {
      g.coords(p, x);
      weighted.set_value(p, Multivector::bivector_unit(spec, 0) * (-x[0]) * f.value(p));
    }
    const SampledField rhs = cft_fast(weighted, req);
    return max_node_diff(lhs, rhs);
  };
  const double coarse = err(4096, 128.0);  // frequency step 2 pi / 256
  const double fine = err(8192, 256.0);    // frequency step 2 pi / 512
  EXPECT_LE(fine, 1e-4);
  EXPECT_NEAR(coarse / fine, 4.0, 1.0);
}

TEST(MultiplicationFormula, ExactOnSelfDualGrid) {
  // int (f F_o)(x) g(x) dm = int f(x) (F_o g)(x) dm; with N h^2 = 2 pi the
  // frequency grid coincides with the spatial grid and the discrete identity
  // is exact.
  const int dims = 64;
  const double h = std::sqrt(2.0 * std::numbers::pi / dims);
  const GridSpec g({dims}, {-dims * h / 2.0}, {h});
  ASSERT_EQ(frequency_grid(g).dims, g.dims);
  ASSERT_NEAR(frequency_grid(g).spacing[0], h, 1e-12);

  Rng rng(7);
  const AlgebraSpec spec(1);
  const SampledField f = random_field(g, spec, rng, 3, 2.0);
  const SampledField q = random_field(g, spec, rng, 3, 2.0);
  const SampledField f_right = cft_fast(f, make_req(Engine::fast, Side::right));
  const SampledField q_left = cft_fast(q, make_req(Engine::fast, Side::left));

  const double w = g.measure_weight();
  Multivector lhs(spec), rhs(spec);
  for (std::size_t p = 0; p < g.point_count(); ++p) {
    add_geometric_product(lhs, f_right.value(p), q.value(p));
    add_geometric_product(rhs, f.value(p), q_left.value(p));
  }
  lhs *= w;
  rhs *= w;
  EXPECT_LE(testing::max_coeff_diff(lhs, rhs) / std::max(1.0, norm(lhs)), 1e-10);
}

}  // namespace
}  // namespace cft
