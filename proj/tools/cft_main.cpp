// cft: sample multivector fields, run Clifford-Fourier transforms, evaluate
// monogenic extensions, and verify the operational-calculus identities.
// Commands write MVF1 fields and JSON-lines reports; exit code 0 means every
// check passed, 1 a check failed, 2 a usage error, 3 a file error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "cft/cft.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace cft;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFile = 3;

constexpr std::uint64_t kDefaultSeed = 12345;

struct CheckResult {
  std::string name;
  std::map<std::string, std::string> parameters;
  std::map<std::string, double> metrics;
  bool pass = false;
};

struct ReportWriter {
  std::ostream& os;
  std::string command;
  bool timing;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  bool emit(const CheckResult& c) {
    json j;
    j["command"] = command;
    j["check"] = c.name;
    j["parameters"] = json::object();
    for (const auto& [k, v] : c.parameters) j["parameters"][k] = v;
    j["metrics"] = json::object();
    for (const auto& [k, v] : c.metrics) j["metrics"][k] = v;
    j["pass"] = c.pass;
    j["elapsed"] =
        timing ? std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                     .count()
               : 0.0;
    os << j.dump() << "\n";
    started = std::chrono::steady_clock::now();
    return c.pass;
  }
};

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

GridSpec make_grid(const std::string& dims_csv, const std::string& origin_csv,
                   const std::string& spacing_csv) {
  const auto dims = parse_ints(dims_csv);
  std::vector<double> origin =
      origin_csv.empty() ? std::vector<double>(dims.size(), 0.0) : parse_doubles(origin_csv);
  std::vector<double> spacing =
      spacing_csv.empty() ? std::vector<double>(dims.size(), 1.0) : parse_doubles(spacing_csv);
  if (origin.size() == 1 && dims.size() > 1) origin.assign(dims.size(), origin[0]);
  if (spacing.size() == 1 && dims.size() > 1) spacing.assign(dims.size(), spacing[0]);
  return GridSpec(dims, origin, spacing);
}

GridSpec symmetric_grid(int n, int dims, double half_width) {
  std::vector<int> d(n, dims);
  const double h = 2.0 * half_width / dims;
  return GridSpec(d, std::vector<double>(n, -half_width), std::vector<double>(n, h));
}

Multivector parse_blade_weights(const AlgebraSpec& spec, const std::string& text) {
  Multivector w(spec);
  if (text.empty()) {
    w[0] = 1.0;
    return w;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("blade weights must be mask:value pairs");
    const auto mask = static_cast<std::uint32_t>(std::stoul(item.substr(0, colon)));
    if (mask >= static_cast<std::uint32_t>(spec.blade_count()))
      throw std::invalid_argument("blade mask out of range for this algebra");
    w[mask] = std::stod(item.substr(colon + 1));
  }
  return w;
}

SampledField gaussian_envelope_random(const GridSpec& g, const AlgebraSpec& spec, Rng& rng) {
  return random_field(g, spec, rng, 3, 1.5);
}

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

struct SuiteContext {
  std::uint64_t seed;
  int threads;
};

TransformRequest fast_req(const SuiteContext& ctx, Side side = Side::left,
                          Direction dir = Direction::forward) {
  TransformRequest r;
  r.engine = Engine::fast;
  r.side = side;
  r.direction = dir;
  r.threads = ctx.threads;
  return r;
}

std::vector<CheckResult> suite_plancherel(const SuiteContext& ctx) {
  std::vector<CheckResult> out;
  Rng rng(ctx.seed);
  for (int n : {1, 2}) {
    const int dims = n == 1 ? 128 : 64;
    const GridSpec g = symmetric_grid(n, dims, 8.0);
    const SampledField f = gaussian_envelope_random(g, AlgebraSpec(n), rng);
    const SampledField h = gaussian_envelope_random(g, AlgebraSpec(n), rng);
    const SampledField tf = cft_fast(f, fast_req(ctx));
    const SampledField th = cft_fast(h, fast_req(ctx));

    CheckResult norm_check;
    norm_check.name = "plancherel-n" + std::to_string(n);
    norm_check.parameters = {{"dims", std::to_string(dims)}};
    const double ratio_err = std::abs(l2_norm(tf) - l2_norm(f)) / l2_norm(f);
    norm_check.metrics["normRatioErr"] = ratio_err;
    norm_check.pass = ratio_err <= 1e-6;
    out.push_back(norm_check);

    CheckResult parseval;
    parseval.name = "parseval-n" + std::to_string(n);
    const double lhs = inner_product(f, h);
    const double rhs = inner_product(tf, th);
    const double err = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
    parseval.metrics["parsevalErr"] = err;
    parseval.pass = err <= 1e-6;
    out.push_back(parseval);

    CheckResult exact;
    exact.name = "plancherel-discrete-exact-n" + std::to_string(n);
    const SampledField tr = cft_fast(f, fast_req(ctx, Side::right));
    const double exact_err =
        std::max(std::abs(l2_norm(tf) - l2_norm(f)), std::abs(l2_norm(tr) - l2_norm(f))) /
        l2_norm(f);
    exact.metrics["normRatioErr"] = exact_err;
    exact.pass = exact_err <= 1e-12;
    out.push_back(exact);
  }
  return out;
}

SampledField kernel_multiply_field(std::span<const double> u, const SampledField& f,
                                   Side side) {
  SampledField out(f.grid(), f.spec(), false);
  Multivector k(f.spec());
  std::vector<double> y(f.grid().n);
  for (std::size_t p = 0; p < f.points(); ++p) {
    f.grid().coords(p, y);
    eval_kernel_into(k, u, y, 1);
    out.set_value(p, side == Side::left ? k * f.value(p) : f.value(p) * k);
  }
  return out;
}

std::vector<CheckResult> suite_opcalc(const SuiteContext& ctx) {
  std::vector<CheckResult> out;
  Rng rng(ctx.seed);
  const AlgebraSpec spec(1);
  const GridSpec g = symmetric_grid(1, 128, 8.0);
  const SampledField f = gaussian_envelope_random(g, spec, rng);
  const SampledField h = gaussian_envelope_random(g, spec, rng);

  {
    CheckResult c;
    c.name = "linearity";
    const Multivector a = random_multivector(rng, spec);
    const Multivector b = random_multivector(rng, spec);
    const SampledField lhs = cft_fast(add(right_multiply(f, a), right_multiply(h, b)),
                                      fast_req(ctx));
    const SampledField rhs = add(right_multiply(cft_fast(f, fast_req(ctx)), a),
                                 right_multiply(cft_fast(h, fast_req(ctx)), b));
    c.metrics["maxErr"] = rel_linf(lhs, rhs);
    c.pass = c.metrics["maxErr"] <= 1e-6;
    out.push_back(c);
  }
  {
    CheckResult c;
    c.name = "translation";
    const std::vector<double> u{8 * g.spacing[0]};
    const SampledField lhs = cft_fast(translate(f, u), fast_req(ctx));
    const SampledField rhs = kernel_multiply_field(u, cft_fast(f, fast_req(ctx)), Side::left);
    c.metrics["maxErr"] = rel_linf(lhs, rhs);
    c.pass = c.metrics["maxErr"] <= 1e-6;
    out.push_back(c);
  }
  {
    CheckResult c;
    c.name = "modulation";
    const GridSpec fg = frequency_grid(g);
    const std::vector<double> u{4 * fg.spacing[0]};
    const SampledField lhs = cft_fast(modulate(f, u, Side::left), fast_req(ctx));
    const SampledField rhs = translate(cft_fast(f, fast_req(ctx)), u);
    c.metrics["maxErr"] = rel_linf(lhs, rhs);
    c.pass = c.metrics["maxErr"] <= 1e-6;
    out.push_back(c);
  }
  {
    CheckResult c;
    c.name = "dilation";
    const double lambda = 2.0;
    FieldGenerator gen;
    gen.kind = FieldGenerator::Kind::gaussian;
    gen.sigma = 0.5;
    const SampledField base = sample(gen, g, spec);
    const SampledField dil = sample(gen.dilated(lambda), g, spec);
    const SampledField lhs = cft_fast(dil, fast_req(ctx));
    const GridSpec fg = frequency_grid(g);
    TransformRequest dreq;
    dreq.engine = Engine::direct;
    dreq.threads = ctx.threads;
    dreq.output_grid = GridSpec(fg.dims, {fg.origin[0] * lambda}, {fg.spacing[0] * lambda});
    const SampledField rhs = cft_direct(base, dreq);
    const double band = 0.9 * std::numbers::pi / g.spacing[0];
    double worst = 0.0;
    std::vector<double> y(1);
    for (std::size_t p = 0; p < lhs.points(); ++p) {
      dreq.output_grid->coords(p, y);
      if (std::abs(y[0]) > band) continue;
      Multivector d = lhs.value(p) - rhs.value(p) * lambda;
      worst = std::max(worst, norm(d));
    }
    c.metrics["maxErr"] = worst / linf_norm(lhs);
    c.pass = c.metrics["maxErr"] <= 1e-6;
    out.push_back(c);
  }
  {
    CheckResult c;
    c.name = "reversion-duality";
    const SampledField lhs = cft_fast(reverse_flip(f), fast_req(ctx));
    SampledField rhs = cft_fast(f, fast_req(ctx, Side::right));
    for (std::size_t p = 0; p < rhs.points(); ++p) rhs.set_value(p, reversion(rhs.value(p)));
    c.metrics["maxErr"] = rel_linf(lhs, rhs);
    c.pass = c.metrics["maxErr"] <= 1e-6;
    out.push_back(c);
  }
  {
    CheckResult c;
    c.name = "differentiation-space";
    auto err_at = [&ctx, &spec](int dims) {
      const GridSpec gg = symmetric_grid(1, dims, 8.0);
      FieldGenerator gen;
      gen.kind = FieldGenerator::Kind::gaussian;
      const SampledField ff = sample(gen, gg, spec);
      const SampledField lhs = cft_fast(partial_derivative(ff, 0), fast_req(ctx));
      SampledField rhs = cft_fast(ff, fast_req(ctx));
      std::vector<double> y(1);
      for (std::size_t p = 0; p < rhs.points(); ++p) {
        rhs.grid().coords(p, y);
        rhs.set_value(p, Multivector::bivector_unit(spec, 0) * y[0] * rhs.value(p));
      }
      return max_node_diff(lhs, rhs);
    };
    const double coarse = err_at(512), fine = err_at(1024);
    c.metrics["maxErr"] = fine;
    c.metrics["refinementRatio"] = coarse / fine;
    c.pass = fine <= 1e-4 && coarse / fine > 2.5 && coarse / fine < 6.0;
    out.push_back(c);
  }
  {
    CheckResult c;
    c.name = "differentiation-frequency";
    auto err_at = [&ctx, &spec](int dims, double half_width) {
      const GridSpec gg = symmetric_grid(1, dims, half_width);
      FieldGenerator gen;
      gen.kind = FieldGenerator::Kind::gaussian;
      const SampledField ff = sample(gen, gg, spec);
      const SampledField lhs = partial_derivative(cft_fast(ff, fast_req(ctx)), 0);
      SampledField weighted(gg, spec);
      std::vector<double> x(1);
      for (std::size_t p = 0; p < ff.points(); ++p) {
        gg.coords(p, x);
        weighted.set_value(p, Multivector::bivector_unit(spec, 0) * (-x[0]) * ff.value(p));
      }
      return max_node_diff(lhs, cft_fast(weighted, fast_req(ctx)));
    };
    const double coarse = err_at(4096, 128.0), fine = err_at(8192, 256.0);
    c.metrics["maxErr"] = fine;
    c.metrics["refinementRatio"] = coarse / fine;
    c.pass = fine <= 1e-4 && coarse / fine > 2.5 && coarse / fine < 6.0;
    out.push_back(c);
  }
  return out;
}

SampledField pointwise_product_field(const SampledField& a, const SampledField& b) {
  SampledField out(a.grid(), a.spec(), false);
  for (std::size_t p = 0; p < a.points(); ++p) out.set_value(p, a.value(p) * b.value(p));
  return out;
}

std::vector<CheckResult> suite_convolution(const SuiteContext& ctx) {
  std::vector<CheckResult> out;
  Rng rng(ctx.seed);
  const AlgebraSpec spec(1);
  const GridSpec g = symmetric_grid(1, 128, 6.0);
  SampledField f(g, spec);
  std::vector<double> x(1);
  for (std::size_t p = 0; p < f.points(); ++p) {
    g.coords(p, x);
    const double env = std::exp(-x[0] * x[0]);
    Multivector v = Multivector::scalar(spec, env * std::cos(x[0]));
    v += Multivector::bivector_unit(spec, 0) * (env * std::sin(2.0 * x[0]));
    f.set_value(p, v);
  }
  const SampledField grand = gaussian_envelope_random(g, spec, rng);

  {
    CheckResult c;
    c.name = "convolution-left";
    const SampledField lhs = cft_fast(convolve(f, grand, ctx.threads), fast_req(ctx));
    const SampledField rhs =
        pointwise_product_field(cft_fast(f, fast_req(ctx)), cft_fast(grand, fast_req(ctx)));
    c.metrics["maxErr"] = rel_linf(lhs, rhs);
    c.pass = c.metrics["maxErr"] <= 1e-6;
    out.push_back(c);
  }
  {
    CheckResult c;
    c.name = "convolution-right";
    const auto rreq = fast_req(ctx, Side::right);
    const SampledField lhs = cft_fast(convolve(grand, f, ctx.threads), rreq);
    const SampledField rhs =
        pointwise_product_field(cft_fast(grand, rreq), cft_fast(f, rreq));
    c.metrics["maxErr"] = rel_linf(lhs, rhs);
    c.pass = c.metrics["maxErr"] <= 1e-6;
    out.push_back(c);
  }
  {
    CheckResult c;
    c.name = "convolution-negative-control";
    SampledField f1(g, spec), f2(g, spec);
    for (std::size_t p = 0; p < f1.points(); ++p) {
      g.coords(p, x);
      const double env = std::exp(-x[0] * x[0]);
      f1.set_value(p, Multivector::generator(spec, 0) * (env * std::cos(x[0])));
      f2.set_value(p, Multivector::generator(spec, 1) * (env * std::sin(x[0])));
    }
    const SampledField lhs = cft_fast(convolve(f1, f2, ctx.threads), fast_req(ctx));
    const SampledField rhs =
        pointwise_product_field(cft_fast(f1, fast_req(ctx)), cft_fast(f2, fast_req(ctx)));
    c.metrics["maxErr"] = rel_linf(lhs, rhs);
    c.pass = c.metrics["maxErr"] > 1e-3;  // hypothesis violated on purpose
    out.push_back(c);
  }
  return out;
}

std::vector<CheckResult> suite_inversion(const SuiteContext& ctx) {
  std::vector<CheckResult> out;
  Rng rng(ctx.seed);
  for (int n : {1, 2}) {
    const int dims = n == 1 ? 128 : 32;
    const GridSpec g = symmetric_grid(n, dims, 8.0);
    const SampledField f = gaussian_envelope_random(g, AlgebraSpec(n), rng);
    CheckResult c;
    c.name = "roundtrip-n" + std::to_string(n);
    const SampledField back =
        cft_fast(cft_fast(f, fast_req(ctx)), fast_req(ctx, Side::left, Direction::inverse));
    c.metrics["maxErr"] = rel_linf(back, f);
    c.pass = c.metrics["maxErr"] <= 1e-6;
    out.push_back(c);
  }
  {
    CheckResult c;
    c.name = "inversion-theorem";
    const GridSpec g = symmetric_grid(1, 64, 8.0);
    const SampledField f = gaussian_envelope_random(g, AlgebraSpec(1), rng);
    const SampledField fo2 = cft_fast(cft_fast(f, fast_req(ctx)), fast_req(ctx));
    double worst = 0.0;
    for (int j = 0; j < 64; ++j) {
      const int reflected = (64 - j) % 64;
      Multivector d = fo2.value(reflected) - f.value(j);
      worst = std::max(worst, norm(d));
    }
    c.metrics["maxErr"] = worst / linf_norm(f);
    c.pass = c.metrics["maxErr"] <= 1e-6;
    out.push_back(c);
  }
  return out;
}

std::vector<CheckResult> suite_f2_identity(const SuiteContext& ctx) {
  std::vector<CheckResult> out;
  Rng rng(ctx.seed);
  for (int n : {1, 2}) {
    const GridSpec g = symmetric_grid(n, n == 1 ? 64 : 16, 6.0);
    const SampledField f = gaussian_envelope_random(g, AlgebraSpec(n), rng);
    CheckResult c;
    c.name = "f2-identity-n" + std::to_string(n);
    const SampledField f2 = classical_ft(classical_ft(f, Direction::forward, ctx.threads),
                                         Direction::forward, ctx.threads);
    const SampledField fo2 = cft_fast(cft_fast(f, fast_req(ctx)), fast_req(ctx));
    c.metrics["maxDiff"] = rel_linf(real_part(f2), fo2);
    c.metrics["imagPart"] = imag_linf(f2) / std::max(1.0, linf_norm(fo2));
    c.pass = c.metrics["maxDiff"] <= 1e-10 && c.metrics["imagPart"] <= 1e-10;
    out.push_back(c);
  }
  return out;
}

SampledField cli_box_density(int n, int dims, double lo, double hi) {
  FieldGenerator gen;
  gen.kind = FieldGenerator::Kind::box_indicator;
  gen.box_lo.assign(n, lo);
  gen.box_hi.assign(n, hi);
  return sample(gen, symmetric_grid(n, dims, 8.0), AlgebraSpec(n));
}

std::vector<CheckResult> suite_monogenic(const SuiteContext& ctx) {
  std::vector<CheckResult> out;
  Rng rng(ctx.seed);
  const SampledField density = cli_box_density(1, 256, 0.5, 1.5);
  const ExtensionSpec ext{ExtensionVariant::v1_left, density};
  {
    CheckResult c;
    c.name = "restriction-consistency";
    const std::vector<double> y{1.25};
    const Multivector via_extend = extend(ext, ExtendedPoint{y, {0.0}});
    const ComplexMultivector via_direct = cft_direct_at(density, y);
    Multivector d = via_extend - via_direct.re;
    c.metrics["maxErr"] = norm(d);
    c.pass = c.metrics["maxErr"] <= 1e-12;
    out.push_back(c);
  }
  {
    CheckResult c;
    c.name = "dirac-residual";
    double worst_fine = 0.0, worst_ratio_err = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const ExtendedPoint p{{rng.uniform(-3.0, 3.0)}, {rng.uniform(-2.0, -0.1)}};
      const double fine = norm(dirac_residual(ext, p, 1e-3, 0));
      const double coarse = norm(dirac_residual(ext, p, 2e-3, 0));
      worst_fine = std::max(worst_fine, fine);
      if (fine > 1e-11)
        worst_ratio_err = std::max(worst_ratio_err, std::abs(coarse / fine - 4.0));
    }
    c.metrics["maxResidual"] = worst_fine;
    c.metrics["maxRatioErr"] = worst_ratio_err;
    c.pass = worst_fine <= 1e-4 && worst_ratio_err <= 1.2;
    out.push_back(c);
  }
  {
    CheckResult c;
    c.name = "cauchy-boundary";
    PlaneRect rect;
    rect.axis = 0;
    rect.y_lo = 0.3;
    rect.y_hi = 1.1;
    rect.yp_lo = -1.2;
    rect.yp_hi = -0.4;
    rect.base = ExtendedPoint{{0.0}, {0.0}};
    const double at512 = cauchy_boundary_check(ext, rect, 512);
    const double at1024 = cauchy_boundary_check(ext, rect, 1024);
    c.metrics["integral512"] = at512;
    c.metrics["integral1024"] = at1024;
    c.pass = at512 <= 1e-5 && at1024 <= 0.55 * at512;
    out.push_back(c);
  }
  {
    CheckResult c;
    c.name = "negative-control";
    const AlgebraSpec spec(1);
    ExtendedFn fn = [&spec](const ExtendedPoint& q) {
      return Multivector::scalar(spec, q.y[0]);
    };
    c.metrics["residual"] = norm(dirac_residual_fn(fn, ExtendedPoint{{0.3}, {-0.5}}, 1e-3, 0,
                                                   Side::left));
    c.pass = c.metrics["residual"] > 0.5;
    out.push_back(c);
  }
  return out;
}

std::vector<CheckResult> suite_paley_wiener(const SuiteContext& ctx) {
  std::vector<CheckResult> out;
  {
    const SampledField density = cli_box_density(1, 256, 0.5, 1.5);
    PwOptions opt;
    opt.support = SupportCase::half_space;
    opt.slices = {{-2.0}, {-1.0}, {-0.5}, {-0.1}, {-0.01}};
    opt.threads = ctx.threads;
    const PwReport r = pw_verify(density, opt);
    CheckResult mono;
    mono.name = "halfspace-monotone-bounded";
    mono.metrics["growthViolations"] = r.growth_violations;
    mono.metrics["supSliceNorm"] = r.sup_slice_norm;
    mono.metrics["densityNorm"] = r.density_norm;
    mono.pass = r.growth_violations == 0 && r.sup_slice_norm <= r.density_norm * (1 + 1e-9);
    out.push_back(mono);

    CheckResult prox;
    prox.name = "halfspace-sup-proximity";
    prox.parameters["slice"] = "-0.01";
    prox.metrics["relGap"] = (r.density_norm - r.sup_slice_norm) / r.density_norm;
    prox.pass = std::abs(prox.metrics["relGap"]) <= 1e-3;
    out.push_back(prox);

    CheckResult rec;
    rec.name = "halfspace-recovery";
    rec.metrics["recoveryError"] = r.recovery_error;
    rec.metrics["outsideSupportMass"] = r.outside_support_mass;
    rec.pass = r.recovery_error <= 1e-5 && r.outside_support_mass <= 1e-6;
    out.push_back(rec);
  }
  {
    FieldGenerator gen;
    gen.kind = FieldGenerator::Kind::ball_indicator;
    gen.radius = 1.0;
    const SampledField density = sample(gen, symmetric_grid(1, 256, 8.0), AlgebraSpec(1));
    PwOptions opt;
    opt.support = SupportCase::ball;
    opt.radius = 1.0;
    opt.slices = {{-1.0}, {0.5}, {2.0}};
    opt.growth_samples = 100;
    opt.growth_range = 5.0;
    opt.seed = ctx.seed;
    opt.threads = ctx.threads;
    const PwReport r = pw_verify(density, opt);
    CheckResult growth;
    growth.name = "ball-growth";
    growth.metrics["growthViolations"] = r.growth_violations;
    growth.pass = r.growth_violations == 0;
    out.push_back(growth);

    CheckResult rec;
    rec.name = "ball-recovery";
    rec.metrics["recoveryError"] = r.recovery_error;
    rec.metrics["outsideSupportMass"] = r.outside_support_mass;
    rec.pass = r.recovery_error <= 1e-5 && r.outside_support_mass <= 1e-6;
    out.push_back(rec);
  }
  return out;
}

std::vector<CheckResult> suite_oracle_equivalence(const SuiteContext& ctx) {
  std::vector<CheckResult> out;
  Rng rng(ctx.seed);
  const std::pair<int, int> cases[] = {{1, 16}, {1, 32}, {2, 16}};
  for (const auto& [n, dims] : cases) {
    const GridSpec g = symmetric_grid(n, dims, 4.0);
    const SampledField f = gaussian_envelope_random(g, AlgebraSpec(n), rng);
    for (Side side : {Side::left, Side::right}) {
      CheckResult c;
      c.name = "oracle-equivalence-n" + std::to_string(n) + "-d" + std::to_string(dims) +
               (side == Side::left ? "-left" : "-right");
      TransformRequest dreq;
      dreq.engine = Engine::direct;
      dreq.side = side;
      dreq.threads = ctx.threads;
      const double err = rel_linf(cft_fast(f, fast_req(ctx, side)), cft_direct(f, dreq));
      c.metrics["relLinf"] = err;
      c.pass = err <= 1e-8;
      out.push_back(c);
    }
  }
  return out;
}

std::vector<CheckResult> run_suite(const std::string& name, const SuiteContext& ctx) {
  if (name == "plancherel") return suite_plancherel(ctx);
  if (name == "opcalc") return suite_opcalc(ctx);
  if (name == "convolution") return suite_convolution(ctx);
  if (name == "inversion") return suite_inversion(ctx);
  if (name == "f2-identity") return suite_f2_identity(ctx);
  if (name == "monogenic") return suite_monogenic(ctx);
  if (name == "paley-wiener") return suite_paley_wiener(ctx);
  if (name == "oracle-equivalence") return suite_oracle_equivalence(ctx);
  throw std::invalid_argument("unknown verify suite: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford-Fourier transform toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
  bool timing = false;
  app.add_option("--seed", seed, "seed for all pseudo-random field generation");
  app.add_option("--threads", threads, "worker threads for transforms and quadrature");
  app.add_flag("--timing", timing, "record wall-clock times in reports (off by default)");
  app.fallthrough();  // global flags may follow the subcommand name

  auto* cmd_sample = app.add_subcommand("sample", "sample a generator onto a grid");
  std::string s_gen = "gaussian", s_dims, s_origin, s_spacing, s_blade, s_out;
  std::string s_lo, s_hi, s_center, s_exponents;
  double s_sigma = 1.0, s_radius = 1.0, s_amplitude = 1.0, s_envelope = 0.0;
  int s_modes = 3;
  bool s_manifest = false;
  cmd_sample->add_option("--gen", s_gen, "gaussian|box|ball|poly-gaussian|trig|random");
  cmd_sample->add_option("--dims", s_dims, "comma-separated axis lengths (even)")->required();
  cmd_sample->add_option("--origin", s_origin, "grid origin per axis");
  cmd_sample->add_option("--spacing", s_spacing, "grid step per axis");
  cmd_sample->add_option("--sigma", s_sigma, "gaussian width");
  cmd_sample->add_option("--radius", s_radius, "ball radius");
  cmd_sample->add_option("--amplitude", s_amplitude, "scalar amplitude");
  cmd_sample->add_option("--lo", s_lo, "box lower corner");
  cmd_sample->add_option("--hi", s_hi, "box upper corner");
  cmd_sample->add_option("--center", s_center, "center per axis");
  cmd_sample->add_option("--exponents", s_exponents, "polynomial exponents per axis");
  cmd_sample->add_option("--modes", s_modes, "trig/random field: number of modes");
  cmd_sample->add_option("--envelope", s_envelope, "random field: gaussian envelope sigma");
  cmd_sample->add_option("--blade", s_blade, "constant multivector factor, mask:value pairs");
  cmd_sample->add_option("--out", s_out, "output MVF1 path")->required();
  cmd_sample->add_flag("--manifest", s_manifest, "write a JSON provenance sidecar");

  auto* cmd_transform = app.add_subcommand("transform", "apply the transform to a field");
  std::string t_in, t_out, t_side = "left", t_direction = "forward", t_engine = "fast";
  cmd_transform->add_option("--in", t_in)->required();
  cmd_transform->add_option("--out", t_out)->required();
  cmd_transform->add_option("--side", t_side)->check(CLI::IsMember({"left", "right"}));
  cmd_transform->add_option("--direction", t_direction)
      ->check(CLI::IsMember({"forward", "inverse"}));
  cmd_transform->add_option("--engine", t_engine)->check(CLI::IsMember({"direct", "fast"}));

  auto* cmd_convolve = app.add_subcommand("convolve", "periodic convolution of two fields");
  std::string c_a, c_b, c_out;
  cmd_convolve->add_option("--a", c_a)->required();
  cmd_convolve->add_option("--b", c_b)->required();
  cmd_convolve->add_option("--out", c_out)->required();

  auto* cmd_extend = app.add_subcommand("extend", "evaluate a monogenic extension at a point");
  std::string e_in, e_variant = "v1-left", e_y, e_yp, e_out;
  double e_step = 1e-3;
  cmd_extend->add_option("--in", e_in)->required();
  cmd_extend->add_option("--variant", e_variant)
      ->check(CLI::IsMember({"v1-left", "v1-right", "v2-left", "v2-right"}));
  cmd_extend->add_option("--y", e_y, "base coordinates")->required();
  cmd_extend->add_option("--yp", e_yp, "primed coordinates")->required();
  cmd_extend->add_option("--dirac-step", e_step, "central-difference step");
  cmd_extend->add_option("--out", e_out, "report path (default stdout)");

  auto* cmd_verify = app.add_subcommand("verify", "run a named verification suite");
  std::string v_suite, v_out;
  cmd_verify
      ->add_option("suite", v_suite,
                   "plancherel|opcalc|convolution|inversion|f2-identity|monogenic|"
                   "paley-wiener|oracle-equivalence")
      ->required();
  cmd_verify->add_option("--out", v_out, "report path (default stdout)");

  auto* cmd_info = app.add_subcommand("info", "print MVF1 header information");
  std::string i_in;
  cmd_info->add_option("in", i_in)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_sample) {
      const GridSpec grid = make_grid(s_dims, s_origin, s_spacing);
      const AlgebraSpec spec(grid.n);
      SampledField field(grid, spec);
      std::map<std::string, std::string> params;
      if (s_gen == "random") {
        Rng rng(seed);
        field = random_field(grid, spec, rng, s_modes, s_envelope);
        params = {{"seed", std::to_string(seed)}, {"modes", std::to_string(s_modes)}};
      } else {
        FieldGenerator gen;
        gen.amplitude = s_amplitude;
        if (s_gen == "gaussian") {
          gen.kind = FieldGenerator::Kind::gaussian;
          gen.sigma = s_sigma;
          params["sigma"] = std::to_string(s_sigma);
        } else if (s_gen == "box") {
          gen.kind = FieldGenerator::Kind::box_indicator;
          gen.box_lo = parse_doubles(s_lo);
          gen.box_hi = parse_doubles(s_hi);
          params["lo"] = s_lo;
          params["hi"] = s_hi;
        } else if (s_gen == "ball") {
          gen.kind = FieldGenerator::Kind::ball_indicator;
          gen.radius = s_radius;
          params["radius"] = std::to_string(s_radius);
        } else if (s_gen == "poly-gaussian") {
          gen.kind = FieldGenerator::Kind::polynomial_gaussian;
          gen.exponents = parse_ints(s_exponents);
          gen.sigma = s_sigma;
          params["exponents"] = s_exponents;
        } else if (s_gen == "trig") {
          gen.kind = FieldGenerator::Kind::trig_polynomial;
          Rng rng(seed);
          for (int t = 0; t < s_modes; ++t) {
            FieldGenerator::TrigTerm term;
            term.amplitude = rng.uniform(-1.0, 1.0);
            term.phase = rng.uniform(0.0, 6.283185307179586);
            term.freq.resize(grid.n);
            for (int k = 0; k < grid.n; ++k)
              term.freq[k] = 2.0 * std::numbers::pi * rng.uniform_int(0, 4) /
                             (grid.dims[k] * grid.spacing[k]);
            gen.terms.push_back(term);
          }
          params["seed"] = std::to_string(seed);
        } else {
          throw std::invalid_argument("unknown generator: " + s_gen);
        }
        if (!s_center.empty()) gen.center = parse_doubles(s_center);
        gen.blade_weights = parse_blade_weights(spec, s_blade);
        field = sample(gen, grid, spec);
      }
      write_field(field, s_out);
      if (s_manifest) write_manifest(s_out, s_gen, params);
      return kExitOk;
    }

    if (*cmd_transform) {
      const SampledField f = read_field(t_in);
      TransformRequest req;
      req.side = t_side == "left" ? Side::left : Side::right;
      req.direction = t_direction == "forward" ? Direction::forward : Direction::inverse;
      req.engine = t_engine == "fast" ? Engine::fast : Engine::direct;
      req.threads = threads;
      write_field(transform(f, req), t_out);
      return kExitOk;
    }

    if (*cmd_convolve) {
      const SampledField a = read_field(c_a);
      const SampledField b = read_field(c_b);
      write_field(convolve(a, b, threads), c_out);
      return kExitOk;
    }

    if (*cmd_extend) {
      const SampledField density = read_field(e_in);
      ExtensionVariant variant = ExtensionVariant::v1_left;
      if (e_variant == "v1-right") variant = ExtensionVariant::v1_right;
      if (e_variant == "v2-left") variant = ExtensionVariant::v2_left;
      if (e_variant == "v2-right") variant = ExtensionVariant::v2_right;
      const ExtensionSpec spec{variant, density};
      const ExtendedPoint p{parse_doubles(e_y), parse_doubles(e_yp)};
      const Multivector value = extend(spec, p);
      double residual_max = 0.0;
      for (int k = 0; k < density.grid().n; ++k)
        residual_max = std::max(residual_max, norm(dirac_residual(spec, p, e_step, k)));

      std::ofstream file;
      if (!e_out.empty()) file.open(e_out, std::ios::trunc);
      std::ostream& os = e_out.empty() ? std::cout : file;
      ReportWriter writer{os, "extend", timing};
      CheckResult c;
      c.name = "extension-point";
      c.parameters = {{"variant", e_variant}, {"y", e_y}, {"yp", e_yp}};
      c.metrics["norm"] = norm(value);
      c.metrics["diracResidualMax"] = residual_max;
      for (std::size_t i = 0; i < value.size(); ++i)
        if (value[i] != 0.0) c.metrics["coeff" + std::to_string(i)] = value[i];
      const bool monogenic_variant =
          variant == ExtensionVariant::v1_left || variant == ExtensionVariant::v2_right;
      c.pass = !monogenic_variant || residual_max <= 1e-3 * std::max(1.0, norm(value));
      const bool ok = writer.emit(c);
      return ok ? kExitOk : kExitCheckFailure;
    }

    if (*cmd_verify) {
      SuiteContext ctx{seed, threads};
      const auto results = run_suite(v_suite, ctx);
      std::ofstream file;
      if (!v_out.empty()) file.open(v_out, std::ios::trunc);
      std::ostream& os = v_out.empty() ? std::cout : file;
      ReportWriter writer{os, "verify " + v_suite, timing};
      bool all_pass = true;
      for (const auto& c : results) all_pass = writer.emit(c) && all_pass;
      return all_pass ? kExitOk : kExitCheckFailure;
    }

    if (*cmd_info) {
      const SampledField f = read_field(i_in);
      std::cout << "n: " << f.grid().n << "\n";
      std::cout << "dims:";
      for (int d : f.grid().dims) std::cout << " " << d;
      std::cout << "\norigin:";
      for (double v : f.grid().origin) std::cout << " " << v;
      std::cout << "\nspacing:";
      for (double v : f.grid().spacing) std::cout << " " << v;
      std::cout << "\ncomplex: " << (f.is_complex() ? "yes" : "no") << "\n";
      std::cout << "points: " << f.points() << "\n";
      std::cout << "blades per point: " << f.blades() << "\n";
      return kExitOk;
    }
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFile;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFile;
  }
  return kExitUsage;
}
