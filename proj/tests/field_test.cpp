#include "cft/field_io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cft/generators.hpp"
#include "cft/rng.hpp"
#include "oracles.hpp"

namespace cft {
namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cft_field_test";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<char> slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

TEST(GridSpec, ValidatesShape) {
  EXPECT_THROW(GridSpec({3}, {0.0}, {1.0}), std::invalid_argument);   // odd
  EXPECT_THROW(GridSpec({0}, {0.0}, {1.0}), std::invalid_argument);   // too small
  EXPECT_THROW(GridSpec({4}, {0.0}, {0.0}), std::invalid_argument);   // zero spacing
  EXPECT_THROW(GridSpec({4}, {0.0}, {-1.0}), std::invalid_argument);  // negative spacing
  EXPECT_THROW(GridSpec({4096, 4096, 4}, {0, 0, 0}, {1, 1, 1}), std::invalid_argument);
  const GridSpec g({4, 6}, {-1.0, 0.0}, {0.5, 0.25});
  EXPECT_EQ(g.point_count(), 24u);
  const auto x = g.coords(g.point_count() - 1);
  EXPECT_DOUBLE_EQ(x[0], -1.0 + 3 * 0.5);
  EXPECT_DOUBLE_EQ(x[1], 0.0 + 5 * 0.25);
}

TEST(Sample, GaussianAtCenter) {
  FieldGenerator gen;
  gen.kind = FieldGenerator::Kind::gaussian;
  const GridSpec g({4}, {-2.0, }, {1.0});
  const SampledField f = sample(gen, g, AlgebraSpec(1));
  // node x = 0 is index 2
  EXPECT_DOUBLE_EQ(f.value(2)[0], 1.0);
}

TEST(Sample, BoxIndicatorSupport) {
  FieldGenerator gen;
  gen.kind = FieldGenerator::Kind::box_indicator;
  gen.box_lo = {0.0};
  gen.box_hi = {1.0};
  Multivector w(AlgebraSpec(1));
  w[0] = 2.0;
  w[1] = -1.0;
  gen.blade_weights = w;
  const GridSpec g({8}, {-2.0}, {0.5});
  const SampledField f = sample(gen, g, AlgebraSpec(1));
  EXPECT_EQ(norm(f.value(0)), 0.0);                                    // x = -2
  EXPECT_EQ(testing::max_coeff_diff(f.value(5), w), 0.0);              // x = 0.5
  EXPECT_EQ(norm(f.value(g.point_count() - 1)), 0.0);                  // x = 1.5
}

TEST(Sample, RejectsBadParameters) {
  FieldGenerator gen;
  gen.kind = FieldGenerator::Kind::box_indicator;
  gen.box_lo = {1.0};
  gen.box_hi = {0.0};
  EXPECT_THROW(sample(gen, GridSpec({4}, {0.0}, {1.0}), AlgebraSpec(1)), std::invalid_argument);
  FieldGenerator g2;
  g2.sigma = -1.0;
  EXPECT_THROW(sample(g2, GridSpec({4}, {0.0}, {1.0}), AlgebraSpec(1)), std::invalid_argument);
}

TEST(Dilate, IdentityAndScaling) {
  FieldGenerator gen;
  gen.kind = FieldGenerator::Kind::gaussian;
  gen.sigma = 0.5;
  const GridSpec g({64}, {-8.0}, {0.25});
  const SampledField a = sample(gen, g, AlgebraSpec(1));
  const SampledField b = sample(gen.dilated(1.0), g, AlgebraSpec(1));
  EXPECT_EQ(max_node_diff(a, b), 0.0);
  EXPECT_THROW(gen.dilated(0.0), std::invalid_argument);
  // f(x/2) for the gaussian doubles sigma
  const SampledField c = sample(gen.dilated(2.0), g, AlgebraSpec(1));
  std::vector<double> x(1);
  for (std::size_t p = 0; p < c.points(); ++p) {
    g.coords(p, x);
    EXPECT_NEAR(c.value(p)[0], std::exp(-x[0] * x[0] / (2.0 * 4 * 0.25)), 1e-15);
  }
}

TEST(L2Norm, GaussianQuadrature) {
  // ||e^{-x^2/2}||_2^2 under dm equals (2 pi)^{-1/2} int e^{-x^2} dx = 2^{-1/2}.
  FieldGenerator gen;
  gen.kind = FieldGenerator::Kind::gaussian;
  const GridSpec g({256}, {-8.0}, {16.0 / 256});
  const SampledField f = sample(gen, g, AlgebraSpec(1));
  const double got = l2_norm(f) * l2_norm(f);
  EXPECT_NEAR(got, 0.7071067811865476, 1e-6);
  // independent quadrature of the same integral at doubled resolution
  double riemann = 0.0;
  const double h = 16.0 / 512;
  for (int j = 0; j < 512; ++j) {
    const double x = -8.0 + j * h;
    riemann += std::exp(-x * x) * h;
  }
  EXPECT_NEAR(got, riemann * 0.3989422804014327, 1e-9);
  EXPECT_EQ(l2_norm(SampledField(g, AlgebraSpec(1))), 0.0);
}

TEST(InnerProduct, ConsistentWithNorm) {
  Rng rng(9);
  const GridSpec g({32}, {-4.0}, {0.25});
  const SampledField f = random_field(g, AlgebraSpec(1), rng, 3, 1.5);
  const double ip = inner_product(f, f);
  const double n2 = l2_norm(f) * l2_norm(f);
  EXPECT_NEAR(ip, n2 * std::sqrt(2.0 * 3.141592653589793), 1e-10 * std::max(1.0, ip));
  const SampledField other(GridSpec({16}, {-4.0}, {0.5}), AlgebraSpec(1));
  EXPECT_THROW(inner_product(f, other), std::invalid_argument);
}

TEST(FieldIO, RoundTripIsBitExact) {
  Rng rng(77);
  const GridSpec g({8, 4}, {-1.0, 0.0}, {0.25, 0.5});
  SampledField f = random_field(g, AlgebraSpec(2), rng, 2, 0.0, true);
  const auto path = temp_file("roundtrip.mvf");
  write_field(f, path);
  const SampledField r = read_field(path);
  ASSERT_EQ(r.grid(), f.grid());
  ASSERT_EQ(r.is_complex(), f.is_complex());
  ASSERT_EQ(r.raw().size(), f.raw().size());
  for (std::size_t i = 0; i < r.raw().size(); ++i) ASSERT_EQ(r.raw()[i], f.raw()[i]);
}

TEST(FieldIO, WriteIsByteDeterministic) {
  Rng rng(78);
  const SampledField f = random_field(GridSpec({16}, {-2.0}, {0.25}), AlgebraSpec(1), rng, 2);
  const auto p1 = temp_file("det1.mvf"), p2 = temp_file("det2.mvf");
  write_field(f, p1);
  write_field(f, p2);
  EXPECT_EQ(slurp(p1), slurp(p2));
}

TEST(FieldIO, DistinctErrorCodes) {
  const auto path = temp_file("broken.mvf");

  {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os << "NOPE";
  }
  try {
    read_field(path);
    FAIL() << "expected bad magic";
  } catch (const io_error& e) {
    EXPECT_EQ(e.code(), io_error::Code::bad_magic);
  }

  const SampledField f(GridSpec({4}, {0.0}, {1.0}), AlgebraSpec(1));
  write_field(f, path);
  {
    std::fstream os(path, std::ios::binary | std::ios::in | std::ios::out);
    os.seekp(4);
    const std::uint32_t v = 9;
    os.write(reinterpret_cast<const char*>(&v), 4);
  }
  try {
    read_field(path);
    FAIL() << "expected bad version";
  } catch (const io_error& e) {
    EXPECT_EQ(e.code(), io_error::Code::bad_version);
  }

  // well-formed n=2 header, payload sized for n=1
  {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os << "MVF1";
    const std::uint32_t head[3] = {1, 2, 0};
    os.write(reinterpret_cast<const char*>(head), 12);
    const std::uint32_t dims[2] = {4, 4};
    os.write(reinterpret_cast<const char*>(dims), 8);
    const double coords[4] = {0.0, 0.0, 1.0, 1.0};  // origin then spacing
    os.write(reinterpret_cast<const char*>(coords), 32);
    const std::vector<double> short_payload(4 * 4, 0.0);  // 16 node-blocks of an n=1 field
    os.write(reinterpret_cast<const char*>(short_payload.data()),
             static_cast<std::streamsize>(short_payload.size() * 8));
  }
  try {
    read_field(path);
    FAIL() << "expected truncation";
  } catch (const io_error& e) {
    EXPECT_EQ(e.code(), io_error::Code::truncated_payload);
  }

  // dimension out of range
  write_field(f, path);
  {
    std::fstream os(path, std::ios::binary | std::ios::in | std::ios::out);
    os.seekp(8);
    std::uint32_t n = 7;
    os.write(reinterpret_cast<const char*>(&n), 4);
  }
  try {
    read_field(path);
    FAIL() << "expected dimension mismatch";
  } catch (const io_error& e) {
    EXPECT_EQ(e.code(), io_error::Code::dimension_mismatch);
  }

  EXPECT_THROW(read_field(temp_file("missing.mvf")), io_error);
}

TEST(FieldIO, ManifestSidecar) {
  const SampledField f(GridSpec({4}, {0.0}, {1.0}), AlgebraSpec(1));
  const auto path = temp_file("withmanifest.mvf");
  write_field(f, path);
  write_manifest(path, "gaussian", {{"sigma", "1"}});
  fs::path mp = path;
  mp.replace_extension(".json");
  ASSERT_TRUE(fs::exists(mp));
  const auto text = slurp(mp);
  const std::string s(text.begin(), text.end());
  EXPECT_NE(s.find("\"generator\": \"gaussian\""), std::string::npos);
  EXPECT_NE(s.find("tool-version"), std::string::npos);
}

TEST(FieldValues, ComplexAccessors) {
  SampledField f(GridSpec({4}, {0.0}, {1.0}), AlgebraSpec(1), true);
  ComplexMultivector v(AlgebraSpec(1));
  v.re[1] = 2.0;
  v.im[0] = -3.0;
  f.set_value(1, v);
  const ComplexMultivector r = f.cvalue(1);
  EXPECT_EQ(r.re[1], 2.0);
  EXPECT_EQ(r.im[0], -3.0);
  SampledField real(GridSpec({4}, {0.0}, {1.0}), AlgebraSpec(1));
  EXPECT_THROW(real.set_value(0, v), std::invalid_argument);
}

}  // namespace
}  // namespace cft
