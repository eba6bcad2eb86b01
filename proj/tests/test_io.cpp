#include <gtest/gtest.h>

#include "gfortho/io.hpp"
#include "gfortho/jl_core.hpp"
#include "gfortho/prng.hpp"

using gfo::Field;
using gfo::FMatrix;
using gfo::io::json;

namespace {

gfo::GenerationResult sample(const Field& f, std::size_t n, std::size_t degree, std::uint64_t seed) {
  for (std::uint64_t s = seed;; ++s) {
    gfo::Prng rng(s);
    auto r = gfo::generate(gfo::GeneratorSet::random(f, n, degree, rng));
    if (r) return *r;
  }
}

}  // namespace

TEST(Io, FieldRoundTrip) {
  for (const Field& f : {Field::make(97), Field::make(2, 4), Field::make(3, 2, std::vector<std::uint32_t>{2, 2, 1})}) {
    EXPECT_EQ(gfo::io::field_from_json(gfo::io::to_json(f)), f);
  }
  EXPECT_THROW(gfo::io::field_from_json(json{{"p", 9}}), gfo::Error);
  EXPECT_THROW(gfo::io::field_from_json(json{{"q", 9}}), gfo::Error);
}

TEST(Io, MatrixJsonAndTextRoundTrip) {
  const auto r = sample(Field::make(97), 5, 2, 1);
  EXPECT_EQ(gfo::io::matrix_from_json(gfo::io::to_json(r.w0)), r.w0);
  EXPECT_EQ(gfo::io::matrix_from_json(gfo::io::to_json(r.w1)), r.w1);
  EXPECT_EQ(gfo::io::matrix_from_text(gfo::io::to_text(r.w0), Field::make(97)), r.w0);
  const json j = gfo::io::to_json(r.w0);
  EXPECT_EQ(j.at("rows"), 5);
  EXPECT_EQ(j.at("cols"), 5);
  EXPECT_EQ(j.at("data").size(), 25u);

  const auto ext = sample(Field::make(3, 2), 3, 1, 2);
  const json je = gfo::io::to_json(ext.w0);
  EXPECT_TRUE(je.at("data").at(0).is_array());
  EXPECT_EQ(gfo::io::matrix_from_json(je), ext.w0);
  EXPECT_THROW(gfo::io::to_text(ext.w0), gfo::Error);
}

TEST(Io, MalformedInputsAreParseErrors) {
  const Field f = Field::make(5);
  for (const char* text : {"1 2\n3\n", "1 x\n", "1 -2\n", "5 0\n0 1\n", ""}) {
    try {
      gfo::io::matrix_from_text(text, f);
      ADD_FAILURE() << text;
    } catch (const gfo::Error& e) {
      EXPECT_EQ(e.code(), gfo::Errc::Parse) << text;
    }
  }
  EXPECT_THROW(gfo::io::matrix_from_json(json{{"rows", 2}, {"cols", 2}, {"data", {1, 0, 0}}}, &f), gfo::Error);
  EXPECT_THROW(gfo::io::matrix_from_json(json{{"rows", 1}, {"cols", 1}, {"data", {1}}}), gfo::Error);
}

TEST(Io, MatPolyAndGeneratorsRoundTrip) {
  const auto r = sample(Field::make(97), 4, 3, 3);
  EXPECT_EQ(gfo::io::matpoly_from_json(gfo::io::to_json(r.u)), r.u);
  EXPECT_EQ(gfo::io::generators_from_json(gfo::io::to_json(r.generators)), r.generators);
  const json g = gfo::io::to_json(r.generators);
  EXPECT_EQ(g.at("gamma").size(), 3u);
  EXPECT_EQ(g.at("gamma").at(0).size(), 3u);

  const json doc = gfo::io::to_json(r);
  for (const char* key : {"field", "n", "N", "gamma", "U", "W0", "W1", "mult_count", "diagnostics"})
    EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_EQ(doc.at("diagnostics").at("det_diagnostic"), "pass");
}

TEST(Io, LaurentRoundTrip) {
  const Field f = Field::make(11);
  const gfo::LaurentPoly p(f, -2, {3, 0, 4, 10});
  EXPECT_EQ(gfo::io::laurent_from_json(gfo::io::to_json(p), f), p);
}
