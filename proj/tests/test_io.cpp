#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "doctest.h"
#include "lrsb/image.hpp"
#include "lrsb/json_io.hpp"
#include "lrsb/preprocess.hpp"
#include "lrsb/random.hpp"
#include "oracles.hpp"

using namespace lrsb;

namespace fs = std::filesystem;

TEST_SUITE("json") {

TEST_CASE("round12 keeps twelve significant digits") {
  CHECK(Round12(0.1 + 0.2) == 0.3);
  CHECK(Round12(1.0 / 3.0) == 0.333333333333);
  CHECK(Round12(-2.0 / 3.0e-5) == -66666.6666667);
  CHECK(Round12(0.0) == 0.0);
  CHECK(Round12(1e-300) == 1e-300);
}

TEST_CASE("bicluster set round trip") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    BiclusterSet set = oracle::RandomBiclusterSet(rng, 15, 9, 4);
    if (!set.empty()) set.biclusters[0].p_value = 0.0123;
    const BiclusterSet back = BiclusterSetFromJson(Json::parse(ToJson(set).dump()));
    CHECK(back.source_shape == set.source_shape);
    REQUIRE(back.size() == set.size());
    for (std::size_t k = 0; k < set.size(); ++k) {
      CHECK(back.biclusters[k] == set.biclusters[k]);
      CHECK(back.biclusters[k].p_value == set.biclusters[k].p_value);
    }
  }
}

TEST_CASE("bicluster json is validated") {
  CHECK_THROWS_AS(BiclusterSetFromJson(Json::parse(
                      R"({"shape":[3,3],"biclusters":[{"rows":[5],"cols":[0]}]})")),
                  InvalidArgument);
  CHECK_THROWS_AS(BiclusterSetFromJson(Json::parse(
                      R"({"shape":[3,3],"biclusters":[{"rows":[],"cols":[0]}]})")),
                  InvalidArgument);
  CHECK_THROWS(BiclusterSetFromJson(Json::parse(R"({"biclusters":[]})")));
}

TEST_CASE("ground truth round trip") {
  GroundTruth truth;
  truth.biclusters = {Bicluster({0, 2}, {1}), Bicluster({3}, {0, 2})};
  truth.spike_mask = SpikeMask::Constant(4, 3, false);
  truth.spike_mask(1, 2) = true;
  truth.spike_mask(3, 0) = true;
  const Json j = ToJson(truth, {4, 3});
  CHECK(j["spikes"].size() == 2);
  CHECK(GroundTruthShape(j) == Shape{4, 3});
  const GroundTruth back = GroundTruthFromJson(j, {});
  CHECK(back.biclusters == truth.biclusters);
  CHECK(back.spike_mask == truth.spike_mask);

  const Json bad = Json::parse(R"({"shape":[2,2],"biclusters":[],"spikes":[[2,0]]})");
  CHECK_THROWS_AS(GroundTruthFromJson(bad, {}), InvalidArgument);
}

TEST_CASE("json file is indented with a trailing newline") {
  const fs::path p = fs::temp_directory_path() / "lrsb_io_test.json";
  WriteJsonFile(p.string(), Json{{"a", 1}, {"b", {1, 2}}});
  const Json back = ReadJsonFile(p.string());
  CHECK(back["a"] == 1);
  std::ifstream in(p);
  const std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text.back() == '\n');
  CHECK(text.find("\n  \"a\"") != std::string::npos);
  fs::remove(p);
  CHECK_THROWS(ReadJsonFile((fs::temp_directory_path() / "lrsb_missing.json").string()));
}

}  // TEST_SUITE

TEST_SUITE("preprocess") {

TEST_CASE("invert and bin examples") {
  const DenseMatrix s = DenseMatrix::FromRowMajor(1, 3, {100, 0, 55});
  const DenseMatrix inv = InvertPercent(s);
  CHECK(inv(0, 0) == 0.0);
  CHECK(inv(0, 1) == 100.0);
  CHECK(inv(0, 2) == 45.0);
  const DenseMatrix lv = BinLevels(inv, 10);
  CHECK(lv(0, 0) == 0.0);
  CHECK(lv(0, 1) == 9.0);
  CHECK(lv(0, 2) == 4.0);
  CHECK(InvertUnit(DenseMatrix::FromRowMajor(1, 2, {0.25, 1.0}))(0, 0) == 0.75);
}

TEST_CASE("all-equal scores bin to one level") {
  const DenseMatrix lv = BinLevels(DenseMatrix(Eigen::MatrixXd::Constant(3, 4, 37.0)), 10);
  CHECK((lv.values().array() == lv(0, 0)).all());
}

TEST_CASE("out-of-range values are listed") {
  const DenseMatrix s = DenseMatrix::FromRowMajor(2, 2, {10, 101, -1, 50});
  try {
    InvertPercent(s);
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    const std::string what = e.what();
    CHECK(what.find("(0, 1)") != std::string::npos);
    CHECK(what.find("(1, 0)") != std::string::npos);
  }
  CHECK_THROWS_AS(InvertUnit(DenseMatrix::FromRowMajor(1, 1, {1.5})), InvalidArgument);
  CHECK_THROWS_AS(BinLevels(s, 10), InvalidArgument);
  CHECK_THROWS_AS(BinLevels(DenseMatrix::FromRowMajor(1, 1, {1}), 0), InvalidArgument);
}

TEST_CASE("binning is monotone") {
  double prev_v = -1.0, prev_l = -1.0;
  for (int k = 0; k <= 1000; ++k) {
    const double v = k / 10.0;
    const double l = BinLevels(DenseMatrix::FromRowMajor(1, 1, {v}), 10)(0, 0);
    CHECK(l >= prev_l);
    CHECK(l >= 0.0);
    CHECK(l <= 9.0);
    CHECK(v > prev_v);
    prev_v = v;
    prev_l = l;
  }
}

}  // TEST_SUITE

TEST_SUITE("image") {

TEST_CASE("colormap endpoints and clamping") {
  CHECK(Colormap(0.0) == Rgb{68, 1, 84});
  CHECK(Colormap(1.0) == Rgb{253, 231, 37});
  CHECK(Colormap(-3.0) == Colormap(0.0));
  CHECK(Colormap(7.0) == Colormap(1.0));
  CHECK(Colormap(std::nan("")) == Colormap(0.0));
}

TEST_CASE("zero matrix renders a single color") {
  const Image img = RenderHeatmap(DenseMatrix::Zero(3, 5), 2);
  CHECK(img.width == 10);
  CHECK(img.height == 6);
  for (std::size_t y = 0; y < img.height; ++y) {
    for (std::size_t x = 0; x < img.width; ++x) CHECK(img.At(x, y) == Colormap(0.0));
  }
}

TEST_CASE("identity renders a distinct diagonal") {
  const Image img = RenderHeatmap(DenseMatrix::Identity(4), 3);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const Rgb c = img.At(j * 3 + 1, i * 3 + 1);
      CHECK(c == (i == j ? Colormap(1.0) : Colormap(0.0)));
    }
  }
  CHECK_THROWS_AS(RenderHeatmap(DenseMatrix::Identity(2), 0), InvalidArgument);
}

TEST_CASE("ppm bytes are deterministic") {
  const DenseMatrix m(oracle::RandomMatrix(6, 4, 3));
  const std::string a = RenderHeatmap(m, 2).EncodePpm();
  const std::string b = RenderHeatmap(m, 2).EncodePpm();
  CHECK(a == b);
  const std::string head = "P6\n8 12\n255\n";
  CHECK(a.substr(0, head.size()) == head);
  CHECK(a.size() == head.size() + 8 * 12 * 3);
}

}  // TEST_SUITE
