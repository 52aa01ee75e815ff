#include <doctest.h>

#include <algorithm>
#include <random>

#include "morphofilter/error.hpp"
#include "morphofilter/image.hpp"
#include "test_support.hpp"

using namespace morpho;

TEST_CASE("neighbors clip at the boundary and list ascending") {
  const GrayImage img(Dims{3, 3, 1}, 8);
  CHECK(neighbors(img, 0, Connectivity::C4) == std::vector<std::size_t>{1, 3});
  CHECK(neighbors(img, 4, Connectivity::C4) == std::vector<std::size_t>{1, 3, 5, 7});
  CHECK(neighbors(img, 4, Connectivity::C8) == std::vector<std::size_t>{0, 1, 2, 3, 5, 6, 7, 8});
  CHECK(neighbors(img, 8, Connectivity::C8) == std::vector<std::size_t>{4, 5, 7});

  const GrayImage vol(Dims{3, 3, 3}, 8);
  CHECK(neighbors(vol, 13, Connectivity::C6) == std::vector<std::size_t>{4, 10, 12, 14, 16, 22});
  CHECK(neighbors(vol, 13, Connectivity::C26).size() == 26);
  CHECK(neighbors(vol, 0, Connectivity::C26).size() == 7);
}

TEST_CASE("neighbors reject bad index and mismatched connectivity") {
  const GrayImage img(Dims{3, 3, 1}, 8);
  CHECK_THROWS_AS(neighbors(img, 9, Connectivity::C4), DomainError);
  CHECK_THROWS_AS(neighbors(img, 0, Connectivity::C6), ConfigError);
  const GrayImage vol(Dims{2, 2, 2}, 8);
  CHECK_THROWS_AS(neighbors(vol, 0, Connectivity::C8), ConfigError);
}

TEST_CASE("neighbor relation is symmetric and duplicate-free on every small grid") {
  const std::vector<std::pair<Dims, Connectivity>> cases = {
      {{1, 1, 1}, Connectivity::C4}, {{1, 5, 1}, Connectivity::C4}, {{5, 1, 1}, Connectivity::C8},
      {{2, 2, 1}, Connectivity::C8}, {{4, 3, 1}, Connectivity::C4}, {{4, 3, 1}, Connectivity::C8},
      {{2, 2, 2}, Connectivity::C6}, {{3, 2, 4}, Connectivity::C6}, {{3, 2, 4}, Connectivity::C26},
      {{1, 1, 3}, Connectivity::C26}};
  for (const auto& [dims, conn] : cases) {
    const GrayImage img(dims, 8);
    for (std::size_t a = 0; a < img.size(); ++a) {
      const auto na = neighbors(img, a, conn);
      CHECK(std::is_sorted(na.begin(), na.end()));
      CHECK(std::adjacent_find(na.begin(), na.end()) == na.end());
      CHECK(std::find(na.begin(), na.end(), a) == na.end());
      for (std::size_t b : na) {
        const auto nb = neighbors(img, b, conn);
        CHECK(std::find(nb.begin(), nb.end(), a) != nb.end());
      }
    }
  }
}

TEST_CASE("negate complements against the bit-depth maximum") {
  CHECK(negate(GrayImage::row({0, 255, 10})).values()[0] == 255);
  const auto n = negate(GrayImage::row({0, 255, 10}));
  CHECK(std::vector<Level>(n.values().begin(), n.values().end()) == std::vector<Level>{255, 0, 245});
  const auto c = negate(GrayImage(Dims{3, 3, 1}, 8, std::vector<Level>(9, 128)));
  CHECK(std::all_of(c.values().begin(), c.values().end(), [](Level v) { return v == 127; }));
  CHECK(negate(GrayImage::row({0}, 16))[0] == 65535);
  CHECK(negate(GrayImage::row({0}, 16)).bit_depth() == 16);
}

TEST_CASE("negate is an involution") {
  std::mt19937_64 rng(11);
  for (std::size_t i = 0; i < 50; ++i) {
    const auto img = testing::random_image(rng, Dims{1 + i % 7, 1 + i % 5, 1 + i % 3}, 255);
    CHECK(negate(negate(img)) == img);
  }
  const auto wide = testing::random_image(rng, Dims{33, 3, 1}, 65535, 16);
  CHECK(negate(negate(wide)) == wide);
}

TEST_CASE("image construction validates its invariants") {
  CHECK_THROWS_AS(GrayImage(Dims{0, 1, 1}, 8), DomainError);
  CHECK_THROWS_AS(GrayImage(Dims{2, 2, 1}, 12), DomainError);
  CHECK_THROWS_AS(GrayImage(Dims{2, 2, 1}, 8, {1, 2, 3}), DomainError);
  CHECK_THROWS_AS(GrayImage(Dims{1, 1, 1}, 8, {256}), DomainError);
  CHECK_NOTHROW(GrayImage(Dims{1, 1, 1}, 16, {256}));
  const GrayImage img(Dims{2, 2, 2}, 8, {0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(img.at(1, 0, 1) == 5);
  CHECK(img.at(0, 1, 1) == 6);
  CHECK_THROWS_AS(img.at(2, 0, 0), DomainError);
}

TEST_CASE("connectivity defaults and parsing") {
  CHECK(default_connectivity(Dims{4, 4, 1}) == Connectivity::C4);
  CHECK(default_connectivity(Dims{4, 4, 2}) == Connectivity::C6);
  CHECK(parse_connectivity("26") == Connectivity::C26);
  CHECK_THROWS_AS(parse_connectivity("5"), ConfigError);
  CHECK(is_compatible(Connectivity::C8, Dims{3, 3, 1}));
  CHECK_FALSE(is_compatible(Connectivity::C26, Dims{3, 3, 1}));
}
