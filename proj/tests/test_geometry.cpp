#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "thermagrid/geometry.hpp"

using namespace thermagrid;

TEST_CASE("euclidean distance") {
  CHECK(euclidean_distance({0, 0, 0}, {1, 0, 0}) == 1.0);
  CHECK(euclidean_distance({0, 0, 0}, {0, 0, 0}) == 0.0);
  CHECK(euclidean_distance({0, 0, 0}, {1, 2, 2}) == 3.0);
}

TEST_CASE("manhattan distance") {
  CHECK(manhattan_distance({0, 0, 0}, {1, 0, 0}) == 1.0);
  CHECK(manhattan_distance({0, 0, 0}, {1, 2, 2}) == 5.0);
  CHECK(manhattan_distance({3, 3, 3}, {3, 3, 3}) == 0.0);
}

TEST_CASE("box membership is boundary-inclusive") {
  const Box3 unit({0, 0, 0}, 1, 1, 1);
  CHECK(contains(unit, {0.5, 0.5, 0.5}));
  CHECK(contains(unit, {1.0, 1.0, 1.0}));
  CHECK(contains(unit, {0.0, 0.0, 0.0}));
  CHECK_FALSE(contains(unit, {1.5, 0.0, 0.0}));
}

TEST_CASE("box validation") {
  CHECK_THROWS_AS(Box3({0, 0, 0}, 0.0, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(Box3({0, 0, 0}, 1.0, -2.0, 1.0), ValidationError);
}

TEST_CASE("metric properties on random triples") {
  std::mt19937_64 rng(42);
  const Box3 box({-5, -5, -5}, 10, 10, 10);
  for (int i = 0; i < 500; ++i) {
    const Point3 a = testsupport::random_point(rng, box);
    const Point3 b = testsupport::random_point(rng, box);
    const Point3 c = testsupport::random_point(rng, box);

    CHECK(euclidean_distance(a, b) == doctest::Approx(euclidean_distance(b, a)));
    CHECK(manhattan_distance(a, b) == manhattan_distance(b, a));

    // triangle inequality, both metrics
    CHECK(euclidean_distance(a, c) <=
          euclidean_distance(a, b) + euclidean_distance(b, c) + 1e-12);
    CHECK(manhattan_distance(a, c) <=
          manhattan_distance(a, b) + manhattan_distance(b, c) + 1e-12);

    CHECK(manhattan_distance(a, b) >= euclidean_distance(a, b) - 1e-12);
  }
}
