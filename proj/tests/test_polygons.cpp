#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "approxrec/errors.hpp"
#include "approxrec/polygons.hpp"
#include "polyomino_oracle.hpp"

using namespace approxrec;

using testing::polygons_from_polyominoes;

TEST_SUITE("polygons") {

TEST_CASE("small perimeters") {
  const CycleCensus c = count_saps(8);
  CHECK(c.total(4) == 1);
  CHECK(c.count(4, 1) == 1);
  CHECK(c.total(6) == 2);
  CHECK(c.count(6, 2) == 2);
  CHECK(c.total(8) == 7);
  CHECK(c.total(5) == 0);
  CHECK(c.area_weighted(6) == 4);
}

TEST_CASE("census matches polyomino outlines") {
  const CycleCensus c = count_saps(12);
  const auto oracle = polygons_from_polyominoes(12);
  CHECK(c.table() == std::map<std::pair<int, int>, long>(oracle.begin(),
                                                          oracle.end()));
}

TEST_CASE("census totals against the connective constant") {
  const CycleCensus c = count_saps(14);
  const long expected[] = {1, 2, 7, 28, 124, 588};
  for (int k = 0; k < 6; ++k) CHECK(c.total(4 + 2 * k) == expected[k]);
  for (const auto& [key, count] : c.table()) {
    const auto [i, a] = key;
    CHECK(i % 2 == 0);
    CHECK(a * 16 <= i * i);
    CHECK(count > 0);
  }
  for (int i = 4; i <= 14; i += 2) {
    CHECK(static_cast<double>(c.total(i)) <= std::pow(2.65, i));
  }
}

TEST_CASE("census argument checks") {
  CHECK_THROWS_AS(count_saps(7), ConfigError);
  CHECK_THROWS_AS(count_saps(2), ConfigError);
  CHECK_THROWS_AS(count_saps(18), CapacityError);
}

TEST_CASE("census csv round trip") {
  const CycleCensus c = count_saps(10);
  std::stringstream text;
  write_census_csv(text, c);
  CHECK(text.str().rfind("perimeter,area,count\n4,1,1\n", 0) == 0);
  CHECK(read_census_csv(text) == c);
  std::stringstream bad("perimeter,area,count\n4,x,1\n");
  CHECK_THROWS_AS(read_census_csv(bad), ConfigError);
}

}  // TEST_SUITE
