#pragma once

#include <iosfwd>
#include <map>
#include <utility>

namespace approxrec {

// Self-avoiding polygons of the square lattice, counted up to translation,
// keyed by (perimeter, enclosed area).
class CycleCensus {
 public:
  void add(int perimeter, int area, long count);
  long count(int perimeter, int area) const;
  long total(int perimeter) const;
  // sum over areas of area * count at this perimeter.
  long area_weighted(int perimeter) const;
  int max_perimeter() const { return max_perimeter_; }
  const std::map<std::pair<int, int>, long>& table() const { return table_; }

  friend bool operator==(const CycleCensus&, const CycleCensus&) = default;

 private:
  std::map<std::pair<int, int>, long> table_;
  int max_perimeter_ = 0;
};

inline constexpr int kDefaultCensusCap = 16;

// Exhaustive enumeration up to max_perimeter (even, <= cap).
CycleCensus count_saps(int max_perimeter, int cap = kDefaultCensusCap);

// CSV with header "perimeter,area,count".
void write_census_csv(std::ostream& out, const CycleCensus& census);
CycleCensus read_census_csv(std::istream& in);

}  // namespace approxrec
