#include "approxrec/polygons.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "approxrec/errors.hpp"

namespace approxrec {

void CycleCensus::add(int perimeter, int area, long count) {
  if (count == 0) return;
  table_[{perimeter, area}] += count;
  max_perimeter_ = std::max(max_perimeter_, perimeter);
}

long CycleCensus::count(int perimeter, int area) const {
  const auto it = table_.find({perimeter, area});
  return it == table_.end() ? 0 : it->second;
}

long CycleCensus::total(int perimeter) const {
  long sum = 0;
  for (auto it = table_.lower_bound({perimeter, 0});
       it != table_.end() && it->first.first == perimeter; ++it) {
    sum += it->second;
  }
  return sum;
}

long CycleCensus::area_weighted(int perimeter) const {
  long sum = 0;
  for (auto it = table_.lower_bound({perimeter, 0});
       it != table_.end() && it->first.first == perimeter; ++it) {
    sum += it->first.second * it->second;
  }
  return sum;
}

namespace {

// Walks from the origin that stay strictly above it in (y, x) order and
// return to it. Every polygon is rooted at its lowest-then-leftmost vertex
// and traced in both orientations.
class PolygonWalker {
 public:
  explicit PolygonWalker(int max_perimeter)
      : max_(max_perimeter),
        span_(2 * max_perimeter + 1),
        visited_(static_cast<std::size_t>(span_) * span_, 0),
        counts_(static_cast<std::size_t>(max_perimeter + 1) *
                    (max_perimeter * max_perimeter + 1),
                0) {}

  void run() { step(0, 0, 0, 0); }

  long doubled(int perimeter, int area) const {
    return counts_[index(perimeter, area)];
  }
  int max_area() const { return max_ * max_; }

 private:
  static constexpr int kDx[4] = {1, 0, -1, 0};
  static constexpr int kDy[4] = {0, 1, 0, -1};

  std::size_t index(int perimeter, int area) const {
    return static_cast<std::size_t>(perimeter) * (max_ * max_ + 1) + area;
  }
  std::size_t cell(int x, int y) const {
    return static_cast<std::size_t>(y + max_) * span_ + (x + max_);
  }

  void step(int x, int y, int length, long twice_area) {
    for (int d = 0; d < 4; ++d) {
      const int nx = x + kDx[d];
      const int ny = y + kDy[d];
      const long area2 = twice_area + static_cast<long>(x) * ny -
                         static_cast<long>(nx) * y;
      if (nx == 0 && ny == 0) {
        if (length + 1 >= 4) {
          ++counts_[index(length + 1, static_cast<int>(std::labs(area2) / 2))];
        }
        continue;
      }
      if (ny < 0 || (ny == 0 && nx < 0)) continue;
      if (length + 1 + std::abs(nx) + std::abs(ny) > max_) continue;
      if (visited_[cell(nx, ny)]) continue;
      visited_[cell(nx, ny)] = 1;
      step(nx, ny, length + 1, area2);
      visited_[cell(nx, ny)] = 0;
    }
  }

  int max_;
  int span_;
  std::vector<std::uint8_t> visited_;
  std::vector<long> counts_;
};

}  // namespace

CycleCensus count_saps(int max_perimeter, int cap) {
  if (max_perimeter < 4 || max_perimeter % 2 != 0) {
    throw ConfigError("census perimeter must be even and at least 4");
  }
  if (max_perimeter > cap) {
    throw CapacityError("census perimeter " + std::to_string(max_perimeter) +
                        " exceeds cap " + std::to_string(cap));
  }
  PolygonWalker walker(max_perimeter);
  walker.run();
  CycleCensus census;
  for (int i = 4; i <= max_perimeter; i += 2) {
    for (int a = 1; a <= walker.max_area(); ++a) {
      census.add(i, a, walker.doubled(i, a) / 2);
    }
  }
  return census;
}

void write_census_csv(std::ostream& out, const CycleCensus& census) {
  out << "perimeter,area,count\n";
  for (const auto& [key, count] : census.table()) {
    out << key.first << ',' << key.second << ',' << count << '\n';
  }
}

CycleCensus read_census_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "perimeter,area,count") {
    throw ConfigError("census CSV must start with perimeter,area,count");
  }
  CycleCensus census;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    int perimeter = 0;
    int area = 0;
    long count = 0;
    char c1 = 0;
    char c2 = 0;
    if (!(row >> perimeter >> c1 >> area >> c2 >> count) || c1 != ',' ||
        c2 != ',') {
      throw ConfigError("malformed census row '" + line + "'");
    }
    census.add(perimeter, area, count);
  }
  return census;
}

}  // namespace approxrec
