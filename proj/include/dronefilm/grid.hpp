#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace dronefilm {

// Integer grid coordinate. y grows "north".
struct Cell {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(Cell, Cell) = default;
  friend constexpr auto operator<=>(Cell, Cell) = default;
};

constexpr Cell operator+(Cell a, Cell b) { return {a.x + b.x, a.y + b.y}; }
constexpr Cell operator-(Cell a, Cell b) { return {a.x - b.x, a.y - b.y}; }

// 4-connected moves, fixed order: east, north, west, south.
inline constexpr Cell kMoves4[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

constexpr int manhattan(Cell a, Cell b) {
  return (a.x > b.x ? a.x - b.x : b.x - a.x) + (a.y > b.y ? a.y - b.y : b.y - a.y);
}

constexpr bool adjacent_or_equal(Cell a, Cell b) { return manhattan(a, b) <= 1; }

// Occupancy grid. Obstacles are kept sorted and unique so that equality and
// serialization are canonical.
class GridMap {
 public:
  GridMap() = default;
  // Throws std::invalid_argument for non-positive sizes or out-of-bounds obstacles.
  GridMap(int width, int height, std::vector<Cell> obstacles = {});

  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }

  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  // Out-of-bounds cells count as blocked.
  bool blocked(Cell c) const { return !in_bounds(c) || occupancy_[index(c)] != 0; }
  bool free(Cell c) const { return !blocked(c); }

  int index(Cell c) const { return c.y * width_ + c.x; }
  Cell cell_at(int index) const { return {index % width_, index / width_}; }

  const std::vector<Cell>& obstacles() const { return obstacles_; }

  // Copy with additional blocked cells (out-of-bounds entries are ignored).
  GridMap with_blocked(std::span<const Cell> extra) const;

  friend bool operator==(const GridMap& a, const GridMap& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.obstacles_ == b.obstacles_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Cell> obstacles_;
  std::vector<std::uint8_t> occupancy_;
};

// Static shortest-path distances (4-connected) from `goal` to every cell;
// unreachable or blocked cells get -1.
std::vector<int> distance_field(const GridMap& grid, Cell goal);

}  // namespace dronefilm
