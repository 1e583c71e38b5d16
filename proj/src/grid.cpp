#include "dronefilm/grid.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace dronefilm {

GridMap::GridMap(int width, int height, std::vector<Cell> obstacles)
    : width_(width), height_(height), obstacles_(std::move(obstacles)) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  std::sort(obstacles_.begin(), obstacles_.end());
  obstacles_.erase(std::unique(obstacles_.begin(), obstacles_.end()), obstacles_.end());
  occupancy_.assign(static_cast<std::size_t>(width) * height, 0);
  for (Cell c : obstacles_) {
    if (!in_bounds(c)) {
      throw std::invalid_argument("obstacle (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                                  ") outside the grid");
    }
    occupancy_[index(c)] = 1;
  }
}

GridMap GridMap::with_blocked(std::span<const Cell> extra) const {
  std::vector<Cell> cells = obstacles_;
  for (Cell c : extra) {
    if (in_bounds(c)) cells.push_back(c);
  }
  return GridMap(width_, height_, std::move(cells));
}

std::vector<int> distance_field(const GridMap& grid, Cell goal) {
  std::vector<int> dist(grid.cell_count(), -1);
  if (grid.blocked(goal)) return dist;
  std::deque<Cell> queue{goal};
  dist[grid.index(goal)] = 0;
  while (!queue.empty()) {
    Cell c = queue.front();
    queue.pop_front();
    for (Cell m : kMoves4) {
      Cell n = c + m;
      if (grid.blocked(n) || dist[grid.index(n)] >= 0) continue;
      dist[grid.index(n)] = dist[grid.index(c)] + 1;
      queue.push_back(n);
    }
  }
  return dist;
}

}  // namespace dronefilm
