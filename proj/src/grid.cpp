#include "wavekit/grid.hpp"

#include "wavekit/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wavekit {

Grid::Grid(int nq, int np, std::span<const double> jump_points) : nq_(nq), np_(np) {
  if (nq < 8 || nq % 2 != 0) throw std::invalid_argument("grid: Nq must be an even integer >= 8");
  if (np < 2) throw std::invalid_argument("grid: Np must be >= 2");
  for (double pj : jump_points) {
    const double x = (pj + 1.0) * np;
    const long node = std::lround(x);
    if (std::abs(-1.0 + static_cast<double>(node) / np - pj) > 1e-12 || node <= 0 || node >= np) {
      std::ostringstream os;
      os << "grid: vorticity jump at p = " << pj << " is not aligned with a p-node for Np = " << np;
      throw std::invalid_argument(os.str());
    }
    jump_nodes_.push_back(static_cast<int>(node));
  }
  std::sort(jump_nodes_.begin(), jump_nodes_.end());
  jump_nodes_.erase(std::unique(jump_nodes_.begin(), jump_nodes_.end()), jump_nodes_.end());
  bounds_.push_back(0);
  bounds_.insert(bounds_.end(), jump_nodes_.begin(), jump_nodes_.end());
  bounds_.push_back(np_);
}

int Grid::fold(int i) const {
  const int w = wrap(i);
  return std::abs(w - nq_ / 2);
}

bool Grid::is_jump_node(int j) const {
  return std::binary_search(jump_nodes_.begin(), jump_nodes_.end(), j);
}

std::pair<int, int> Grid::layer_of_cell(int m) const {
  if (m < 0 || m >= np_) throw std::out_of_range("grid: cell index out of range");
  auto it = std::upper_bound(bounds_.begin(), bounds_.end(), m);
  return {*(it - 1), *it};
}

PStencil Grid::one_sided(int j, int first, int last, int points) const {
  // nodes from the layer [first,last] nearest to j, taken on one side
  points = std::min(points, last - first + 1);
  int start = j <= first ? first : last - points + 1;
  if (j != first && j != last) start = std::clamp(j - points / 2, first, last - points + 1);
  std::vector<double> nodes(points);
  for (int k = 0; k < points; ++k) nodes[k] = start + k;
  const auto w = fd_weights(static_cast<double>(j), nodes, 1);
  PStencil st;
  for (int k = 0; k < points; ++k) st.push_back({start + k, w[k] * np_});
  return st;
}

PStencil Grid::half_node_dp(int m, int points) const {
  const auto [first, last] = layer_of_cell(m);
  points = std::min(points, last - first + 1);
  // centre the stencil on the half node, clamped into the layer
  int start = std::clamp(m - (points / 2 - 1), first, last - points + 1);
  std::vector<double> nodes(points);
  for (int k = 0; k < points; ++k) nodes[k] = start + k;
  const auto w = fd_weights(m + 0.5, nodes, 1);
  PStencil st;
  for (int k = 0; k < points; ++k) st.push_back({start + k, w[k] * np_});
  return st;
}

PStencil Grid::node_dp(int j) const {
  if (j < 0 || j > np_) throw std::out_of_range("grid: node index out of range");
  if (j == 0) return one_sided(0, 0, layer_of_cell(0).second, 3);
  if (j == np_) return one_sided(np_, layer_of_cell(np_ - 1).first, np_, 3);
  if (is_jump_node(j)) {
    auto below = one_sided(j, layer_of_cell(j - 1).first, j, 3);
    auto above = one_sided(j, j, layer_of_cell(j).second, 3);
    PStencil st;
    for (auto nw : below) st.push_back({nw.j, 0.5 * nw.w});
    for (auto nw : above) st.push_back({nw.j, 0.5 * nw.w});
    return st;
  }
  return {{j - 1, -0.5 * np_}, {j + 1, 0.5 * np_}};
}

PStencil Grid::surface_dp(int points) const {
  return one_sided(np_, layer_of_cell(np_ - 1).first, np_, points);
}

}  // namespace wavekit
