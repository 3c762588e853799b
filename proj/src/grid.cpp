#include "ferro/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ferro/kernels.hpp"

namespace ferro {

Grid::Grid(int n) : n_(n), step_(0.0) {
  if (n < 16) {
    throw std::invalid_argument("grid too coarse: n = " + std::to_string(n) +
                                " (need n >= 16)");
  }
  if (n % 2 != 0) {
    throw std::invalid_argument("odd subdivision: n = " + std::to_string(n) +
                                " (need an even n so pi/2 is a node)");
  }
  constexpr double pi = std::numbers::pi;
  step_ = pi / n;
  const auto count = static_cast<std::size_t>(n) + 1;
  nodes_.resize(count);
  sin_.resize(count);
  cos_.resize(count);
  weights_.resize(count);
  half_nodes_.resize(static_cast<std::size_t>(n));
  flux_.resize(static_cast<std::size_t>(n));

  const int half = n / 2;
  for (int i = 0; i <= n; ++i) nodes_[i] = i * step_;
  nodes_[half] = pi / 2;
  nodes_[n] = pi;

  for (int i = 0; i <= half; ++i) {
    sin_[i] = std::sin(nodes_[i]);
    cos_[i] = std::cos(nodes_[i]);
  }
  sin_[0] = 0.0;
  cos_[0] = 1.0;
  sin_[half] = 1.0;
  cos_[half] = 0.0;
  for (int i = 0; i < half; ++i) {
    sin_[n - i] = sin_[i];
    cos_[n - i] = -cos_[i];
  }

  for (int i = 0; i <= n; ++i) weights_[i] = sin_[i] * step_;
  weights_[0] = 0.0;
  weights_[n] = 0.0;

  const double scale = (step_ / 2) / std::sin(step_ / 2);
  for (int i = 0; i < half; ++i) {
    half_nodes_[i] = (i + 0.5) * step_;
    flux_[i] = std::sin(half_nodes_[i]) * scale;
  }
  for (int i = 0; i < half; ++i) {
    half_nodes_[n - 1 - i] = pi - half_nodes_[i];
    flux_[n - 1 - i] = flux_[i];
  }
}

double Grid::weight_sum() const { return kernels::weighted_sum(weights_, {}); }

GridPtr make_grid(int n) { return std::make_shared<const Grid>(n); }

double quad_sin(const Grid& grid, std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(grid.n()) + 1) {
    throw std::invalid_argument("quad_sin: expected " +
                                std::to_string(grid.n() + 1) + " values, got " +
                                std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("quad_sin: non-finite value at node " +
                                  std::to_string(i));
    }
  }
  return kernels::weighted_sum(grid.weights(), values);
}

}  // namespace ferro
