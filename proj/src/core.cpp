#include "prabhakar/core.hpp"

#include <algorithm>
#include <cmath>

namespace prabhakar {

GridFunction::GridFunction(std::vector<double> nodes,
                           std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.size() != values_.size())
    throw std::invalid_argument("GridFunction: node/value length mismatch");
  if (nodes_.size() < 2)
    throw std::invalid_argument("GridFunction: need at least two nodes");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i] > nodes_[i - 1]))
      throw std::invalid_argument("GridFunction: nodes must strictly increase");
  if (!all_finite(nodes_) || !all_finite(values_))
    throw std::invalid_argument("GridFunction: non-finite sample");
}

double GridFunction::operator()(double t) const {
  if (t <= nodes_.front()) return values_.front();
  if (t >= nodes_.back()) return values_.back();
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
  const double t0 = nodes_[i - 1], t1 = nodes_[i];
  const double u = (t - t0) / (t1 - t0);
  return (1.0 - u) * values_[i - 1] + u * values_[i];
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace prabhakar
