#ifndef PRABHAKAR_CORE_HPP_
#define PRABHAKAR_CORE_HPP_

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace prabhakar {

// Thrown when an iterative scheme (series, quadrature, differencing) cannot
// reach its accuracy target; carries the best estimate it achieved.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Execution policy for the data-parallel kernels. Every parallel kernel has a
// serial twin that produces bit-identical results; tests compare the two.
enum class Exec { serial, openmp };

// A real function sampled on a strictly increasing node set.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(std::vector<double> nodes, std::vector<double> values);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  // Piecewise-linear evaluation; clamps outside the node range.
  double operator()(double t) const;

  double max_abs() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
};

inline bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace prabhakar

#endif  // PRABHAKAR_CORE_HPP_
