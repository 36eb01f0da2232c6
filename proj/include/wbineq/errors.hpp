#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wbineq {

// Raised when a minimum-distance fit exhausts its multi-starts without any
// run meeting the convergence criterion. Carries the best point seen so the
// caller can still inspect or report it.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, std::vector<double> best_point, double best_objective)
      : std::runtime_error(what),
        best_point_(std::move(best_point)),
        best_objective_(best_objective) {}

  const std::vector<double>& best_point() const { return best_point_; }
  double best_objective() const { return best_objective_; }

 private:
  std::vector<double> best_point_;
  double best_objective_;
};

}  // namespace wbineq
