#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace confnat {

/// A parameter or argument violates a documented invariant (|a| >= 1, alpha <= 1, x >= 1, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Sample sets that admit no finite estimate, e.g. all points identical.
class degenerate_input_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Series or quadrature failed to reach its tolerance.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver ran out of iterations. Carries the best iterate found.
class non_convergence_error : public std::runtime_error {
 public:
  non_convergence_error(const std::string& what, std::complex<double> best)
      : std::runtime_error(what), best_(best) {}

  std::complex<double> best() const noexcept { return best_; }

 private:
  std::complex<double> best_;
};

/// A user objective returned a non-finite value.
class evaluation_error : public std::runtime_error {
 public:
  evaluation_error(const std::string& what, std::complex<double> point)
      : std::runtime_error(what), point_(point) {}

  std::complex<double> point() const noexcept { return point_; }

 private:
  std::complex<double> point_;
};

}  // namespace confnat
