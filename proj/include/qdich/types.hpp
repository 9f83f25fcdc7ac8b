#ifndef QDICH_TYPES_HPP
#define QDICH_TYPES_HPP

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qdich {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kRankTol = 1e-12;        // support membership, relative to largest eigenvalue
inline constexpr double kHermTol = 1e-12;        // Hermiticity, relative Frobenius
inline constexpr double kDegeneracyTol = 1e-9;   // eigenvalue clustering, relative to spectral range
inline constexpr double kSupportLeakTol = 1e-10; // support containment / orthogonality tests

inline double infinity() { return std::numeric_limits<double>::infinity(); }

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// rejected-input errors: malformed operators, dimension mismatches, bad orders
class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& what) : Error(what) {}
};

// log / negative power requested on a singular operator without on_support
class SingularOperatorError : public Error {
 public:
  explicit SingularOperatorError(const std::string& what) : Error(what) {}
};

// theorem hypothesis violated (neither support containment holds)
class HypothesisViolationError : public Error {
 public:
  explicit HypothesisViolationError(const std::string& what) : Error(what) {}
};

// instance exceeds the solver dimension cap
class DimensionCapError : public Error {
 public:
  explicit DimensionCapError(const std::string& what) : Error(what) {}
};

// solver failed to reach the requested tolerance; carries the best bounds found
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double primal, double dual, double gap)
      : Error(what), primal_bound(primal), dual_bound(dual), achieved_gap(gap) {}
  double primal_bound;
  double dual_bound;
  double achieved_gap;
};

}  // namespace qdich

#endif
