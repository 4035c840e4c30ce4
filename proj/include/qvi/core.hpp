#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace qvi {

/// Finite-dimensional primal or dual vector. The pairing between the two is
/// the standard inner product, so one type serves both roles.
using Vector = Eigen::VectorXd;

/// Input outside the domain of a Legendre function or an operator.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested (geometry, feasible set) pair has no closed-form projection.
class UnsupportedPairError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside a data range (e.g. an averaging horizon past the end of
/// a trajectory).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Configuration or parameter that violates a documented constraint.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace qvi
