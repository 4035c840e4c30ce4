#pragma once

// Legendre functions, Bregman distances and closed-form Bregman projections.
//
// Two mirror maps are supported: the squared norm (Euclidean geometry) and
// the negative entropy sum x_i log x_i (Kullback-Leibler geometry). All
// functions are pure; geometry and set values are immutable after
// construction and may be shared across threads.

#include "qvi/core.hpp"

#include <variant>

namespace qvi {

enum class GeometryKind { SquaredNorm, NegativeEntropy };

struct BregmanGeometry {
  GeometryKind kind = GeometryKind::SquaredNorm;
  /// Strong-convexity modulus. Exactly 1 for the squared norm; for the
  /// entropy it is 1 with respect to the 1-norm on the simplex (Pinsker).
  double modulus = 1.0;
  /// Floor applied to components before logarithms (entropy only).
  double domain_floor = 1e-12;
  /// Saturation value for exp() in the conjugate gradient (entropy only).
  double exp_cap = 1e300;

  static BregmanGeometry squared_norm();
  static BregmanGeometry negative_entropy(double domain_floor = 1e-12);

  /// Throws ValidationError if a field violates its invariant.
  void validate() const;
};

const char* to_string(GeometryKind kind);

struct Box {
  Vector lo;
  Vector hi;
};

struct Ball {
  Vector center;
  double radius = 1.0;
};

struct Simplex {
  int dim = 1;
};

/// Closed convex feasible set K. Construct through the named factories,
/// which enforce lo <= hi, radius > 0 and dim > 0.
class FeasibleSet {
 public:
  using Shape = std::variant<Box, Ball, Simplex>;

  static FeasibleSet box(Vector lo, Vector hi);
  static FeasibleSet uniform_box(int dim, double lo, double hi);
  static FeasibleSet ball(Vector center, double radius);
  static FeasibleSet simplex(int dim);

  int dim() const;
  const Shape& shape() const { return shape_; }
  const char* kind_name() const;

  bool contains(const Vector& x, double tol = 1e-12) const;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&shape_);
  }

 private:
  explicit FeasibleSet(Shape shape) : shape_(std::move(shape)) {}
  Shape shape_;
};

/// Phi(x). Entropy uses the convention 0 log 0 = 0.
double phi(const BregmanGeometry& geom, const Vector& x);

/// Gradient of Phi: identity for the squared norm, 1 + ln(x_i) for entropy.
Vector grad_phi(const BregmanGeometry& geom, const Vector& x);

struct ConjugateGradient {
  Vector point;
  bool saturated = false;
};

/// Gradient of the convex conjugate, i.e. the inverse of grad_phi. For the
/// entropy, components whose exponent would exceed exp_cap are saturated to
/// exp_cap and the result is flagged.
ConjugateGradient grad_phi_star_checked(const BregmanGeometry& geom, const Vector& y);
Vector grad_phi_star(const BregmanGeometry& geom, const Vector& y);

/// D(x, y) = Phi(x) - Phi(y) - <grad Phi(y), x - y>.
double bregman_distance(const BregmanGeometry& geom, const Vector& x, const Vector& y);

/// argmin_{z in K} D(z, x), using the closed form for each supported pair:
/// squared norm with box, ball or simplex; entropy with simplex.
Vector bregman_project(const BregmanGeometry& geom, const FeasibleSet& set, const Vector& x);

/// Metric (Euclidean) projection onto K.
Vector euclidean_project(const FeasibleSet& set, const Vector& x);

bool is_supported_pair(GeometryKind kind, const FeasibleSet& set);

/// Sort-then-threshold Euclidean projection onto the unit simplex.
Vector project_onto_simplex(const Vector& x);

}  // namespace qvi
