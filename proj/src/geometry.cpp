#include "qvi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace qvi {

namespace {

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw DomainError(std::string(what) + ": non-finite component");
  }
}

// Entropy domain is the closed nonnegative orthant; components in [0, floor)
// are lifted to the floor before any logarithm is taken.
Vector floored_entropy_arg(const BregmanGeometry& geom, const Vector& x, const char* what) {
  require_finite(x, what);
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) {
      throw DomainError(std::string(what) + ": negative component " + std::to_string(x[i]) +
                        " outside the entropy domain");
    }
    out[i] = std::max(x[i], geom.domain_floor);
  }
  return out;
}

void require_same_size(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    throw DomainError(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

BregmanGeometry BregmanGeometry::squared_norm() { return {}; }

BregmanGeometry BregmanGeometry::negative_entropy(double domain_floor) {
  BregmanGeometry g;
  g.kind = GeometryKind::NegativeEntropy;
  g.modulus = 1.0;
  g.domain_floor = domain_floor;
  g.validate();
  return g;
}

void BregmanGeometry::validate() const {
  if (!(modulus > 0.0)) throw ValidationError("geometry modulus must be positive");
  if (kind == GeometryKind::SquaredNorm && modulus != 1.0) {
    throw ValidationError("squared-norm geometry has modulus exactly 1");
  }
  if (kind == GeometryKind::NegativeEntropy && modulus > 1.0) {
    throw ValidationError("entropy geometry modulus must be <= 1");
  }
  if (!(domain_floor > 0.0) || domain_floor > 1e-8) {
    throw ValidationError("domain floor must lie in (0, 1e-8]");
  }
  if (!(exp_cap > 0.0) || !std::isfinite(exp_cap)) {
    throw ValidationError("exp cap must be positive and finite");
  }
}

const char* to_string(GeometryKind kind) {
  return kind == GeometryKind::SquaredNorm ? "sqnorm" : "entropy";
}

FeasibleSet FeasibleSet::box(Vector lo, Vector hi) {
  if (lo.size() != hi.size() || lo.size() == 0) {
    throw ValidationError("box bounds must be nonempty and of equal length");
  }
  if (!lo.allFinite() || !hi.allFinite()) throw ValidationError("box bounds must be finite");
  if ((lo.array() > hi.array()).any()) throw ValidationError("box requires lo <= hi componentwise");
  return FeasibleSet(Box{std::move(lo), std::move(hi)});
}

FeasibleSet FeasibleSet::uniform_box(int dim, double lo, double hi) {
  return box(Vector::Constant(dim, lo), Vector::Constant(dim, hi));
}

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
  if (center.size() == 0 || !center.allFinite()) throw ValidationError("ball center must be finite");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("ball radius must be positive");
  return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::simplex(int dim) {
  if (dim <= 0) throw ValidationError("simplex dimension must be positive");
  return FeasibleSet(Simplex{dim});
}

int FeasibleSet::dim() const {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) return static_cast<int>(s.lo.size());
        else if constexpr (std::is_same_v<T, Ball>) return static_cast<int>(s.center.size());
        else return s.dim;
      },
      shape_);
}

const char* FeasibleSet::kind_name() const {
  switch (shape_.index()) {
    case 0: return "box";
    case 1: return "ball";
    default: return "simplex";
  }
}

bool FeasibleSet::contains(const Vector& x, double tol) const {
  if (x.size() != dim() || !x.allFinite()) return false;
  if (const auto* b = as<Box>()) {
    return ((x - b->lo).array() >= -tol).all() && ((b->hi - x).array() >= -tol).all();
  }
  if (const auto* b = as<Ball>()) {
    return (x - b->center).norm() <= b->radius + tol;
  }
  return (x.array() >= -tol).all() && std::abs(x.sum() - 1.0) <= tol;
}

double phi(const BregmanGeometry& geom, const Vector& x) {
  require_finite(x, "phi");
  if (geom.kind == GeometryKind::SquaredNorm) return 0.5 * x.squaredNorm();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) throw DomainError("phi: negative component outside the entropy domain");
    if (x[i] > 0.0) s += x[i] * std::log(x[i]);
  }
  return s;
}

Vector grad_phi(const BregmanGeometry& geom, const Vector& x) {
  if (geom.kind == GeometryKind::SquaredNorm) {
    require_finite(x, "grad_phi");
    return x;
  }
  Vector z = floored_entropy_arg(geom, x, "grad_phi");
  return (z.array().log() + 1.0).matrix();
}

ConjugateGradient grad_phi_star_checked(const BregmanGeometry& geom, const Vector& y) {
  require_finite(y, "grad_phi_star");
  if (geom.kind == GeometryKind::SquaredNorm) return {y, false};
  const double log_cap = std::log(geom.exp_cap);
  ConjugateGradient out{Vector(y.size()), false};
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double e = y[i] - 1.0;
    if (e > log_cap) {
      out.point[i] = geom.exp_cap;
      out.saturated = true;
    } else {
      out.point[i] = std::exp(e);
    }
  }
  return out;
}

Vector grad_phi_star(const BregmanGeometry& geom, const Vector& y) {
  return grad_phi_star_checked(geom, y).point;
}

double bregman_distance(const BregmanGeometry& geom, const Vector& x, const Vector& y) {
  require_same_size(x, y, "bregman_distance");
  require_finite(x, "bregman_distance");
  require_finite(y, "bregman_distance");
  if (geom.kind == GeometryKind::SquaredNorm) return 0.5 * (x - y).squaredNorm();

  const Vector yf = floored_entropy_arg(geom, y, "bregman_distance");
  double d = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) throw DomainError("bregman_distance: negative component outside the entropy domain");
    if (x[i] > 0.0) {
      if (!(yf[i] > 0.0)) throw DomainError("bregman_distance: x_i > 0 with y_i = 0");
      d += x[i] * std::log(x[i] / yf[i]) - x[i];
    }
    d += yf[i];
  }
  // Rounding can push an exact zero slightly negative.
  return std::max(d, 0.0);
}

Vector project_onto_simplex(const Vector& x) {
  const Eigen::Index n = x.size();
  std::vector<double> u(x.data(), x.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  return (x.array() - theta).max(0.0).matrix();
}

Vector euclidean_project(const FeasibleSet& set, const Vector& x) {
  require_finite(x, "euclidean_project");
  if (x.size() != set.dim()) throw DomainError("euclidean_project: dimension mismatch");
  if (const auto* b = set.as<Box>()) {
    return x.cwiseMax(b->lo).cwiseMin(b->hi);
  }
  if (const auto* b = set.as<Ball>()) {
    const Vector d = x - b->center;
    const double r = d.norm();
    if (r <= b->radius) return x;
    return b->center + (b->radius / r) * d;
  }
  return project_onto_simplex(x);
}

bool is_supported_pair(GeometryKind kind, const FeasibleSet& set) {
  return kind == GeometryKind::SquaredNorm || set.as<Simplex>() != nullptr;
}

Vector bregman_project(const BregmanGeometry& geom, const FeasibleSet& set, const Vector& x) {
  if (!is_supported_pair(geom.kind, set)) {
    throw UnsupportedPairError(std::string("unsupported geometry/set pair: ") + to_string(geom.kind) +
                               " with " + set.kind_name());
  }
  if (geom.kind == GeometryKind::SquaredNorm) return euclidean_project(set, x);
  if (x.size() != set.dim()) throw DomainError("bregman_project: dimension mismatch");
  // KL projection onto the simplex is a rescaling: y proportional to x.
  const Vector z = floored_entropy_arg(geom, x, "bregman_project");
  return z / z.sum();
}

}  // namespace qvi
