#pragma once

// Seeded samplers over feasible sets. Every sample index owns its own engine
// (seeded from (seed, index)), so a sampled diagnostic produces the same
// draws regardless of how the index range is split across threads.

#include "qvi/core.hpp"
#include "qvi/geometry.hpp"

#include <cstdint>
#include <random>

namespace qvi {

using Engine = std::mt19937_64;

Engine sample_engine(std::uint64_t seed, std::uint64_t index);

/// Box: uniform. Ball: uniform (Gaussian direction, radius R U^{1/n}).
/// Simplex: Dirichlet(1, ..., 1).
Vector sample_uniform(const FeasibleSet& set, Engine& rng);

/// Point contracted toward a pole of the set by a log-uniform factor in
/// [1e-3, 1]. Poles are the center (box, ball) or a random vertex (simplex),
/// so draws concentrate near the center or near the simplex boundary.
Vector sample_multiscale(const FeasibleSet& set, Engine& rng);

/// Uniform random unit vector; for the simplex it lies in the sum-zero
/// tangent space.
Vector random_direction(const FeasibleSet& set, Engine& rng);

/// A feasible point near `anchor`: anchor + distance * direction, projected
/// back onto the set.
Vector sample_near(const FeasibleSet& set, const Vector& anchor, double distance, Engine& rng);

/// Strictly positive point on the simplex interior, components >= floor.
Vector sample_simplex_interior(int dim, Engine& rng, double floor = 1e-6);

}  // namespace qvi
