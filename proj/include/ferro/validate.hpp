#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ferro/profile.hpp"

namespace ferro {

struct PropertyVerdict {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Exact solutions, analytic energies, Legendre table, gradient/Hessian
/// consistency, wedge certificates, eigenpair residuals, half/full flow
/// agreement and randomized comparison trials. Deterministic in (n, seed).
std::vector<PropertyVerdict> run_property_suite(int n, std::uint64_t seed);

/// Smooth perturbation sum_{j=1..modes} c_j sin(j theta), c_j ~ N(0, 1/j^2);
/// vanishes at both poles.
std::vector<double> random_smooth_direction(const Grid& g, std::mt19937_64& rng,
                                            int modes = 6);

/// Ordered pair (lower <= upper) in class (1,1), both admissible flow data.
std::pair<Profile, Profile> random_ordered_pair(GridPtr g, std::mt19937_64& rng);

}  // namespace ferro
