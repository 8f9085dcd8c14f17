#pragma once

#include <cstdint>
#include <random>

#include "cpmarg/channels.hpp"

namespace cpmarg {

using Rng = std::mt19937_64;

/// Gaussian complex operators scaled so tr(sum K^dagger K) = 1.
KrausFamily random_family(Rng& rng, int d_in, int d_out, int r);

/// Integer operators with entries in [-max_abs, max_abs]; the weight normalizes
/// the family, so it carries a rational form. At least one entry is nonzero.
KrausFamily random_integer_family(Rng& rng, int d_in, int d_out, int r, int max_abs = 2);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(Rng& rng, int n);

}  // namespace cpmarg
