#pragma once

#include <span>
#include <vector>

namespace streampack {

/// A d-dimensional job or item, coordinates in [0, 1] for packing inputs.
using VectorItem = std::vector<double>;

/// l-infinity norm (0 for the empty vector).
double linf_norm(std::span<const double> v) noexcept;

/// Index of the largest coordinate, lowest index on ties.
std::size_t argmax_coordinate(std::span<const double> v) noexcept;

/// Throws InputError unless v has exactly d coordinates in [0, 1].
void check_unit_vector(std::span<const double> v, std::size_t d);

}  // namespace streampack
