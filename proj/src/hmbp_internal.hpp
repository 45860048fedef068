#pragma once

#include <vector>

#include "streampack/hmbp.hpp"

namespace streampack::detail {

/// Merge identical patterns, drop empty ones and refresh fill levels.
PackingSolution canonicalize(const RoundedInstance& inst, std::vector<PatternUse> uses);

/// FFD on an arbitrary residual multiset (counts indexed like inst.entries).
PackingSolution ffd_counts(const RoundedInstance& inst, const std::vector<std::int64_t>& counts);

}  // namespace streampack::detail
