#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "streampack/vector_item.hpp"

namespace streampack {

enum class ScalarDomain {
  Any,          ///< any finite value
  Positive,     ///< (0, inf)
  UnitInterval  ///< (0, 1], bin packing item sizes
};

/// One decimal per line, blank lines skipped. ParseError carries the 1-based line.
std::vector<double> parse_scalar_stream(std::istream& in, ScalarDomain domain = ScalarDomain::Any);
std::vector<double> parse_scalar_stream(std::string_view text, ScalarDomain domain = ScalarDomain::Any);

/// One job per line, whitespace-separated decimals. With no d, the first
/// non-blank line fixes the dimension.
std::vector<VectorItem> parse_vector_stream(std::istream& in, std::optional<std::size_t> d = std::nullopt);
std::vector<VectorItem> parse_vector_stream(std::string_view text, std::optional<std::size_t> d = std::nullopt);

/// Shortest decimal that parses back to exactly x.
std::string format_decimal(double x);

void write_scalar_stream(std::ostream& out, const std::vector<double>& values);
void write_vector_stream(std::ostream& out, const std::vector<VectorItem>& items);

enum class StreamKind { Uniform, Clustered, SortedAdversarial, TightVsched, RankReduction };

std::string_view kind_name(StreamKind k) noexcept;
/// Throws ConfigError for unknown names.
StreamKind parse_kind(std::string_view name);

enum class Ordering { Ascending, Descending, Zigzag };
Ordering parse_ordering(std::string_view name);

struct GenParams {
  std::size_t n = 0;
  /// Values are drawn from (lo, hi].
  double lo = 0.0;
  double hi = 1.0;
  /// Coordinates per line for uniform, clustered and sorted-adversarial.
  std::size_t d = 1;
  std::size_t clusters = 4;
  /// Half-width of each cluster, relative to hi - lo.
  double spread = 0.02;
  Ordering order = Ordering::Descending;
  std::size_t machines = 2;
  double gamma = 0.25;
  std::vector<double> values;
  double q = 0.6;
};

/// Stream text for the given kind; identical arguments give identical bytes.
std::string generate(StreamKind kind, const GenParams& params, std::uint64_t seed);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double unit_draw(std::uint64_t bits) noexcept;

}  // namespace streampack
