#include "streampack/streams.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "streampack/error.hpp"
#include "streampack/estimator.hpp"
#include "streampack/vsched.hpp"

namespace streampack {

namespace {

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_number(std::string_view field, std::size_t line) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError(line, "not a decimal number: '" + std::string(field) + "'");
  if (!std::isfinite(x)) throw ParseError(line, "value is not finite");
  return x;
}

void check_domain(double x, ScalarDomain domain, std::size_t line) {
  switch (domain) {
    case ScalarDomain::Any:
      return;
    case ScalarDomain::Positive:
      if (!(x > 0.0)) throw ParseError(line, "value must be positive");
      return;
    case ScalarDomain::UnitInterval:
      if (!(x > 0.0 && x <= 1.0)) throw ParseError(line, "item size must lie in (0, 1]");
      return;
  }
}

}  // namespace

std::vector<double> parse_scalar_stream(std::istream& in, ScalarDomain domain) {
  std::vector<double> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (is_blank(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 1) throw ParseError(no, "expected one value, got " + std::to_string(fields.size()));
    const double x = parse_number(fields.front(), no);
    check_domain(x, domain, no);
    out.push_back(x);
  }
  return out;
}

std::vector<double> parse_scalar_stream(std::string_view text, ScalarDomain domain) {
  std::istringstream in{std::string(text)};
  return parse_scalar_stream(in, domain);
}

std::vector<VectorItem> parse_vector_stream(std::istream& in, std::optional<std::size_t> d) {
  std::vector<VectorItem> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (is_blank(line)) continue;
    const auto fields = split_fields(line);
    if (!d) d = fields.size();
    if (fields.size() != *d)
      throw ParseError(no, "expected " + std::to_string(*d) + " coordinates, got " + std::to_string(fields.size()));
    VectorItem v;
    v.reserve(fields.size());
    for (auto f : fields) v.push_back(parse_number(f, no));
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<VectorItem> parse_vector_stream(std::string_view text, std::optional<std::size_t> d) {
  std::istringstream in{std::string(text)};
  return parse_vector_stream(in, d);
}

std::string format_decimal(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void write_scalar_stream(std::ostream& out, const std::vector<double>& values) {
  for (double x : values) out << format_decimal(x) << '\n';
}

void write_vector_stream(std::ostream& out, const std::vector<VectorItem>& items) {
  for (const auto& v : items) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << format_decimal(v[i]);
    out << '\n';
  }
}

std::string_view kind_name(StreamKind k) noexcept {
  switch (k) {
    case StreamKind::Uniform: return "uniform";
    case StreamKind::Clustered: return "clustered";
    case StreamKind::SortedAdversarial: return "sorted-adversarial";
    case StreamKind::TightVsched: return "tight-vsched";
    case StreamKind::RankReduction: return "rank-reduction";
  }
  return "unknown";
}

StreamKind parse_kind(std::string_view name) {
  for (auto k : {StreamKind::Uniform, StreamKind::Clustered, StreamKind::SortedAdversarial, StreamKind::TightVsched,
                 StreamKind::RankReduction})
    if (kind_name(k) == name) return k;
  throw ConfigError("unknown stream kind '" + std::string(name) + "'");
}

Ordering parse_ordering(std::string_view name) {
  if (name == "ascending") return Ordering::Ascending;
  if (name == "descending") return Ordering::Descending;
  if (name == "zigzag") return Ordering::Zigzag;
  throw ConfigError("unknown ordering '" + std::string(name) + "'");
}

double unit_draw(std::uint64_t bits) noexcept { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

namespace {

void check_range(const GenParams& p) {
  if (!(p.lo < p.hi) || !std::isfinite(p.lo) || !std::isfinite(p.hi)) throw ConfigError("need lo < hi");
  if (p.d == 0) throw ConfigError("d must be at least 1");
}

// Uniform in (lo, hi].
double draw(std::mt19937_64& rng, double lo, double hi) {
  const double x = lo + (hi - lo) * (1.0 - unit_draw(rng()));
  return std::clamp(x, std::nextafter(lo, hi), hi);
}

std::vector<VectorItem> uniform_rows(const GenParams& p, std::mt19937_64& rng) {
  std::vector<VectorItem> rows(p.n, VectorItem(p.d));
  for (auto& r : rows)
    for (double& x : r) x = draw(rng, p.lo, p.hi);
  return rows;
}

std::vector<VectorItem> clustered_rows(const GenParams& p, std::mt19937_64& rng) {
  if (p.clusters == 0) throw ConfigError("clusters must be at least 1");
  if (!(p.spread >= 0.0)) throw ConfigError("spread must be non-negative");
  std::vector<VectorItem> centers(p.clusters, VectorItem(p.d));
  for (auto& c : centers)
    for (double& x : c) x = draw(rng, p.lo, p.hi);
  const double width = p.spread * (p.hi - p.lo);
  std::vector<VectorItem> rows(p.n, VectorItem(p.d));
  for (auto& r : rows) {
    const auto& c = centers[rng() % p.clusters];
    for (std::size_t i = 0; i < p.d; ++i) {
      const double x = c[i] + width * (2.0 * unit_draw(rng()) - 1.0);
      r[i] = std::clamp(x, std::nextafter(p.lo, p.hi), p.hi);
    }
  }
  return rows;
}

double row_key(const VectorItem& v) { return *std::max_element(v.begin(), v.end()); }

void apply_ordering(std::vector<VectorItem>& rows, Ordering order) {
  std::stable_sort(rows.begin(), rows.end(), [](const VectorItem& a, const VectorItem& b) { return row_key(a) < row_key(b); });
  if (order == Ordering::Descending) std::reverse(rows.begin(), rows.end());
  if (order == Ordering::Zigzag) {
    std::vector<VectorItem> out;
    out.reserve(rows.size());
    std::size_t lo = 0, hi = rows.size();
    while (lo < hi) {
      out.push_back(rows[--hi]);
      if (lo < hi) out.push_back(rows[lo++]);
    }
    rows = std::move(out);
  }
}

}  // namespace

std::string generate(StreamKind kind, const GenParams& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::ostringstream out;
  switch (kind) {
    case StreamKind::Uniform:
      check_range(params);
      write_vector_stream(out, uniform_rows(params, rng));
      break;
    case StreamKind::Clustered:
      check_range(params);
      write_vector_stream(out, clustered_rows(params, rng));
      break;
    case StreamKind::SortedAdversarial: {
      check_range(params);
      auto rows = uniform_rows(params, rng);
      apply_ordering(rows, params.order);
      write_vector_stream(out, rows);
      break;
    }
    case StreamKind::TightVsched:
      write_vector_stream(out, tight_example(params.machines, params.gamma));
      break;
    case StreamKind::RankReduction:
      try {
        write_scalar_stream(out, rank_reduction_stream(params.values, params.q));
      } catch (const InputError& e) {
        throw ConfigError(e.what());
      }
      break;
  }
  return out.str();
}

}  // namespace streampack
