#include "streampack/kernels.hpp"

#include <cassert>
#include <limits>

namespace streampack::kernels::scalar {

void add(std::span<double> acc, std::span<const double> x) {
  assert(acc.size() == x.size());
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += x[i];
}

void sub(std::span<double> acc, std::span<const double> x) {
  assert(acc.size() == x.size());
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] -= x[i];
}

void axpy(std::span<double> y, double alpha, std::span<const double> x) {
  assert(y.size() == x.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

double max_sum(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double v = a[i] + b[i];
    if (v > best) best = v;
  }
  return best;
}

double max_elem(std::span<const double> a) {
  double best = -std::numeric_limits<double>::infinity();
  for (double v : a)
    if (v > best) best = v;
  return best;
}

// Four interleaved partial sums, the same association order the AVX2 path uses
// for its lanes, so both paths agree up to the final horizontal reduction.
double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4)
    for (std::size_t l = 0; l < 4; ++l) s[l] += a[i + l] * b[i + l];
  double tail = 0.0;
  for (; i < a.size(); ++i) tail += a[i] * b[i];
  return ((s[0] + s[2]) + (s[1] + s[3])) + tail;
}

double sum(std::span<const double> a) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4)
    for (std::size_t l = 0; l < 4; ++l) s[l] += a[i + l];
  double tail = 0.0;
  for (; i < a.size(); ++i) tail += a[i];
  return ((s[0] + s[2]) + (s[1] + s[3])) + tail;
}

}  // namespace streampack::kernels::scalar
