#pragma once

#include <span>
#include <string_view>

// Dense double-precision loops shared by the schedulers, the packing oracles
// and the simplex. Each kernel has a scalar reference implementation and an
// AVX2 variant; the variant is picked once at startup from CPUID and can be
// overridden for equivalence testing.

namespace streampack::kernels {

enum class Isa { Scalar, Avx2 };

Isa active_isa() noexcept;
bool isa_supported(Isa isa) noexcept;
/// Throws ConfigError when the CPU lacks the requested instruction set.
void force_isa(Isa isa);
std::string_view isa_name(Isa isa) noexcept;

// acc[i] += x[i]
void add(std::span<double> acc, std::span<const double> x);
// acc[i] -= x[i]
void sub(std::span<double> acc, std::span<const double> x);
// y[i] += alpha * x[i]  (no fused multiply-add, results match the scalar path bit for bit)
void axpy(std::span<double> y, double alpha, std::span<const double> x);
// max_i (a[i] + b[i]); -inf for empty input
double max_sum(std::span<const double> a, std::span<const double> b);
// max_i a[i]; -inf for empty input
double max_elem(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);

// Direct access to each implementation, used by the equivalence tests.
namespace scalar {
void add(std::span<double> acc, std::span<const double> x);
void sub(std::span<double> acc, std::span<const double> x);
void axpy(std::span<double> y, double alpha, std::span<const double> x);
double max_sum(std::span<const double> a, std::span<const double> b);
double max_elem(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
}  // namespace scalar

namespace avx2 {
void add(std::span<double> acc, std::span<const double> x);
void sub(std::span<double> acc, std::span<const double> x);
void axpy(std::span<double> y, double alpha, std::span<const double> x);
double max_sum(std::span<const double> a, std::span<const double> b);
double max_elem(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
}  // namespace avx2

}  // namespace streampack::kernels
