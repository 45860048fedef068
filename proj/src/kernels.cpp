#include "streampack/kernels.hpp"

#include <atomic>

#include "streampack/error.hpp"

namespace streampack::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(STREAMPACK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() noexcept { return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar; }

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

bool isa_supported(Isa isa) noexcept { return isa == Isa::Scalar || cpu_has_avx2(); }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) throw ConfigError("instruction set not supported on this CPU");
  current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

#if defined(STREAMPACK_HAVE_AVX2)
#define STREAMPACK_DISPATCH(fn, ...) \
  return active_isa() == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define STREAMPACK_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void add(std::span<double> acc, std::span<const double> x) { STREAMPACK_DISPATCH(add, acc, x); }
void sub(std::span<double> acc, std::span<const double> x) { STREAMPACK_DISPATCH(sub, acc, x); }
void axpy(std::span<double> y, double alpha, std::span<const double> x) {
  STREAMPACK_DISPATCH(axpy, y, alpha, x);
}
double max_sum(std::span<const double> a, std::span<const double> b) {
  STREAMPACK_DISPATCH(max_sum, a, b);
}
double max_elem(std::span<const double> a) { STREAMPACK_DISPATCH(max_elem, a); }
double dot(std::span<const double> a, std::span<const double> b) { STREAMPACK_DISPATCH(dot, a, b); }
double sum(std::span<const double> a) { STREAMPACK_DISPATCH(sum, a); }

#undef STREAMPACK_DISPATCH

}  // namespace streampack::kernels
