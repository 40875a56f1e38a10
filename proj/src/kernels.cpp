#include "fanno/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace fanno::simd {

namespace {

const Kernels kScalar{Isa::Scalar,
                      detail::source_term_scalar,
                      detail::transport_rhs_scalar,
                      detail::euler_update_scalar,
                      detail::heun_average_scalar,
                      detail::char_bounds_scalar};

#if defined(FANNO_HAVE_AVX2)
const Kernels kAvx2{Isa::Avx2,
                    detail::source_term_avx2,
                    detail::transport_rhs_avx2,
                    detail::euler_update_avx2,
                    detail::heun_average_avx2,
                    detail::char_bounds_avx2};
#endif

bool cpu_has_avx2() {
#if defined(FANNO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Kernels* best_available() {
#if defined(FANNO_HAVE_AVX2)
  if (cpu_has_avx2()) return &kAvx2;
#endif
  return &kScalar;
}

const Kernels* initial_selection() {
  const char* env = std::getenv("FANNO_SIMD");
  if (env != nullptr) {
    const std::string v(env);
    if (v == "scalar") return &kScalar;
#if defined(FANNO_HAVE_AVX2)
    if (v == "avx2" && cpu_has_avx2()) return &kAvx2;
#endif
  }
  return best_available();
}

std::atomic<const Kernels*>& selection() {
  static std::atomic<const Kernels*> current{initial_selection()};
  return current;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

const Kernels& scalar_kernels() { return kScalar; }

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
  if (cpu_has_avx2()) out.push_back(Isa::Avx2);
  return out;
}

const Kernels& kernels_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return kScalar;
    case Isa::Avx2:
#if defined(FANNO_HAVE_AVX2)
      if (cpu_has_avx2()) return kAvx2;
#endif
      break;
  }
  throw std::invalid_argument("kernel variant not available on this CPU: " +
                              std::string(to_string(isa)));
}

const Kernels& active_kernels() { return *selection().load(std::memory_order_acquire); }

void select_isa(Isa isa) { selection().store(&kernels_for(isa), std::memory_order_release); }

}  // namespace fanno::simd
