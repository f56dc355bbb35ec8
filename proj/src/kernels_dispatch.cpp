#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "rbcom/kernels/kernels.hpp"

namespace rbcom::kernels {

#ifdef RBCOM_HAVE_AVX2
const Backend& avx2_backend_impl();
#endif

bool avx2_supported() {
#ifdef RBCOM_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Backend* pick(std::string_view name) {
  if (name == "scalar") {
    return &scalar_backend();
  }
  if (name == "avx2") {
#ifdef RBCOM_HAVE_AVX2
    if (avx2_supported()) {
      return &avx2_backend_impl();
    }
#endif
    throw std::runtime_error("kernels: avx2 backend not available on this host");
  }
  throw std::runtime_error("kernels: unknown backend '" + std::string(name) + "'");
}

const Backend* initial_backend() {
  if (const char* env = std::getenv("RBCOM_KERNELS")) {
    return pick(env);
  }
#ifdef RBCOM_HAVE_AVX2
  if (avx2_supported()) {
    return &avx2_backend_impl();
  }
#endif
  return &scalar_backend();
}

std::atomic<const Backend*>& slot() {
  static std::atomic<const Backend*> s{initial_backend()};
  return s;
}

}  // namespace

const Backend& active_backend() { return *slot().load(std::memory_order_relaxed); }

void set_backend(std::string_view name) { slot().store(pick(name), std::memory_order_relaxed); }

}  // namespace rbcom::kernels
