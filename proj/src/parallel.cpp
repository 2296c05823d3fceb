#include "wigner_lab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace wigner_lab {
namespace {

std::size_t default_threads() {
  if (const char* env = std::getenv("WIGNER_LAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::atomic<std::size_t>& configured() {
  static std::atomic<std::size_t> n{default_threads()};
  return n;
}

}  // namespace

std::size_t thread_count() { return configured().load(); }

void set_thread_count(std::size_t n) { configured().store(n == 0 ? default_threads() : n); }

}  // namespace wigner_lab
