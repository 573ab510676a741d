#include "ffvc/parallel.hpp"

namespace ffvc {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) noexcept { g_threads.store(n); }

unsigned thread_count() noexcept {
  const unsigned n = g_threads.load();
  if (n != 0) return n;
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace ffvc
