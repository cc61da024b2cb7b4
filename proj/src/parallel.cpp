#include "rrl/parallel.hpp"

#include <atomic>

namespace rrl {

namespace {
std::atomic<unsigned> g_thread_cap{0};
}

void set_thread_cap(unsigned cap) { g_thread_cap.store(cap); }

unsigned thread_cap() {
  unsigned cap = g_thread_cap.load();
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return cap == 0 ? hw : std::min(cap, hw);
}

}  // namespace rrl
