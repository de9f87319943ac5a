#include "chaosbound/parallel.hpp"

#include <atomic>

namespace chaosbound {

namespace {
std::atomic<unsigned> g_workers{0};
}

void set_worker_count(unsigned n) { g_workers.store(n); }

unsigned worker_count() {
    const unsigned n = g_workers.load();
    if (n != 0) return n;
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace chaosbound
