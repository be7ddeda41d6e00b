#include "dt4/parallel.hpp"

namespace dt4 {

namespace {

std::atomic<unsigned>& workers()
{
    static std::atomic<unsigned> w{std::max(1u, std::thread::hardware_concurrency())};
    return w;
}

}  // namespace

void set_worker_count(unsigned n) { workers() = std::max(1u, n); }

unsigned worker_count() { return workers(); }

}  // namespace dt4
