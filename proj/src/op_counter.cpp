#include "rxtx/op_counter.hpp"

#include "rxtx/exact_int.hpp"

namespace rxtx {

void OpCounter::bump(std::atomic<std::uint64_t>& c, std::uint64_t n) {
  std::uint64_t cur = c.load(std::memory_order_relaxed);
  std::uint64_t next;
  do {
    if (__builtin_add_overflow(cur, n, &next)) throw OverflowError("OpCounter overflow");
  } while (!c.compare_exchange_weak(cur, next, std::memory_order_relaxed));
}

}  // namespace rxtx
