#pragma once

#include <atomic>
#include <cstdint>

namespace rxtx {

/// Scalar multiplication / addition tallies. Safe to share between threads.
class OpCounter {
 public:
  OpCounter() = default;
  OpCounter(const OpCounter&) = delete;
  OpCounter& operator=(const OpCounter&) = delete;

  void add_mults(std::uint64_t n) { bump(mults_, n); }
  void add_adds(std::uint64_t n) { bump(adds_, n); }

  std::uint64_t mults() const { return mults_.load(std::memory_order_relaxed); }
  std::uint64_t adds() const { return adds_.load(std::memory_order_relaxed); }
  std::uint64_t total() const { return mults() + adds(); }

  void reset() {
    mults_.store(0);
    adds_.store(0);
  }

 private:
  static void bump(std::atomic<std::uint64_t>& c, std::uint64_t n);

  std::atomic<std::uint64_t> mults_{0};
  std::atomic<std::uint64_t> adds_{0};
};

// Null-tolerant helpers so kernels can take an optional counter.
inline void count_mults(OpCounter* c, std::uint64_t n) {
  if (c != nullptr && n != 0) c->add_mults(n);
}
inline void count_adds(OpCounter* c, std::uint64_t n) {
  if (c != nullptr && n != 0) c->add_adds(n);
}

}  // namespace rxtx
