#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace rxtx {

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// 64-bit integer whose arithmetic throws OverflowError instead of wrapping.
class ExactInt {
 public:
  constexpr ExactInt() = default;
  constexpr ExactInt(std::int64_t v) : value_(v) {}  // NOLINT(implicit)

  constexpr std::int64_t value() const { return value_; }

  friend ExactInt operator+(ExactInt a, ExactInt b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.value_, b.value_, &r)) throw OverflowError("ExactInt: addition overflow");
    return ExactInt(r);
  }
  friend ExactInt operator-(ExactInt a, ExactInt b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.value_, b.value_, &r)) throw OverflowError("ExactInt: subtraction overflow");
    return ExactInt(r);
  }
  friend ExactInt operator*(ExactInt a, ExactInt b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.value_, b.value_, &r)) throw OverflowError("ExactInt: multiplication overflow");
    return ExactInt(r);
  }
  ExactInt operator-() const { return ExactInt(0) - *this; }

  ExactInt& operator+=(ExactInt o) { return *this = *this + o; }
  ExactInt& operator-=(ExactInt o) { return *this = *this - o; }
  ExactInt& operator*=(ExactInt o) { return *this = *this * o; }

  friend constexpr bool operator==(ExactInt, ExactInt) = default;
  friend constexpr auto operator<=>(ExactInt, ExactInt) = default;

  friend std::ostream& operator<<(std::ostream& os, ExactInt v) { return os << v.value_; }

 private:
  std::int64_t value_ = 0;
};

}  // namespace rxtx
