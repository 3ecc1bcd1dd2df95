#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cct {

/// Dense point identifier: every point set numbers its points 0..n-1.
using PointId = std::int32_t;

inline constexpr PointId kNoParent = -1;

/// Base class for all errors thrown by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad files, invalid parameters, duplicate points.
struct invalid_input : error {
    using error::error;
};

/// An internal oracle check failed while verification mode was enabled.
struct verification_error : error {
    using error::error;
};

/// Exact power of two, valid for any tree level that fits a double's exponent.
inline double pow2(int e) noexcept { return std::ldexp(1.0, e); }

/// Largest integer l with 2^l strictly below d.  Requires d > 0 and finite.
inline int level_below(double d) {
    int e = 0;
    const double f = std::frexp(d, &e);  // d == f * 2^e, f in [0.5, 1)
    return f == 0.5 ? e - 2 : e - 1;
}

/// Thread-safe counter for metric evaluations.
class DistanceCounter {
  public:
    void add(std::uint64_t k = 1) noexcept { n_.fetch_add(k, std::memory_order_relaxed); }
    std::uint64_t count() const noexcept { return n_.load(std::memory_order_relaxed); }
    void reset() noexcept { n_.store(0, std::memory_order_relaxed); }

  private:
    std::atomic<std::uint64_t> n_{0};
};

}  // namespace cct
