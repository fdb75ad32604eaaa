#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

// Blocked reductions used by every quadrature and sampling loop in the library.
//
// Work is split into fixed-size blocks; each block is reduced serially in index
// order and the per-block results are combined serially in block order. The
// OpenMP path only parallelizes *across* blocks, so the floating-point
// association is identical to the serial path and results are bit-for-bit
// reproducible for any thread count. The *_serial twins run the same blocking
// on one thread; tests assert bitwise equality and tools/bench compares speed.
//
// An exception escaping an OpenMP region terminates the process, so the
// parallel paths capture the first exception a block throws and rethrow it
// after the region ends.

namespace qc::par {

namespace detail {

// Captures the first exception thrown by any block of a parallel region.
class ExceptionBox {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      if (!armed_.test_and_set()) ptr_ = std::current_exception();
    }
  }
  void rethrow_if_set() const {
    if (ptr_) std::rethrow_exception(ptr_);
  }

 private:
  std::atomic_flag armed_ = ATOMIC_FLAG_INIT;
  std::exception_ptr ptr_;
};

}  // namespace detail

inline constexpr std::size_t kBlock = 1024;

// Stateless mixer for deriving independent per-block RNG seeds from a user
// seed; sampling loops seed block b with splitmix64(seed ^ (b+1)) so results
// do not depend on how blocks are scheduled across threads.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace detail {

template <class F>
double sum_block(std::size_t lo, std::size_t hi, const F& f) {
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += f(i);
  return s;
}

}  // namespace detail

template <class F>
double block_sum_serial(std::size_t n, const F& f) {
  const std::size_t nb = (n + kBlock - 1) / kBlock;
  double total = 0.0;
  for (std::size_t b = 0; b < nb; ++b)
    total += detail::sum_block(b * kBlock, std::min(n, (b + 1) * kBlock), f);
  return total;
}

template <class F>
double block_sum(std::size_t n, const F& f) {
  const std::size_t nb = (n + kBlock - 1) / kBlock;
  if (nb <= 1) return block_sum_serial(n, f);
  std::vector<double> partial(nb);
  detail::ExceptionBox box;
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nb); ++b) {
    box.run([&, b] {
      const auto ub = static_cast<std::size_t>(b);
      partial[ub] = detail::sum_block(ub * kBlock, std::min(n, (ub + 1) * kBlock), f);
    });
  }
  box.rethrow_if_set();
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

template <class F>
double block_max_serial(std::size_t n, const F& f) {
  double m = -1.0 / 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, f(i));
  return m;
}

template <class F>
double block_max(std::size_t n, const F& f) {
  const std::size_t nb = (n + kBlock - 1) / kBlock;
  if (nb <= 1) return block_max_serial(n, f);
  std::vector<double> partial(nb, -1.0 / 0.0);
  detail::ExceptionBox box;
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nb); ++b) {
    box.run([&, b] {
      const auto ub = static_cast<std::size_t>(b);
      const std::size_t hi = std::min(n, (ub + 1) * kBlock);
      double m = -1.0 / 0.0;
      for (std::size_t i = ub * kBlock; i < hi; ++i) m = std::max(m, f(i));
      partial[ub] = m;
    });
  }
  box.rethrow_if_set();
  double m = -1.0 / 0.0;
  for (double p : partial) m = std::max(m, p);
  return m;
}

// Parallel element-wise fill of a preallocated range: out[i] = f(i).
template <class F>
void block_apply(std::size_t n, double* out, const F& f) {
  detail::ExceptionBox box;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    box.run([&, i] { out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i)); });
  }
  box.rethrow_if_set();
}

template <class F>
void block_apply_serial(std::size_t n, double* out, const F& f) {
  for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
}

}  // namespace qc::par
