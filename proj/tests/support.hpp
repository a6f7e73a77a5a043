#pragma once

#include <cmath>

#include "memchan/numerics.hpp"

namespace memchan::test {

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Pins the dimension cap for the lifetime of a test and restores the previous value.
class CapGuard {
 public:
  explicit CapGuard(std::size_t cap) : saved_(dimension_cap()) { set_dimension_cap(cap); }
  ~CapGuard() { set_dimension_cap(saved_); }
  CapGuard(const CapGuard&) = delete;
  CapGuard& operator=(const CapGuard&) = delete;

 private:
  std::size_t saved_;
};

}  // namespace memchan::test
