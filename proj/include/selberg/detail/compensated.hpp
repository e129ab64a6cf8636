#pragma once

#include <cmath>

namespace selberg::detail {

// Neumaier summation; error stays O(eps * sum |terms|) independent of count.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    abs_ += std::abs(x);
  }
  T value() const { return sum_ + comp_; }
  // Sum of |terms|, the scale of the rounding error.
  auto magnitude() const { return abs_; }

 private:
  T sum_{};
  T comp_{};
  decltype(std::abs(T{})) abs_{};
};

}  // namespace selberg::detail
