#pragma once

#include <cmath>

namespace shearcount {

/*!
  Neumaier's variant of Kahan summation.

  Unlike plain Kahan it stays accurate when an addend is larger in magnitude
  than the running sum, which happens when signed remainders are accumulated.
*/
template <typename Scalar>
class CompensatedSum {
public:
  CompensatedSum& operator+=(Scalar value) {
    const Scalar t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value))
      compensation_ += (sum_ - t) + value;
    else
      compensation_ += (value - t) + sum_;
    sum_ = t;
    ++terms_;
    return *this;
  }

  Scalar value() const { return sum_ + compensation_; }
  long long terms() const { return terms_; }

private:
  Scalar sum_ = Scalar(0);
  Scalar compensation_ = Scalar(0);
  long long terms_ = 0;
};

}  // namespace shearcount
