#pragma once

namespace hopsim {

// Discrete filtered derivative, backward-Euler realization of
// lambda*s / (s + lambda) at fixed period T:
//   y_k = (y_{k-1} + lambda * (x_k - x_{k-1})) / (1 + lambda*T)
class FilteredDerivative {
 public:
  FilteredDerivative() = default;
  FilteredDerivative(double lambda, double period) : lambda_(lambda), period_(period) {}

  void reset(double x0) {
    prev_input_ = x0;
    output_ = 0.0;
    primed_ = true;
  }

  double update(double x) {
    if (!primed_) reset(x);
    output_ = (output_ + lambda_ * (x - prev_input_)) / (1.0 + lambda_ * period_);
    prev_input_ = x;
    return output_;
  }

  double value() const { return output_; }
  double pole() const { return 1.0 / (1.0 + lambda_ * period_); }

 private:
  double lambda_ = 10.0;
  double period_ = 1e-3;
  double prev_input_ = 0.0;
  double output_ = 0.0;
  bool primed_ = false;
};

}  // namespace hopsim
