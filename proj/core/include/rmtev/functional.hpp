#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rmtev/model.hpp"

namespace rmtev {

// Test function g for linear spectral statistics: a polynomial
// c0 + c1 x + ... + cd x^d, or the natural logarithm. Text form is
// "poly:c0,c1,..." or "log".
class FunctionalSpec {
 public:
  enum class Kind { poly, log };

  static FunctionalSpec poly(std::vector<double> coefficients);
  static FunctionalSpec log();
  static FunctionalSpec parse(std::string_view text);

  Kind kind() const { return kind_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  double operator()(double x) const;
  cplx operator()(cplx z) const;

  // Analytic on a neighbourhood of [lo, hi]? A log needs lo > 0.
  bool admissible_on(double lo) const { return kind_ == Kind::poly || lo > 0.0; }

  std::string to_string() const;

  bool operator==(const FunctionalSpec&) const = default;

 private:
  Kind kind_ = Kind::poly;
  std::vector<double> coefficients_;
};

}  // namespace rmtev
