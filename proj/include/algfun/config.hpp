#pragma once

#include <stdexcept>
#include <string>

namespace algfun {

enum class Fail {
  parse = 2,
  precision_floor = 3,
  checksum = 4,
  unresolved = 5,
  numeric = 1,
};

struct Error : std::runtime_error {
  Fail kind;
  Error(Fail k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct RunConfig {
  long working_digits = 1000;
  long precision_floor = -1;  // <0: working_digits * 9/10
  long base_terms = 1024;
  long comparison_terms = 128;
  int n_zm = 15;
  double perimeter_factor = 1.0 / 3.0;
  double separation_factor = 0.1;
  int comparison_margin = 7;
  unsigned long long seed = 1;
  enum class Method { comparison, integration, both } method = Method::both;
  int threads = 0;  // 0: hardware
  long integration_digits = 40;
  long integration_digits_hi = 80;
  // residual tolerance override for effective-zero tests; <=0 keeps the
  // plain ball test
  double residual_tolerance_log10 = 1.0;  // disabled when > 0
  bool residual_tolerance_set = false;

  long floor_digits() const {
    return precision_floor >= 0 ? precision_floor : working_digits * 9 / 10;
  }
};

}  // namespace algfun
