#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "core/grid.hpp"

namespace loglab {

// Resource density m on [0,1].  All factories produce C^1 profiles; sampled
// profiles interpolate supplied (x, m, m') triples with cubic Hermite pieces
// so the classifier can trust derivative() everywhere.
class ResourceProfile {
public:
  static ResourceProfile constant(double c);
  static ResourceProfile linear(double a, double b);        // a + b x
  static ResourceProfile shifted_ramp(double s);            // x - s
  static ResourceProfile sine_offset(double c, double a);   // c + a sin(2 pi x)
  static ResourceProfile cosine_offset(double c, double a); // c + a cos(pi x)
  static ResourceProfile single_peak(double c, double a);   // c + a sin(pi x)
  static ResourceProfile sampled(std::vector<double> xs, std::vector<double> ms,
                                 std::vector<double> dms);
  // base + t * bump, used by the parameter hunts.
  static ResourceProfile blend(ResourceProfile base, ResourceProfile bump,
                               double t);

  double value(double x) const;
  double derivative(double x) const;
  const std::string& describe() const noexcept { return description_; }

  Field sample_values(const Grid& g) const;
  Field sample_derivatives(const Grid& g) const;

private:
  ResourceProfile(std::function<double(double)> f,
                  std::function<double(double)> df, std::string description);

  std::function<double(double)> f_, df_;
  std::string description_;
};

// Structural facts about m that decide which statements apply to it.
//   m0: C^1, non-constant, nonnegative mean
//   m1: strictly positive with max <= 2 * min
//   m2: positive part monotone (direction +1 rising, -1 falling, 0 constant)
//   m3: single interior peak, derivative positive before it, negative after
struct ConditionReport {
  double mean = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  bool non_constant = false;
  bool m0 = false;
  bool m1 = false;
  bool m2 = false;
  int m2_direction = 0;
  bool m3 = false;
  double m3_peak = 0.0;  // meaningful only when m3 holds
  std::string m1_witness;
  std::string m2_witness;
  std::string m3_witness;
};

ConditionReport classify_conditions(const ResourceProfile& m,
                                    std::size_t samples = 513);

}  // namespace loglab
