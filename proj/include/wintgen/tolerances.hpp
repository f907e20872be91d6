#pragma once

namespace wintgen {

// Numerical thresholds shared across modules. Defaults leave double-precision
// headroom below the 1e-6 level used by the downstream certificates.
struct Tolerances {
  double null = 1e-9;      // |<v,v>| <= null * |v|_E^2 counts as lightlike
  double frame = 1e-8;     // pseudo-orthonormality of frames
  double rank = 1e-10;     // smallest/largest singular value ratio
  double sphere = 1e-9;    // | |f| - 1 | for chart values
  double ddvv = 1e-7;      // DDVV deficit slack
  double umbilic = 1e-10;  // rho^2 below this flags an umbilic point
  double immersion = 1e-7; // min singular value of df for a regular point
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace wintgen
