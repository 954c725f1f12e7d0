#pragma once

#include <stdexcept>
#include <string>

namespace rankeval {

enum class NormVariant {
  None,   ///< raw metric value
  Upper,  ///< A / IUB
  V1,     ///< (A / IUB) * (A / (A + RLB)), range [0, 1]
  V2,     ///< piecewise around RLB, range [-1, 1]
};

std::string to_string(NormVariant variant);

struct NormalizedScore {
  double value = 0.0;
  NormVariant variant = NormVariant::None;
  /// A division-by-zero convention produced the value.
  bool degenerate = false;
};

/// Bound inputs inconsistent beyond floating-point slack. Indicates a bug in
/// the caller's bounds.
class BoundViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Relative slack: values within kBoundSlack * max(1, iub) of a bound are
/// clamped onto it instead of rejected.
inline constexpr double kBoundSlack = 1e-9;

NormalizedScore normalize_upper(double a, double iub);
NormalizedScore normalize_v1(double a, double iub, double rlb);
/// (A - RLB) / (IUB - RLB) when A >= RLB, else (A - RLB) / RLB.
/// IUB == RLB (within slack) yields 0, flagged degenerate.
NormalizedScore normalize_v2(double a, double iub, double rlb);

NormalizedScore normalize(NormVariant variant, double a, double iub, double rlb);

}  // namespace rankeval
