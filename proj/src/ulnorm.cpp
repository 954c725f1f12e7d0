#include "rankeval/ulnorm.hpp"

#include <algorithm>
#include <cmath>

namespace rankeval {

namespace {

double slack(double iub) { return kBoundSlack * std::max(1.0, std::abs(iub)); }

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw BoundViolation(std::string(name) + " is not finite");
}

// Validates 0 <= a <= iub (with slack) and returns a clamped into range.
double checked_metric(double a, double iub) {
  require_finite(a, "metric value");
  require_finite(iub, "IUB");
  const double eps = slack(iub);
  if (iub < -eps) throw BoundViolation("IUB is negative");
  if (a < -eps) throw BoundViolation("metric value is negative");
  if (a > iub + eps) {
    throw BoundViolation("metric value " + std::to_string(a) + " exceeds IUB " + std::to_string(iub));
  }
  return std::clamp(a, 0.0, std::max(iub, 0.0));
}

double checked_rlb(double rlb, double iub) {
  require_finite(rlb, "RLB");
  const double eps = slack(iub);
  if (rlb < -eps) throw BoundViolation("RLB is negative");
  if (rlb > iub + eps) {
    throw BoundViolation("RLB " + std::to_string(rlb) + " exceeds IUB " + std::to_string(iub));
  }
  return std::clamp(rlb, 0.0, std::max(iub, 0.0));
}

// IUB = 0 means nothing can be gained on the query; the convention applies
// whatever the metric value.
bool zero_iub(double a, double iub) {
  require_finite(a, "metric value");
  require_finite(iub, "IUB");
  if (iub < -slack(iub)) throw BoundViolation("IUB is negative");
  return iub <= 0.0;
}

}  // namespace

std::string to_string(NormVariant variant) {
  switch (variant) {
    case NormVariant::None: return "none";
    case NormVariant::Upper: return "upper";
    case NormVariant::V1: return "v1";
    case NormVariant::V2: return "v2";
  }
  return "?";
}

NormalizedScore normalize_upper(double a, double iub) {
  if (zero_iub(a, iub)) return {0.0, NormVariant::Upper, true};
  a = checked_metric(a, iub);
  return {std::min(a / iub, 1.0), NormVariant::Upper, false};
}

NormalizedScore normalize_v1(double a, double iub, double rlb) {
  if (zero_iub(a, iub)) return {0.0, NormVariant::V1, true};
  a = checked_metric(a, iub);
  require_finite(rlb, "RLB");
  if (rlb < -slack(iub)) throw BoundViolation("RLB is negative");
  rlb = std::max(rlb, 0.0);
  if (a + rlb <= 0.0) return {0.0, NormVariant::V1, true};
  const double value = (a / iub) * (a / (a + rlb));
  return {std::clamp(value, 0.0, 1.0), NormVariant::V1, false};
}

NormalizedScore normalize_v2(double a, double iub, double rlb) {
  if (zero_iub(a, iub)) return {0.0, NormVariant::V2, true};
  a = checked_metric(a, iub);
  rlb = checked_rlb(rlb, iub);
  if (iub - rlb <= slack(iub)) return {0.0, NormVariant::V2, true};
  const double value = a >= rlb ? (a - rlb) / (iub - rlb) : (a - rlb) / rlb;
  return {std::clamp(value, -1.0, 1.0), NormVariant::V2, false};
}

NormalizedScore normalize(NormVariant variant, double a, double iub, double rlb) {
  switch (variant) {
    case NormVariant::None: return {a, NormVariant::None, false};
    case NormVariant::Upper: return normalize_upper(a, iub);
    case NormVariant::V1: return normalize_v1(a, iub, rlb);
    case NormVariant::V2: return normalize_v2(a, iub, rlb);
  }
  throw std::logic_error("unknown normalization variant");
}

}  // namespace rankeval
