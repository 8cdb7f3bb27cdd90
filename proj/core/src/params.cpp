#include "diracwalk/params.hpp"

#include <cmath>

#include "diracwalk/linalg.hpp"

namespace diracwalk {

void ModelParams::validate(bool allow_alpha1) const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be positive and finite");
  }
  if (!(mass >= 0.0) || !std::isfinite(mass)) {
    throw InvalidArgument("mass must be nonnegative and finite");
  }
  if (!std::isfinite(wilson_r)) throw InvalidArgument("wilson_r must be finite");
  if (variant == Variant::wilson) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidArgument("rho must be positive");
    if (lambda == WilsonAxis::alpha1 && !allow_alpha1) {
      throw InvalidArgument(
          "lambda = 1 is not allowed: the unitarity constraint B^dag V = V^dag B requires "
          "lambda != 1");
    }
  }
}

std::vector<std::string> param_warnings(const ModelParams& p) {
  std::vector<std::string> out;
  if (p.variant != Variant::wilson) return out;
  if (p.rho >= 1.0) out.emplace_back(kDoublingWarning);
  if (p.rho <= 0.5) out.emplace_back(kSlowSlopeWarning);
  return out;
}

int to_int(WilsonAxis axis) { return static_cast<int>(axis); }

WilsonAxis wilson_axis_from_int(int value) {
  switch (value) {
    case 0:
      return WilsonAxis::alpha0;
    case 1:
      return WilsonAxis::alpha1;
    case 2:
      return WilsonAxis::alpha2;
    default:
      throw InvalidArgument("lambda must be 0 or 2 (got " + std::to_string(value) + ")");
  }
}

std::string to_string(Variant v) { return v == Variant::wilson ? "wilson" : "massive_q0"; }

Variant variant_from_string(std::string_view s) {
  if (s == "wilson") return Variant::wilson;
  if (s == "massive_q0") return Variant::massive_q0;
  throw InvalidArgument("variant must be 'wilson' or 'massive_q0' (got '" + std::string(s) + "')");
}

}  // namespace diracwalk
