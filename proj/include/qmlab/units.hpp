#pragma once

#include <cmath>
#include <numbers>

#include "qmlab/error.hpp"

namespace qmlab {

/// Scale of c and hbar. Everything defaults to natural units (c = hbar = 1).
template <typename Scalar = double>
struct UnitSystem {
  Scalar c{1};
  Scalar hbar{1};

  Scalar h() const { return Scalar(2) * std::numbers::pi_v<Scalar> * hbar; }

  void validate() const {
    if (!(c > Scalar(0)) || !(hbar > Scalar(0)) || !std::isfinite(double(c)) ||
        !std::isfinite(double(hbar))) {
      throw Error(ErrorKind::InvalidConfig, "unit scales c and hbar must be finite and positive");
    }
  }
};

using Units = UnitSystem<double>;

template <typename Scalar>
Scalar lorentz_gamma(Scalar beta) {
  if (!(std::abs(beta) < Scalar(1))) {
    throw Error(ErrorKind::InvalidBoost, "|beta| must be < 1");
  }
  return Scalar(1) / std::sqrt((Scalar(1) - beta) * (Scalar(1) + beta));
}

}  // namespace qmlab
