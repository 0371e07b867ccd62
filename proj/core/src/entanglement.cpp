#include "entctl/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entctl {

double negativity(const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("negativity: rho must be 4x4");
  if (!rho.is_hermitian(1e-12))
    throw std::invalid_argument("negativity: rho not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-10)
    throw std::invalid_argument("negativity: trace(rho) != 1");
  const HermitianEigen spec_rho = hermitian_eigen(rho, 1e-12);
  if (spec_rho.values[0] < -1e-10)
    throw std::invalid_argument("negativity: rho has a negative eigenvalue");

  const HermitianEigen pt = hermitian_eigen(partial_transpose_a(rho), 1e-12);
  double abs_sum = 0.0;
  for (int i = 0; i < 4; ++i) abs_sum += std::abs(pt.values[i]);
  return std::clamp(0.5 * (abs_sum - 1.0), 0.0, 0.5);
}

double negativity_pure(const StateVector& psi) {
  const double n = std::abs(psi.amp[0] * psi.amp[3] - psi.amp[1] * psi.amp[2]);
  return std::min(n, 0.5);
}

double zz_correlation(const StateVector& psi) {
  return std::norm(psi.amp[0]) - std::norm(psi.amp[1]) - std::norm(psi.amp[2]) +
         std::norm(psi.amp[3]);
}

CalibrationFit default_calibration() { return CalibrationFit{}; }

double estimate_negativity(double m, const CalibrationFit& fit) {
  return std::clamp(fit.slope * std::abs(m) + fit.intercept, 0.0, 0.5);
}

CalibrationFit fit_calibration(std::span<const std::pair<double, double>> samples) {
  const std::size_t n = samples.size();
  if (n < 100) throw std::invalid_argument("fit_calibration: need at least 100 samples");

  double sx = 0, sy = 0;
  for (const auto& [m, nv] : samples) {
    sx += std::abs(m);
    sy += nv;
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0, syy = 0, sxy = 0;
  for (const auto& [m, nv] : samples) {
    const double dx = std::abs(m) - mx;
    const double dy = nv - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 1e-12 * static_cast<double>(n))
    throw std::invalid_argument("fit_calibration: samples degenerate in |m|");

  CalibrationFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.pearson_r = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 0.0;
  fit.sample_count = n;
  return fit;
}

}  // namespace entctl
