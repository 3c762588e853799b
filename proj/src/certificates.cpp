#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ferro/energy.hpp"

namespace ferro {

double certificate_f(double kappa, double x, double y) {
  const double sx = std::sin(x);
  return std::sin(2 * x) - std::sin(2 * y) - kappa * std::sin(2 * y - 2 * x) * sx * sx;
}

double certificate_lambda(double kappa, double x, double y) {
  return std::cos(2 * x) - std::cos(2 * y) -
         kappa * std::sin(2 * y - 2 * x) * std::sin(x) * std::cos(x);
}

CertificateReport wedge_certificates(double kappa, int samples) {
  if (!(kappa >= 4.0)) {
    throw std::invalid_argument("wedge_certificates: kappa must be >= 4");
  }
  if (samples < 100) {
    throw std::invalid_argument("wedge_certificates: need at least 100 samples");
  }
  constexpr double pi = std::numbers::pi;
  CertificateReport r;
  r.kappa = kappa;
  r.samples = samples;
  r.slack = 1e-12 * std::max(1.0, kappa);
  r.f_min_w1 = INFINITY;
  r.lambda_min_w1_quarter = INFINITY;
  r.f_max_w2 = -INFINITY;
  r.lambda_max_w2 = -INFINITY;

  const int last = samples - 1;
  for (int i = 0; i <= last; ++i) {
    const double x = (pi / 2) * i / last;
    for (int j = 0; j <= last; ++j) {
      const double t = static_cast<double>(j) / last;
      const double y1 = pi + t * x;      // W1: pi <= y <= pi + x
      const double y2 = x + t * x;       // W2: x <= y <= 2x
      const double f1 = certificate_f(kappa, x, y1);
      const double f2 = certificate_f(kappa, x, y2);
      const double l2 = certificate_lambda(kappa, x, y2);
      r.f_min_w1 = std::min(r.f_min_w1, f1);
      r.f_max_w2 = std::max(r.f_max_w2, f2);
      r.lambda_max_w2 = std::max(r.lambda_max_w2, l2);
      if (f1 < -r.slack) ++r.violations;
      if (f2 > r.slack) ++r.violations;
      if (l2 > r.slack) ++r.violations;
      if (x <= pi / 4) {
        const double l1 = certificate_lambda(kappa, x, y1);
        r.lambda_min_w1_quarter = std::min(r.lambda_min_w1_quarter, l1);
        if (l1 < -r.slack) ++r.violations;
      }
    }
  }
  return r;
}

}  // namespace ferro
