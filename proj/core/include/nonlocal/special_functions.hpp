#pragma once

namespace nonlocal {

/// log|Gamma(x)| by the Lanczos approximation (g = 7, nine terms).
double log_gamma(double x);

/// Gamma(N/2) Gamma((p+1)/2) / (sqrt(pi) Gamma((N+p)/2)), the sphere average of |w.e|^p.
double normalized_sphere_moment(int dim, double p);

}  // namespace nonlocal
