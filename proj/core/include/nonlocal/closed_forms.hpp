#pragma once

#include "nonlocal/orlicz.hpp"

namespace nonlocal {

/// Closed forms for phi(a, s, delta) = (1-s)^-1 int_S H(a delta^(1-s) |w.e|) dS,
/// H(x) = int_0^x G(t)/t dt. Constants in the raw (unnormalized) convention.
///
/// Power(p)          K c^p / (p (1-s))
/// PowerLog(p, 1)    c <= 1: c^p/(p(1-s)) (K (1 - ln c + 1/p) + K_ln)
///                   c > 1 : partial sphere moments split at |w.e| = 1/c
/// MaxPower(lo, hi)  c <= 1: K_lo c^lo / (lo (1-s)); else partial moments
/// with c = a delta^(1-s). Both branches are compared at c = 1.
double phi_closed_form(OrliczKind kind, double a, double s, double delta, int dim, double p,
                       double q = 1.0);
double phi_closed_form(const OrliczFunction& g, double a, double s, double delta, int dim);

/// lim_{s->1} (1-s) phi(a, s, 1) = int_S H(a |w.e|) dS.
double tilde_g_closed_form(OrliczKind kind, double a, int dim, double p, double q = 1.0);
double tilde_g_closed_form(const OrliczFunction& g, double a, int dim);

}  // namespace nonlocal
