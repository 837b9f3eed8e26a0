#pragma once

namespace gmacsec {

// h(a) in bits, with 0 log 0 = 0.
double binary_entropy(double a);

// Inverse of h on [0, 1/2]. Bisection, tolerance 1e-12.
double inverse_binary_entropy(double c);

// Binary convolution a * b = a(1-b) + (1-a)b.
double star(double a, double b);

// h(p0 * h^{-1}(v)): per-symbol output entropy floor of a BSC(p0) fed with
// input entropy rate v.
double binary_epi_floor(double v, double p0);

}
