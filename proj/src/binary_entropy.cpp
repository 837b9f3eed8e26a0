#include "gmacsec/binary_entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace gmacsec {

double binary_entropy(double a) {
    if (a < 0.0 || a > 1.0)
        throw std::invalid_argument("binary_entropy: argument outside [0,1]");
    if (a < 1e-15 || 1.0 - a < 1e-15) return 0.0;
    return -a * std::log2(a) - (1.0 - a) * std::log2(1.0 - a);
}

double inverse_binary_entropy(double c) {
    if (c < 0.0 || c > 1.0)
        throw std::invalid_argument("inverse_binary_entropy: argument outside [0,1]");
    if (c <= 0.0) return 0.0;
    if (c >= 1.0) return 0.5;
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < 200 && hi - lo > 1e-12; it++) {
        double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < c)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double star(double a, double b) {
    if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0)
        throw std::invalid_argument("star: arguments outside [0,1]");
    return a * (1.0 - b) + (1.0 - a) * b;
}

double binary_epi_floor(double v, double p0) {
    if (v < 0.0 || v > 1.0)
        throw std::invalid_argument("binary_epi_floor: v outside [0,1]");
    if (p0 <= 0.0 || p0 > 0.5)
        throw std::invalid_argument("binary_epi_floor: p0 outside (0,1/2]");
    return binary_entropy(star(p0, inverse_binary_entropy(v)));
}

}
