#include "gmacsec/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gmacsec/binary_entropy.hpp"

namespace gmacsec {

namespace {

void check_unit(double v, double lo, double hi, const char* name) {
    if (!(v >= lo && v <= hi)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%s must lie in [%g, %g], got %g",
                      name, lo, hi, v);
        throw std::invalid_argument(buf);
    }
}

// 0.5 log2(1 + x), the real Gaussian capacity function.
double cap(double x) { return 0.5 * std::log2(1.0 + x); }

void check_gaussian(const GaussianParams& gp) {
    if (!(gp.P1 > 0 && gp.P2 > 0)) {
        throw std::invalid_argument("powers P1, P2 must be positive");
    }
    if (!(gp.N > 0)) {
        throw std::invalid_argument("destination noise N must be positive");
    }
    if (!(gp.N2 >= gp.N)) {
        throw std::invalid_argument(
            "eavesdropper noise N2 must be at least N");
    }
}

// Common rate supported when a fraction alpha of user 1's power carries the
// confidential message and the rest is coherently aligned with user 2.
double common_rate(const GaussianParams& gp, double alpha) {
    double abar = 1.0 - alpha;
    double coh = gp.P1 + gp.P2 + 2.0 * std::sqrt(abar * gp.P1 * gp.P2);
    return 0.5 * std::log2((coh + gp.N) / (alpha * gp.P1 + gp.N));
}

double secrecy_at_alpha(const GaussianParams& gp, double alpha) {
    return cap(alpha * gp.P1 / gp.N) - cap(alpha * gp.P1 / gp.N2);
}

}  // namespace

BinarySlice binary_region_slice(double p, double alpha, double r0) {
    check_unit(p, 0.0, 0.5, "crossover probability p");
    check_unit(alpha, 0.0, 0.5, "alpha");
    check_unit(r0, 0.0, 1.0, "common rate R0");
    BinarySlice s;
    double leak = binary_entropy(star(p, alpha)) - binary_entropy(p);
    s.r1_cap = binary_entropy(alpha);
    s.sum_cap = 1.0;
    s.re_cap = s.r1_cap - leak;
    s.sum_e_cap = s.sum_cap - leak;
    s.r1_max = std::min(s.r1_cap, s.sum_cap - r0);
    s.re_max = std::max(
        0.0, std::min({s.r1_max, s.re_cap, s.sum_e_cap - r0}));
    return s;
}

double binary_secrecy_capacity(double p, double r0) {
    check_unit(p, 0.0, 0.5, "crossover probability p");
    check_unit(r0, 0.0, 1.0, "common rate R0");
    double astar = inverse_binary_entropy(1.0 - r0);
    return binary_entropy(astar) + binary_entropy(p) -
           binary_entropy(star(p, astar));
}

double binary_time_sharing_secrecy(double p, double r0) {
    check_unit(p, 0.0, 0.5, "crossover probability p");
    check_unit(r0, 0.0, 1.0, "common rate R0");
    return (1.0 - r0) * binary_entropy(p);
}

GaussianSlice gaussian_region_slice(const GaussianParams& gp, double alpha,
                                    double r0) {
    check_gaussian(gp);
    check_unit(alpha, 0.0, 1.0, "alpha");
    if (!(r0 >= 0)) {
        throw std::invalid_argument("common rate R0 must be nonnegative");
    }
    GaussianSlice s;
    double abar = 1.0 - alpha;
    double coh = gp.P1 + gp.P2 + 2.0 * std::sqrt(abar * gp.P1 * gp.P2);
    double tap = cap(alpha * gp.P1 / gp.N2);
    s.r1_cap = cap(alpha * gp.P1 / gp.N);
    s.sum_cap = cap(coh / gp.N);
    s.re_cap = s.r1_cap - tap;
    s.sum_e_cap = s.sum_cap - tap;
    s.r1_max = std::min(s.r1_cap, s.sum_cap - r0);
    s.re_max = std::max(
        0.0, std::min({s.r1_max, s.re_cap, s.sum_e_cap - r0}));
    return s;
}

double gaussian_r0_threshold(const GaussianParams& gp) {
    check_gaussian(gp);
    return 0.5 * std::log2((gp.P1 + gp.P2 + gp.N) / (gp.P1 + gp.N));
}

double gaussian_r0_max(const GaussianParams& gp) {
    check_gaussian(gp);
    return common_rate(gp, 0.0);
}

GaussianCapacity gaussian_secrecy_capacity(const GaussianParams& gp,
                                           double r0) {
    check_gaussian(gp);
    if (!(r0 >= 0)) {
        throw std::invalid_argument("common rate R0 must be nonnegative");
    }
    GaussianCapacity out;
    if (r0 <= gaussian_r0_threshold(gp) + 1e-15) {
        out.flat = true;
        out.alpha_star = 1.0;
        out.value = secrecy_at_alpha(gp, 1.0);
        return out;
    }
    if (r0 > gaussian_r0_max(gp)) {
        out.infeasible = true;
        out.alpha_star = 0.0;
        out.value = 0.0;
        return out;
    }
    // common_rate is strictly decreasing in alpha, so the root is unique.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        if (common_rate(gp, mid) > r0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.alpha_star = 0.5 * (lo + hi);
    out.value = secrecy_at_alpha(gp, out.alpha_star);
    return out;
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    }
    return v;
}

std::string series_label(const char* name, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s=%g", name, value);
    return buf;
}

}  // namespace

FigureTrace binary_capacity_figure(const std::vector<double>& ps,
                                   int grid_n) {
    if (ps.empty()) throw std::invalid_argument("need at least one p");
    FigureTrace t;
    t.r0 = linspace(0.0, 1.0, grid_n);
    for (double p : ps) {
        t.series.push_back(series_label("p", p));
        std::vector<double> col;
        col.reserve(t.r0.size());
        for (double r0 : t.r0) col.push_back(binary_secrecy_capacity(p, r0));
        t.values.push_back(std::move(col));
    }
    return t;
}

FigureTrace binary_time_sharing_figure(double p, int grid_n) {
    FigureTrace t;
    t.r0 = linspace(0.0, 1.0, grid_n);
    t.series = {"capacity", "time_sharing"};
    t.values.assign(2, {});
    for (double r0 : t.r0) {
        t.values[0].push_back(binary_secrecy_capacity(p, r0));
        t.values[1].push_back(binary_time_sharing_secrecy(p, r0));
    }
    return t;
}

FigureTrace gaussian_capacity_figure(double P1, double P2, double N,
                                     const std::vector<double>& n2s,
                                     int grid_n) {
    if (n2s.empty()) throw std::invalid_argument("need at least one N2");
    FigureTrace t;
    double r0_max = gaussian_r0_max({P1, P2, N, n2s.front()});
    t.r0 = linspace(0.0, r0_max, grid_n);
    for (double n2 : n2s) {
        GaussianParams gp{P1, P2, N, n2};
        check_gaussian(gp);
        t.series.push_back(series_label("N2", n2));
        std::vector<double> col;
        col.reserve(t.r0.size());
        for (double r0 : t.r0) {
            col.push_back(gaussian_secrecy_capacity(gp, r0).value);
        }
        t.values.push_back(std::move(col));
    }
    return t;
}

}
