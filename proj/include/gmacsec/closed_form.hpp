#pragma once
#include <string>
#include <vector>

namespace gmacsec {

// One alpha-slice of the binary capacity-equivocation region:
//   R1 <= r1_cap,  R0 + R1 <= sum_cap,
//   0 <= Re <= R1, Re <= re_cap, R0 + Re <= sum_e_cap.
// r1_max / re_max are those bounds resolved at the given common rate.
struct BinarySlice {
    double r1_cap = 0;     // h(alpha)
    double sum_cap = 0;    // 1
    double re_cap = 0;     // h(alpha) + h(p) - h(p * alpha)
    double sum_e_cap = 0;  // 1 + h(p) - h(p * alpha)
    double r1_max = 0;
    double re_max = 0;
};

// p in [0, 1/2], alpha in [0, 1/2], r0 in [0, 1].
BinarySlice binary_region_slice(double p, double alpha, double r0);

// h(a*) + h(p) - h(p * a*) with a* = h^{-1}(1 - R0).
double binary_secrecy_capacity(double p, double r0);

// Chord between the two perfect-secrecy extremes (R0 = 0, h(p)) and
// (R0 = 1, 0): alternating between those two codebooks.
double binary_time_sharing_secrecy(double p, double r0);

struct GaussianParams {
    double P1 = 0, P2 = 0;  // power constraints
    double N = 0, N2 = 0;   // destination / eavesdropper noise, N <= N2
};

// "N2 = infinity" requests map to this sentinel.
inline constexpr double kGaussianInfiniteN2 = 1e12;

// One alpha-slice of the Gaussian region, same bound layout as the binary
// slice. alpha in [0, 1]; alpha = 1 puts all of user 1's power on the
// confidential message, alpha = 0 fully correlates the inputs.
struct GaussianSlice {
    double r1_cap = 0;     // C(alpha P1 / N)
    double sum_cap = 0;    // C((P1 + P2 + 2 sqrt((1-alpha) P1 P2)) / N)
    double re_cap = 0;     // r1_cap  - C(alpha P1 / N2)
    double sum_e_cap = 0;  // sum_cap - C(alpha P1 / N2)
    double r1_max = 0;
    double re_max = 0;
};

GaussianSlice gaussian_region_slice(const GaussianParams& gp, double alpha,
                                    double r0);

struct GaussianCapacity {
    double value = 0;
    double alpha_star = 1.0;  // 1 on the flat branch, 0 when infeasible
    bool flat = false;        // below the common-rate threshold
    bool infeasible = false;  // beyond the largest supported common rate
};

// Flat below gaussian_r0_threshold; otherwise the balancing alpha* is the
// unique root of a strictly decreasing common-rate equation, found by
// bisection to 1e-12.
GaussianCapacity gaussian_secrecy_capacity(const GaussianParams& gp,
                                           double r0);
double gaussian_r0_threshold(const GaussianParams& gp);
double gaussian_r0_max(const GaussianParams& gp);

// Table of one value column per series over a shared R0 grid.
struct FigureTrace {
    std::string r0_label = "R0";
    std::vector<std::string> series;
    std::vector<double> r0;
    std::vector<std::vector<double>> values;  // values[series][row]
};

// Binary secrecy capacity versus R0, one series per crossover probability.
FigureTrace binary_capacity_figure(const std::vector<double>& ps, int grid_n);
// Capacity versus the time-sharing chord for one crossover probability.
FigureTrace binary_time_sharing_figure(double p, int grid_n);
// Gaussian secrecy capacity versus R0, one series per eavesdropper noise.
FigureTrace gaussian_capacity_figure(double P1, double P2, double N,
                                     const std::vector<double>& n2s,
                                     int grid_n);

}
