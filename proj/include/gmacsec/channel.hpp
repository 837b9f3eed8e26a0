#pragma once
#include <optional>
#include <string>
#include <vector>

namespace gmacsec {

// Discrete memoryless two-user MAC with receivers at the destination and at
// both users. Transition tensor p(y, y1, y2 | x1, x2), indexed
// [x1][x2][y][y1][y2] with y2 fastest.
struct GmacChannel {
    int nx1 = 0, nx2 = 0, ny = 0, ny1 = 0, ny2 = 0;
    std::vector<double> t;

    size_t slice_cells() const { return (size_t)ny * ny1 * ny2; }
    size_t index(int x1, int x2, int y, int y1, int y2) const {
        return ((((size_t)x1 * nx2 + x2) * ny + y) * ny1 + y1) * ny2 + y2;
    }
    double at(int x1, int x2, int y, int y1, int y2) const {
        return t[index(x1, x2, y, y1, y2)];
    }
};

enum class Receiver { destination, user1, user2 };

// p(output | x1, x2) for one receiver, indexed [x1][x2][out].
struct MarginalChannel {
    Receiver tag;
    int nx1 = 0, nx2 = 0, nout = 0;
    std::vector<double> p;

    double at(int x1, int x2, int out) const {
        return p[((size_t)x1 * nx2 + x2) * nout + out];
    }
};

struct DegradednessReport {
    bool physically_degraded = false;
    bool stochastically_degraded = false;
    // p(y2 | y, x2) when found, indexed [x2][y][y2]
    std::optional<std::vector<double>> degrading_kernel;
    double residual = 0.0;
};

// Construct a validated channel from a raw tensor. Slices off by more than
// 1e-8 are rejected; smaller defects are renormalized away.
GmacChannel make_channel(int nx1, int nx2, int ny, int ny1, int ny2,
                         std::vector<double> tensor);

// Channel spec document: {"alphabets": {"x1", "x2", "y", "y1", "y2"},
// "transition": nested arrays [x1][x2][y][y1][y2]}.
GmacChannel load_channel(const std::string& path);
GmacChannel parse_channel(const std::string& json_text);
void save_channel(const GmacChannel& ch, const std::string& path);

MarginalChannel marginal(const GmacChannel& ch, Receiver r);

// True iff p(y2 | y, x2, x1) does not depend on x1 wherever defined.
bool is_physically_degraded(const GmacChannel& ch, double tol = 1e-9);

// Searches for a kernel p(y2|y,x2) reproducing the user-2 marginal from the
// destination marginal; reports the best residual found.
DegradednessReport find_stochastic_degradation(const GmacChannel& ch, double tol = 1e-9);

// Binary multiplier channel: y = x1 & x2, y2 = [x1 <= x2], y1 degenerate.
GmacChannel builtin_multiplier_bias();

// y = x1 & x2 and y2 = y xor Bern(p). p in [0, 1/2]; p = 0 keeps y2 = y.
GmacChannel builtin_degraded_binary(double p);

GmacChannel builtin_channel(const std::string& name, double p);

}
