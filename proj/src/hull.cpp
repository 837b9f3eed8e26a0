#include "gmacsec/hull.hpp"
#include "gmacsec/errors.hpp"
#include <algorithm>
#include <cmath>

namespace gmacsec {

std::vector<std::pair<double, double>> upper_concave_envelope(
    std::vector<std::pair<double, double>> pts) {
    if (pts.size() <= 1) return pts;
    std::sort(pts.begin(), pts.end());
    // Collapse duplicate x, keep the highest y.
    std::vector<std::pair<double, double>> uniq;
    for (auto& p : pts) {
        if (!uniq.empty() && std::abs(uniq.back().first - p.first) < 1e-15) {
            uniq.back().second = std::max(uniq.back().second, p.second);
        } else {
            uniq.push_back(p);
        }
    }
    if (uniq.size() <= 2) return uniq;
    std::vector<std::pair<double, double>> h;
    for (auto& p : uniq) {
        while (h.size() >= 2) {
            auto& o = h[h.size() - 2];
            auto& a = h[h.size() - 1];
            double cross = (a.first - o.first) * (p.second - o.second) -
                           (a.second - o.second) * (p.first - o.first);
            if (cross >= -1e-15) h.pop_back();
            else break;
        }
        h.push_back(p);
    }
    return h;
}

void dominance_prune(std::vector<std::vector<double>>& pts, int dim) {
    std::vector<char> dead(pts.size(), 0);
    for (size_t i = 0; i < pts.size(); ++i) {
        if (dead[i]) continue;
        for (size_t j = 0; j < pts.size(); ++j) {
            if (i == j || dead[j]) continue;
            bool le = true, lt = false;
            for (int k = 0; k < dim; ++k) {
                if (pts[j][k] > pts[i][k] + 1e-15) { le = false; break; }
                if (pts[j][k] < pts[i][k] - 1e-15) lt = true;
            }
            if (le && (lt || j > i)) dead[j] = 1;
        }
    }
    std::vector<std::vector<double>> keep;
    keep.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
        if (!dead[i]) keep.push_back(std::move(pts[i]));
    pts.swap(keep);
}

// Phase-1 simplex with Bland's rule on
//   sum_i lam_i * v_i[k] - s_k = z'_k,  sum_i lam_i = 1,  lam, s >= 0,
// where z'_k = max(z_k - slack, 0). Feasible iff the artificial objective
// reaches ~0.
bool downset_hull_member(const std::vector<std::vector<double>>& cloud,
                         const std::vector<double>& z, double slack) {
    if (cloud.empty()) return false;
    const int n = (int)cloud.size();
    const int m = (int)z.size();
    const int rows = m + 1;
    const int ncol = n + m + rows;  // lambdas, surplus, artificials
    std::vector<std::vector<double>> t(rows, std::vector<double>(ncol + 1, 0.0));
    for (int k = 0; k < m; ++k) {
        for (int i = 0; i < n; ++i) t[k][i] = cloud[i][k];
        t[k][n + k] = -1.0;
        t[k][ncol] = std::max(z[k] - slack, 0.0);
    }
    for (int i = 0; i < n; ++i) t[m][i] = 1.0;
    t[m][ncol] = 1.0;
    std::vector<int> basis(rows);
    for (int r = 0; r < rows; ++r) {
        t[r][n + m + r] = 1.0;
        basis[r] = n + m + r;
    }
    std::vector<double> obj(ncol + 1, 0.0);
    for (int r = 0; r < rows; ++r)
        for (int j = 0; j <= ncol; ++j) obj[j] -= t[r][j];
    for (int r = 0; r < rows; ++r) obj[n + m + r] = 0.0;

    for (int iter = 0; iter < 20000; ++iter) {
        int enter = -1;
        for (int j = 0; j < ncol; ++j) {
            if (obj[j] < -1e-11) { enter = j; break; }
        }
        if (enter < 0) break;
        int leave = -1;
        double best = 0.0;
        for (int r = 0; r < rows; ++r) {
            if (t[r][enter] <= 1e-11) continue;
            double ratio = t[r][ncol] / t[r][enter];
            if (leave < 0 || ratio < best - 1e-12 ||
                (ratio < best + 1e-12 && basis[r] < basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave < 0) throw internal_error("unbounded phase-1 simplex");
        double piv = t[leave][enter];
        for (int j = 0; j <= ncol; ++j) t[leave][j] /= piv;
        for (int r = 0; r < rows; ++r) {
            if (r == leave || std::abs(t[r][enter]) < 1e-15) continue;
            double f = t[r][enter];
            for (int j = 0; j <= ncol; ++j) t[r][j] -= f * t[leave][j];
        }
        double f = obj[enter];
        if (std::abs(f) > 1e-15)
            for (int j = 0; j <= ncol; ++j) obj[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    return -obj[ncol] <= 1e-9;
}

}
