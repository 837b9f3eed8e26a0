#include "gmacsec/aux_dist.hpp"
#include "gmacsec/errors.hpp"
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gmacsec {

namespace {

void check_kernel(const char* name, const std::vector<double>& k, int rows,
                  int cols) {
    if ((int)k.size() != rows * cols)
        throw std::invalid_argument(std::string(name) + ": expected " +
                                    std::to_string(rows * cols) + " entries");
    for (int r = 0; r < rows; ++r) {
        double s = 0.0;
        for (int c = 0; c < cols; ++c) {
            double p = k[r * cols + c];
            if (p < -1e-15)
                throw std::invalid_argument(std::string(name) +
                                            ": negative probability");
            s += p;
        }
        if (std::abs(s - 1.0) > 1e-9)
            throw std::invalid_argument(std::string(name) + ": row " +
                                        std::to_string(r) + " sums to " +
                                        std::to_string(s));
    }
}

FiniteDist normalized(std::vector<int> sizes, std::vector<double> p) {
    double s = 0.0;
    for (double& v : p) {
        if (v < 0.0) v = 0.0;
        s += v;
    }
    if (s <= 0.0) throw internal_error("joint tensor has no mass");
    for (double& v : p) v /= s;
    return FiniteDist(std::move(sizes), std::move(p));
}

}  // namespace

FiniteDist one_message_joint(const GmacChannel& ch, const OneMessageDist& d) {
    if (d.nx1 != ch.nx1 || d.nx2 != ch.nx2)
        throw std::invalid_argument("input distribution does not match channel alphabets");
    check_kernel("p(q,x2)", d.qx2, 1, d.nq * d.nx2);
    check_kernel("p(u|q)", d.u_given_q, d.nq, d.nu);
    check_kernel("p(x1|u)", d.x1_given_u, d.nu, d.nx1);
    std::vector<int> sz = {d.nq, d.nu, d.nx1, d.nx2, ch.ny, ch.ny2};
    std::vector<double> p((size_t)d.nq * d.nu * d.nx1 * d.nx2 * ch.ny * ch.ny2,
                          0.0);
    size_t i = 0;
    for (int q = 0; q < d.nq; ++q)
        for (int u = 0; u < d.nu; ++u)
            for (int x1 = 0; x1 < d.nx1; ++x1)
                for (int x2 = 0; x2 < d.nx2; ++x2) {
                    double w = d.qx2[q * d.nx2 + x2] * d.u_given_q[q * d.nu + u] *
                               d.x1_given_u[u * d.nx1 + x1];
                    for (int y = 0; y < ch.ny; ++y)
                        for (int y2 = 0; y2 < ch.ny2; ++y2) {
                            double t = 0.0;
                            for (int y1 = 0; y1 < ch.ny1; ++y1)
                                t += ch.at(x1, x2, y, y1, y2);
                            p[i++] = w * t;
                        }
                }
    return normalized(std::move(sz), std::move(p));
}

FiniteDist two_message_joint(const GmacChannel& ch, const TwoMessageDist& d) {
    if (d.nx1 != ch.nx1 || d.nx2 != ch.nx2)
        throw std::invalid_argument("input distribution does not match channel alphabets");
    check_kernel("p(q)", d.q, 1, d.nq);
    check_kernel("p(u|q)", d.u_given_q, d.nq, d.nu);
    check_kernel("p(x1|u)", d.x1_given_u, d.nu, d.nx1);
    check_kernel("p(v|q)", d.v_given_q, d.nq, d.nv);
    check_kernel("p(x2|v)", d.x2_given_v, d.nv, d.nx2);
    std::vector<int> sz = {d.nq, d.nu,  d.nv,  d.nx1,
                           d.nx2, ch.ny, ch.ny1, ch.ny2};
    std::vector<double> p((size_t)d.nq * d.nu * d.nv * d.nx1 * d.nx2 * ch.ny *
                              ch.ny1 * ch.ny2,
                          0.0);
    size_t i = 0;
    for (int q = 0; q < d.nq; ++q)
        for (int u = 0; u < d.nu; ++u)
            for (int v = 0; v < d.nv; ++v)
                for (int x1 = 0; x1 < d.nx1; ++x1)
                    for (int x2 = 0; x2 < d.nx2; ++x2) {
                        double w = d.q[q] * d.u_given_q[q * d.nu + u] *
                                   d.v_given_q[q * d.nv + v] *
                                   d.x1_given_u[u * d.nx1 + x1] *
                                   d.x2_given_v[v * d.nx2 + x2];
                        for (int y = 0; y < ch.ny; ++y)
                            for (int y1 = 0; y1 < ch.ny1; ++y1)
                                for (int y2 = 0; y2 < ch.ny2; ++y2)
                                    p[i++] = w * ch.at(x1, x2, y, y1, y2);
                    }
    return normalized(std::move(sz), std::move(p));
}

FiniteDist product_input_joint(const GmacChannel& ch,
                               const ProductInputDist& d) {
    if (d.nx1 != ch.nx1 || d.nx2 != ch.nx2)
        throw std::invalid_argument("input distribution does not match channel alphabets");
    check_kernel("p(q)", d.q, 1, d.nq);
    check_kernel("p(x1|q)", d.x1_given_q, d.nq, d.nx1);
    check_kernel("p(x2|q)", d.x2_given_q, d.nq, d.nx2);
    std::vector<int> sz = {d.nq, d.nx1, d.nx2, ch.ny, ch.ny1, ch.ny2};
    std::vector<double> p((size_t)d.nq * d.nx1 * d.nx2 * ch.ny * ch.ny1 * ch.ny2,
                          0.0);
    size_t i = 0;
    for (int q = 0; q < d.nq; ++q)
        for (int x1 = 0; x1 < d.nx1; ++x1)
            for (int x2 = 0; x2 < d.nx2; ++x2) {
                double w = d.q[q] * d.x1_given_q[q * d.nx1 + x1] *
                           d.x2_given_q[q * d.nx2 + x2];
                for (int y = 0; y < ch.ny; ++y)
                    for (int y1 = 0; y1 < ch.ny1; ++y1)
                        for (int y2 = 0; y2 < ch.ny2; ++y2)
                            p[i++] = w * ch.at(x1, x2, y, y1, y2);
            }
    return normalized(std::move(sz), std::move(p));
}

namespace {

uint64_t binom_capped(int n, int k, uint64_t cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        // r * (n - k + i) / i is integral at every step
        r = r * (unsigned)(n - k + i) / (unsigned)i;
        if (r > cap) return cap + 1;
    }
    return (uint64_t)r;
}

}  // namespace

uint64_t lattice_count(const std::vector<SimplexBlock>& blocks, int denom,
                       uint64_t cap) {
    uint64_t total = 1;
    for (auto& b : blocks) {
        uint64_t per_row = binom_capped(denom + b.cols - 1, b.cols - 1, cap);
        for (int r = 0; r < b.rows; ++r) {
            if (per_row > cap || total > cap / std::max<uint64_t>(per_row, 1))
                return cap + 1;
            total *= per_row;
        }
    }
    return total;
}

int pick_denom(const std::vector<SimplexBlock>& blocks, int forced,
               uint64_t budget) {
    if (forced > 0) return forced;
    for (int d : {16, 8, 4, 2, 1})
        if (lattice_count(blocks, d, budget) <= budget) return d;
    throw std::invalid_argument(
        "no grid step in {1/16,...,1} fits the point budget; reduce the "
        "auxiliary cardinalities or raise the budget");
}

LatticeScan::LatticeScan(std::vector<SimplexBlock> blocks, int denom)
    : denom_(denom) {
    if (denom < 1) throw std::invalid_argument("grid denominator must be >= 1");
    for (auto& b : blocks)
        for (int r = 0; r < b.rows; ++r) cols_.push_back(b.cols);
    if (cols_.empty()) throw std::invalid_argument("empty lattice");
    for (int c : cols_) {
        std::vector<int> a(c, 0);
        a[0] = denom;
        comp_.push_back(a);
        row_.push_back(std::vector<double>(c, 0.0));
    }
    total_ = lattice_count(blocks, denom, UINT64_MAX - 1);
}

bool LatticeScan::advance_row(int r) {
    auto& a = comp_[r];
    int c = cols_[r];
    if (a[c - 1] == denom_) {
        std::fill(a.begin(), a.end(), 0);
        a[0] = denom_;
        return false;
    }
    int h = 0;
    while (a[h] == 0) ++h;
    int t = a[h];
    a[h] = 0;
    a[0] = t - 1;
    a[h + 1] += 1;
    return true;
}

bool LatticeScan::next(const std::function<void(int, const double*, int)>& fill,
                       uint64_t* id) {
    if (at_ >= total_) return false;
    for (size_t r = 0; r < cols_.size(); ++r) {
        for (int c = 0; c < cols_[r]; ++c)
            row_[r][c] = (double)comp_[r][c] / denom_;
        fill((int)r, row_[r].data(), cols_[r]);
    }
    if (id) *id = at_;
    ++at_;
    for (size_t r = 0; r < cols_.size(); ++r)
        if (advance_row((int)r)) break;
    return true;
}

double refine_rows(std::vector<RowRef> rows, double step, int halvings,
                   const std::function<double()>& eval) {
    double best = eval();
    double delta = step / 2.0;
    for (int level = 0; level <= halvings; ++level) {
        for (int sweep = 0; sweep < 500; ++sweep) {
            double gain_best = 0.0;
            RowRef* mr = nullptr;
            int mi = -1, mj = -1;
            for (auto& r : rows) {
                for (int i = 0; i < r.len; ++i) {
                    if (r.p[i] < delta - 1e-12) continue;
                    for (int j = 0; j < r.len; ++j) {
                        if (j == i) continue;
                        r.p[i] -= delta;
                        r.p[j] += delta;
                        double v = eval();
                        r.p[i] += delta;
                        r.p[j] -= delta;
                        if (v - best > gain_best + 1e-12) {
                            gain_best = v - best;
                            mr = &r;
                            mi = i;
                            mj = j;
                        }
                    }
                }
            }
            if (!mr) break;
            mr->p[mi] -= delta;
            mr->p[mj] += delta;
            best += gain_best;
        }
        delta /= 2.0;
    }
    return eval();
}

}
