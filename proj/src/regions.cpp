#include "gmacsec/regions.hpp"
#include "gmacsec/errors.hpp"
#include "gmacsec/finite_dist.hpp"
#include "gmacsec/hull.hpp"
#include "gmacsec/rng.hpp"
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace gmacsec {

namespace {

double pos(double v) { return v > 0.0 ? v : 0.0; }

double nonneg_mi(double v) {
    if (v < 0.0) {
        if (v < -1e-9) throw internal_error("mutual information went negative");
        return 0.0;
    }
    return v;
}

double ent_row(const double* p, int n) {
    double h = 0.0;
    for (int i = 0; i < n; ++i)
        if (p[i] >= 1e-15) h -= p[i] * std::log2(p[i]);
    return h;
}

struct OneScratch {
    std::vector<double> py_u, py2_u, mix_y, mix_y2, glob_y;
    void size_for(int ny, int ny2) {
        py_u.assign(ny, 0.0);
        py2_u.assign(ny2, 0.0);
        mix_y.assign(ny, 0.0);
        mix_y2.assign(ny2, 0.0);
        glob_y.assign(ny, 0.0);
    }
};

// Flat-loop evaluation of the three one-message-set terms; the generic
// FiniteDist path in mi_bundle_one_message is its oracle in the tests.
MiOne one_mi_fast(const MarginalChannel& py, const MarginalChannel& py2,
                  const OneMessageDist& d, OneScratch& s) {
    const int ny = py.nout, ny2 = py2.nout;
    double h_y_u = 0.0, h_y2_u = 0.0, h_y_cond = 0.0, h_y2_cond = 0.0;
    std::fill(s.glob_y.begin(), s.glob_y.end(), 0.0);
    for (int q = 0; q < d.nq; ++q) {
        for (int x2 = 0; x2 < d.nx2; ++x2) {
            double pq = d.qx2[q * d.nx2 + x2];
            if (pq < 1e-15) continue;
            std::fill(s.mix_y.begin(), s.mix_y.end(), 0.0);
            std::fill(s.mix_y2.begin(), s.mix_y2.end(), 0.0);
            for (int u = 0; u < d.nu; ++u) {
                double pu = d.u_given_q[q * d.nu + u];
                if (pu < 1e-15) continue;
                for (int y = 0; y < ny; ++y) {
                    double t = 0.0;
                    for (int x1 = 0; x1 < d.nx1; ++x1)
                        t += d.x1_given_u[u * d.nx1 + x1] * py.at(x1, x2, y);
                    s.py_u[y] = t;
                    s.mix_y[y] += pu * t;
                }
                for (int y2 = 0; y2 < ny2; ++y2) {
                    double t = 0.0;
                    for (int x1 = 0; x1 < d.nx1; ++x1)
                        t += d.x1_given_u[u * d.nx1 + x1] * py2.at(x1, x2, y2);
                    s.py2_u[y2] = t;
                    s.mix_y2[y2] += pu * t;
                }
                h_y_u += pq * pu * ent_row(s.py_u.data(), ny);
                h_y2_u += pq * pu * ent_row(s.py2_u.data(), ny2);
            }
            h_y_cond += pq * ent_row(s.mix_y.data(), ny);
            h_y2_cond += pq * ent_row(s.mix_y2.data(), ny2);
            for (int y = 0; y < ny; ++y) s.glob_y[y] += pq * s.mix_y[y];
        }
    }
    MiOne mi;
    mi.u_y_x2q = nonneg_mi(h_y_cond - h_y_u);
    mi.u_y2_x2q = nonneg_mi(h_y2_cond - h_y2_u);
    mi.ux2q_y = nonneg_mi(ent_row(s.glob_y.data(), ny) - h_y_u);
    return mi;
}

// Pareto front of 2-D points under componentwise <=, keyed by the first
// coordinate ascending with the second strictly descending. First point to
// reach a position wins ties (scan ids ascend).
struct Front2 {
    std::map<double, std::pair<double, uint64_t>> m;

    void insert(double a, double b, uint64_t id) {
        auto it = m.lower_bound(a);
        if (it != m.end() && it->second.first >= b) return;
        while (it != m.begin()) {
            auto p = std::prev(it);
            if (p->second.first <= b) m.erase(p);
            else break;
        }
        if (it != m.end() && it->first == a) it = m.erase(it);
        m.emplace_hint(it, a, std::make_pair(b, id));
    }
};

struct ScanSetup {
    int nq = 0, nu = 0, denom = 0;
    uint64_t points = 0;
    std::string desc;
};

// Enumerates the one-message lattice (or the p(q,x2)p(x1|q) lattice when
// degraded_class is set) and hands each distribution to f(d, id, mi).
// evaluate=false replays the same enumeration without computing mutual
// informations, for cheap recovery of distributions by scan id.
template <class F>
ScanSetup scan_one(const GmacChannel& ch, const GridOptions& opts,
                   bool degraded_class, bool evaluate, F&& f) {
    ScanSetup su;
    su.nq = opts.nq > 0 ? opts.nq : 2;
    su.nu = degraded_class ? ch.nx1 : (opts.nu > 0 ? opts.nu : ch.nx1 + 1);
    std::vector<SimplexBlock> blocks = {{1, su.nq * ch.nx2}, {su.nq, su.nu}};
    if (!degraded_class) blocks.push_back({su.nu, ch.nx1});
    su.denom = pick_denom(blocks, opts.denom, opts.budget);
    su.points = lattice_count(blocks, su.denom, UINT64_MAX - 1);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%s: |Q|=%d, |U|=%d, step=1/%d, points=%llu",
                  degraded_class ? "p(q,x2)p(x1|q)" : "p(q,x2)p(u|q)p(x1|u)",
                  su.nq, degraded_class ? ch.nx1 : su.nu, su.denom,
                  (unsigned long long)su.points);
    su.desc = buf;

    OneMessageDist d;
    d.nq = su.nq;
    d.nu = su.nu;
    d.nx1 = ch.nx1;
    d.nx2 = ch.nx2;
    d.qx2.assign(su.nq * ch.nx2, 0.0);
    d.u_given_q.assign(su.nq * su.nu, 0.0);
    d.x1_given_u.assign(su.nu * ch.nx1, 0.0);
    if (degraded_class)
        for (int x1 = 0; x1 < ch.nx1; ++x1) d.x1_given_u[x1 * ch.nx1 + x1] = 1.0;

    MarginalChannel py = marginal(ch, Receiver::destination);
    MarginalChannel py2 = marginal(ch, Receiver::user2);
    OneScratch scratch;
    scratch.size_for(ch.ny, ch.ny2);

    LatticeScan scan(blocks, su.denom);
    uint64_t id = 0;
    auto fill = [&](int row, const double* p, int cols) {
        if (row == 0)
            std::copy(p, p + cols, d.qx2.begin());
        else if (row <= su.nq)
            std::copy(p, p + cols, d.u_given_q.begin() + (row - 1) * su.nu);
        else
            std::copy(p, p + cols,
                      d.x1_given_u.begin() + (row - su.nq - 1) * ch.nx1);
    };
    MiOne none;
    while (scan.next(fill, &id))
        f(d, id, evaluate ? one_mi_fast(py, py2, d, scratch) : none);
    return su;
}

std::vector<int> seq(std::initializer_list<int> v) { return std::vector<int>(v); }

}  // namespace

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::inner: return "inner";
        case Provenance::outer: return "outer";
        case Provenance::secrecy: return "secrecy";
        case Provenance::mac: return "mac";
    }
    return "unknown";
}

std::vector<double> R0Grid::values() const {
    if (step <= 0.0) throw std::invalid_argument("R0 grid step must be positive");
    if (stop < start - 1e-15)
        throw std::invalid_argument("R0 grid stop before start");
    int n = (int)std::floor((stop - start) / step + 1e-9);
    std::vector<double> v;
    v.reserve(n + 1);
    for (int i = 0; i <= n; ++i) v.push_back(start + i * step);
    return v;
}

MiOne mi_bundle_one_message(const GmacChannel& ch, const OneMessageDist& d) {
    FiniteDist j = one_message_joint(ch, d);
    // variables: 0=Q 1=U 2=X1 3=X2 4=Y 5=Y2
    MiOne mi;
    mi.u_y_x2q = cond_mutual_info(j, seq({1}), seq({4}), seq({3, 0}));
    mi.u_y2_x2q = cond_mutual_info(j, seq({1}), seq({5}), seq({3, 0}));
    mi.ux2q_y = cond_mutual_info(j, seq({1, 3, 0}), seq({4}), seq({}));
    return mi;
}

double outer_rate_term(const GmacChannel& ch, const OneMessageDist& d) {
    int nv = d.nv;
    const std::vector<double>* vq = &d.v_given_q;
    std::vector<double> ident;
    if (d.v_given_q.empty()) {
        nv = d.nq;
        ident.assign(d.nq * d.nq, 0.0);
        for (int q = 0; q < d.nq; ++q) ident[q * d.nq + q] = 1.0;
        vq = &ident;
    }
    MarginalChannel py = marginal(ch, Receiver::destination);
    // joint over (Q, U, V, X2, Y), X1 summed out
    std::vector<int> sz = {d.nq, d.nu, nv, d.nx2, ch.ny};
    std::vector<double> p((size_t)d.nq * d.nu * nv * d.nx2 * ch.ny, 0.0);
    size_t i = 0;
    for (int q = 0; q < d.nq; ++q)
        for (int u = 0; u < d.nu; ++u)
            for (int v = 0; v < nv; ++v)
                for (int x2 = 0; x2 < d.nx2; ++x2) {
                    double w = d.qx2[q * d.nx2 + x2] * d.u_given_q[q * d.nu + u] *
                               (*vq)[q * nv + v];
                    for (int y = 0; y < ch.ny; ++y) {
                        double t = 0.0;
                        for (int x1 = 0; x1 < d.nx1; ++x1)
                            t += d.x1_given_u[u * d.nx1 + x1] * py.at(x1, x2, y);
                        p[i++] = w * t;
                    }
                }
    double s = 0.0;
    for (double v : p) s += v;
    for (double& v : p) v /= s;
    FiniteDist j(std::move(sz), std::move(p));
    return cond_mutual_info(j, seq({1}), seq({4}), seq({3, 2}));
}

MiTwo mi_bundle_two_message(const GmacChannel& ch, const TwoMessageDist& d) {
    FiniteDist j = two_message_joint(ch, d);
    // variables: 0=Q 1=U 2=V 3=X1 4=X2 5=Y 6=Y1 7=Y2
    MiTwo mi;
    mi.m1 = cond_mutual_info(j, seq({1}), seq({5}), seq({2, 0}));
    mi.m2 = cond_mutual_info(j, seq({2}), seq({5}), seq({1, 0}));
    mi.m12 = cond_mutual_info(j, seq({1, 2}), seq({5}), seq({0}));
    mi.m012 = cond_mutual_info(j, seq({1, 2, 0}), seq({5}), seq({}));
    mi.c1 = cond_mutual_info(j, seq({1}), seq({7}), seq({4, 2, 0}));
    mi.c2 = cond_mutual_info(j, seq({2}), seq({6}), seq({3, 1, 0}));
    mi.u_y_q = cond_mutual_info(j, seq({1}), seq({5}), seq({0}));
    mi.v_y_q = cond_mutual_info(j, seq({2}), seq({5}), seq({0}));
    return mi;
}

MacMi mac_bundle(const GmacChannel& ch, const ProductInputDist& d) {
    FiniteDist j = product_input_joint(ch, d);
    // variables: 0=Q 1=X1 2=X2 3=Y 4=Y1 5=Y2
    MacMi mi;
    mi.x1_y_x2q = cond_mutual_info(j, seq({1}), seq({3}), seq({2, 0}));
    mi.x2_y_x1q = cond_mutual_info(j, seq({2}), seq({3}), seq({1, 0}));
    mi.x12_y_q = cond_mutual_info(j, seq({1, 2}), seq({3}), seq({0}));
    mi.x12q_y = cond_mutual_info(j, seq({1, 2, 0}), seq({3}), seq({}));
    mi.leak1 = cond_mutual_info(j, seq({1}), seq({5}), seq({2, 0}));
    mi.leak2 = cond_mutual_info(j, seq({2}), seq({4}), seq({1, 0}));
    return mi;
}

std::vector<RatePoint> inner_bound_one(const GmacChannel& ch,
                                       const OneMessageDist& d,
                                       const R0Grid& r0s) {
    MiOne mi = mi_bundle_one_message(ch, d);
    std::vector<RatePoint> out;
    for (double r0 : r0s.values()) {
        double r1m = std::min(mi.u_y_x2q, mi.ux2q_y - r0);
        if (r1m < -1e-12) continue;
        r1m = pos(r1m);
        double re = std::min({r1m, pos(mi.u_y_x2q - mi.u_y2_x2q),
                              pos(mi.ux2q_y - r0 - mi.u_y2_x2q)});
        out.push_back({r0, r1m, 0.0, re, 0.0});
    }
    return out;
}

std::vector<RatePoint> outer_bound_one(const GmacChannel& ch,
                                       const OneMessageDist& d,
                                       const R0Grid& r0s) {
    MiOne mi = mi_bundle_one_message(ch, d);
    double rv = outer_rate_term(ch, d);
    std::vector<RatePoint> out;
    for (double r0 : r0s.values()) {
        double r1m = std::min(rv, mi.ux2q_y - r0);
        double e1 = mi.u_y_x2q - mi.u_y2_x2q;
        double e2 = mi.ux2q_y - mi.u_y2_x2q - r0;
        // Unlike the inner bound, nothing is clamped: an R0 slice with a
        // negative bound admits no point at all.
        if (r1m < -1e-12 || e1 < -1e-12 || e2 < -1e-12) continue;
        double re = std::min({pos(r1m), pos(e1), pos(e2)});
        out.push_back({r0, pos(r1m), 0.0, re, 0.0});
    }
    return out;
}

RegionTrace secrecy_capacity_region_one(const GmacChannel& ch,
                                        const GridOptions& opts) {
    Front2 front;
    ScanSetup su = scan_one(
        ch, opts, false, true,
        [&](const OneMessageDist&, uint64_t id, const MiOne& mi) {
            double a = mi.u_y_x2q - mi.u_y2_x2q;
            double b = mi.ux2q_y - mi.u_y2_x2q;
            if (a >= 0.0 && b >= 0.0) front.insert(a, b, id);
        });

    std::vector<std::pair<double, double>> corners;
    std::map<std::pair<double, double>, int64_t> corner_id;
    auto add = [&](double x, double y, uint64_t id) {
        corners.push_back({x, y});
        corner_id.emplace(std::make_pair(x, y), (int64_t)id);
    };
    for (auto& [a, bv] : front.m) {
        double b = bv.first;
        uint64_t id = bv.second;
        add(0.0, std::min(a, b), id);
        if (b > a) add(b - a, a, id);
        add(b, 0.0, id);
    }
    if (corners.empty()) {
        add(0.0, 0.0, 0);
    }

    RegionTrace tr;
    tr.provenance = Provenance::secrecy;
    tr.grid_desc = su.desc;
    for (auto& [x, y] : upper_concave_envelope(corners)) {
        tr.points.push_back({x, y, 0.0, y, 0.0});  // R1 fully secret here
        auto it = corner_id.find({x, y});
        tr.grid_ids.push_back(it == corner_id.end() ? -1 : it->second);
    }
    return tr;
}

double secrecy_capacity_at_R0(const GmacChannel& ch, double r0,
                              const GridOptions& opts) {
    if (r0 < 0.0) throw std::invalid_argument("R0 must be nonnegative");
    // The objective has local maxima on the time-sharing chord, so a single
    // refinement start is not enough. The (I1-I2, I3-I2) Pareto front keeps
    // one generator per trade-off shape; refining from a spread of front
    // members reliably reaches the superposition-style optimum.
    Front2 front;
    double best = 0.0;
    uint64_t best_id = 0;
    bool have = false;
    ScanSetup su = scan_one(
        ch, opts, false, true,
        [&](const OneMessageDist&, uint64_t id, const MiOne& mi) {
            double a = mi.u_y_x2q - mi.u_y2_x2q;
            double b = mi.ux2q_y - mi.u_y2_x2q;
            if (a >= 0.0 && b >= 0.0) front.insert(a, b, id);
            double v = std::min(a, b - r0);
            if (!have || v > best) {
                best = v;
                best_id = id;
                have = true;
            }
        });
    if (!have) return 0.0;

    std::vector<uint64_t> ids;
    ids.push_back(best_id);
    const size_t max_starts = 32;
    std::vector<uint64_t> front_ids;
    for (auto& [a, bv] : front.m) front_ids.push_back(bv.second);
    size_t stride = std::max<size_t>(1, front_ids.size() / max_starts);
    for (size_t i = 0; i < front_ids.size(); i += stride)
        ids.push_back(front_ids[i]);
    if (!front_ids.empty()) ids.push_back(front_ids.back());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::vector<OneMessageDist> starts;
    size_t cursor = 0;
    scan_one(ch, opts, false, false,
             [&](const OneMessageDist& d, uint64_t id, const MiOne&) {
                 if (cursor < ids.size() && id == ids[cursor]) {
                     starts.push_back(d);
                     ++cursor;
                 }
             });

    MarginalChannel py = marginal(ch, Receiver::destination);
    MarginalChannel py2 = marginal(ch, Receiver::user2);
    OneScratch scratch;
    scratch.size_for(ch.ny, ch.ny2);
    for (OneMessageDist& d : starts) {
        std::vector<RowRef> rows;
        rows.push_back({d.qx2.data(), (int)d.qx2.size()});
        for (int q = 0; q < d.nq; ++q)
            rows.push_back({d.u_given_q.data() + q * d.nu, d.nu});
        for (int u = 0; u < d.nu; ++u)
            rows.push_back({d.x1_given_u.data() + u * d.nx1, d.nx1});
        double refined = refine_rows(
            rows, 1.0 / su.denom, opts.refine_halvings, [&]() {
                MiOne mi = one_mi_fast(py, py2, d, scratch);
                return std::min(mi.u_y_x2q - mi.u_y2_x2q,
                                mi.ux2q_y - mi.u_y2_x2q - r0);
            });
        best = std::max(best, refined);
    }
    return pos(best);
}

double trace_boundary_r1(const RegionTrace& tr, double r0) {
    std::vector<std::pair<double, double>> pts;
    for (auto& p : tr.points) pts.push_back({p.r0, p.r1});
    std::sort(pts.begin(), pts.end());
    if (pts.empty()) return -1.0;
    if (r0 <= pts.front().first + 1e-15) return pts.front().second;
    if (r0 > pts.back().first + 1e-12) return -1.0;
    for (size_t i = 1; i < pts.size(); ++i) {
        if (r0 <= pts[i].first + 1e-15) {
            double x0 = pts[i - 1].first, y0 = pts[i - 1].second;
            double x1 = pts[i].first, y1 = pts[i].second;
            if (x1 - x0 < 1e-15) return std::max(y0, y1);
            return y0 + (y1 - y0) * (r0 - x0) / (x1 - x0);
        }
    }
    return pts.back().second;
}

RegionTrace degraded_region(const GmacChannel& ch, const GridOptions& opts,
                            const R0Grid& r0s, bool* degraded_ok) {
    if (degraded_ok) {
        DegradednessReport rep = find_stochastic_degradation(ch);
        *degraded_ok = rep.physically_degraded || rep.stochastically_degraded;
    }
    std::vector<double> slices = r0s.values();
    std::vector<Front2> fronts(slices.size());
    ScanSetup su = scan_one(
        ch, opts, true, true,
        [&](const OneMessageDist&, uint64_t id, const MiOne& mi) {
            double a1 = mi.u_y_x2q, c = mi.u_y2_x2q, a3 = mi.ux2q_y;
            for (size_t i = 0; i < slices.size(); ++i) {
                double r0 = slices[i];
                double r1m = std::min(a1, a3 - r0);
                double re = std::min({r1m, a1 - c, a3 - c - r0});
                if (r1m < -1e-12 || re < -1e-12) continue;
                fronts[i].insert(pos(r1m), pos(re), id);
            }
        });

    RegionTrace tr;
    tr.provenance = Provenance::inner;
    tr.grid_desc = su.desc;
    for (size_t i = 0; i < slices.size(); ++i)
        for (auto& [r1, rest] : fronts[i].m) {
            tr.points.push_back({slices[i], r1, 0.0, rest.first, 0.0});
            tr.grid_ids.push_back((int64_t)rest.second);
        }
    return tr;
}

RegionTrace one_message_inner_region(const GmacChannel& ch,
                                     const GridOptions& opts,
                                     const R0Grid& r0s) {
    std::vector<double> slices = r0s.values();
    std::vector<Front2> fronts(slices.size());
    ScanSetup su = scan_one(
        ch, opts, false, true,
        [&](const OneMessageDist&, uint64_t id, const MiOne& mi) {
            double a1 = mi.u_y_x2q, c = mi.u_y2_x2q, a3 = mi.ux2q_y;
            for (size_t i = 0; i < slices.size(); ++i) {
                double r0 = slices[i];
                double r1m = std::min(a1, a3 - r0);
                if (r1m < -1e-12) continue;
                double re =
                    std::min({pos(r1m), pos(a1 - c), pos(a3 - c - r0)});
                fronts[i].insert(pos(r1m), re, id);
            }
        });

    RegionTrace tr;
    tr.provenance = Provenance::inner;
    tr.grid_desc = su.desc;
    for (size_t i = 0; i < slices.size(); ++i)
        for (auto& [r1, rest] : fronts[i].m) {
            tr.points.push_back({slices[i], r1, 0.0, rest.first, 0.0});
            tr.grid_ids.push_back((int64_t)rest.second);
        }
    return tr;
}

RegionTrace outer_form_scan(const GmacChannel& ch, const GridOptions& opts,
                            const R0Grid& r0s) {
    std::vector<double> slices = r0s.values();
    std::vector<Front2> fronts(slices.size());
    ScanSetup su = scan_one(
        ch, opts, false, true,
        [&](const OneMessageDist&, uint64_t id, const MiOne& mi) {
            double a1 = mi.u_y_x2q, c = mi.u_y2_x2q, a3 = mi.ux2q_y;
            for (size_t i = 0; i < slices.size(); ++i) {
                double r0 = slices[i];
                double r1m = std::min(a1, a3 - r0);
                double re = std::min({r1m, a1 - c, a3 - c - r0});
                if (r1m < -1e-12 || re < -1e-12) continue;
                fronts[i].insert(pos(r1m), pos(re), id);
            }
        });

    RegionTrace tr;
    tr.provenance = Provenance::outer;
    tr.grid_desc = su.desc;
    for (size_t i = 0; i < slices.size(); ++i)
        for (auto& [r1, rest] : fronts[i].m) {
            tr.points.push_back({slices[i], r1, 0.0, rest.first, 0.0});
            tr.grid_ids.push_back((int64_t)rest.second);
        }
    return tr;
}

bool in_cpmac(double r0, double r1, double r2, const MiTwo& mi, double tol) {
    return r0 >= -tol && r1 >= -tol && r2 >= -tol && r1 <= mi.m1 + tol &&
           r2 <= mi.m2 + tol && r1 + r2 <= mi.m12 + tol &&
           r0 + r1 + r2 <= mi.m012 + tol;
}

namespace {

void require_cpmac(double r0, double r1, double r2, const MiTwo& mi) {
    if (!in_cpmac(r0, r1, r2, mi, 1e-9))
        throw std::invalid_argument(
            "(R0, R1, R2) outside the decoding region of this bundle");
}

}  // namespace

bool equiv_explicit_contains(double r0, double r1, double r2, const MiTwo& mi,
                             double r1e, double r2e, double tol) {
    require_cpmac(r0, r1, r2, mi);
    if (r1e < -tol || r2e < -tol) return false;
    bool l1 = r1e <= r1 + tol && r2e <= r2 + tol &&
              r1e <= pos(mi.m1 - mi.c1) + tol &&
              r1e <= pos(mi.m12 - r2 - mi.c1) + tol &&
              r1e <= pos(mi.m012 - r0 - r2 - mi.c1) + tol &&
              r2e <= pos(mi.m2 - mi.c2) + tol &&
              r2e <= pos(mi.m12 - r1 - mi.c2) + tol &&
              r2e <= pos(mi.m012 - r0 - r1 - mi.c2) + tol &&
              r1e + r2e <= pos(mi.m12 - mi.c1 - mi.c2) + tol &&
              r1e + r2e <= pos(mi.m012 - r0 - mi.c1 - mi.c2) + tol;
    if (l1) return true;
    bool l2 = std::abs(r2e) <= tol && r1e <= r1 + tol &&
              r1e <= pos(mi.m1 - mi.c1) + tol &&
              r1e <= pos(mi.m12 - r2 - mi.c1) + tol &&
              r1e <= pos(mi.m012 - r0 - r2 - mi.c1) + tol;
    if (l2) return true;
    return std::abs(r1e) <= tol && r2e <= r2 + tol &&
           r2e <= pos(mi.m2 - mi.c2) + tol &&
           r2e <= pos(mi.m12 - r1 - mi.c2) + tol &&
           r2e <= pos(mi.m012 - r0 - r1 - mi.c2) + tol;
}

bool equiv_union_contains(double r0, double r1, double r2, const MiTwo& mi,
                          double r1e, double r2e, double tol) {
    require_cpmac(r0, r1, r2, mi);
    if (r1e < -tol || r2e < -tol) return false;
    if (r1e > r1 + tol || r2e > r2 + tol) return false;
    // Witness reduction: a positive equivocation component forces the
    // auxiliary rate up to r_e + leak; a zero component is served by
    // auxiliary rate 0, which never constrains.
    double a = r1e > tol ? r1e + mi.c1 : 0.0;
    double b = r2e > tol ? r2e + mi.c2 : 0.0;
    return a <= mi.m1 + tol && a + r2 <= mi.m12 + tol &&
           r0 + a + r2 <= mi.m012 + tol && b <= mi.m2 + tol &&
           r1 + b <= mi.m12 + tol && r0 + r1 + b <= mi.m012 + tol &&
           a + b <= mi.m12 + tol && r0 + a + b <= mi.m012 + tol;
}

std::vector<RatePoint> equivocation_set_explicit(double r0, double r1,
                                                 double r2, const MiTwo& mi) {
    require_cpmac(r0, r1, r2, mi);
    double ux = std::min({r1, pos(mi.m1 - mi.c1), pos(mi.m12 - r2 - mi.c1),
                          pos(mi.m012 - r0 - r2 - mi.c1)});
    double uy = std::min({r2, pos(mi.m2 - mi.c2), pos(mi.m12 - r1 - mi.c2),
                          pos(mi.m012 - r0 - r1 - mi.c2)});
    double s = std::min(pos(mi.m12 - mi.c1 - mi.c2),
                        pos(mi.m012 - r0 - mi.c1 - mi.c2));
    std::vector<std::vector<double>> cloud;
    auto add = [&](double x, double y) { cloud.push_back({x, y}); };
    // The joint part: box [0,ux] x [0,uy] cut by x + y <= s.
    double xa = std::min(ux, s);
    add(xa, std::min(uy, s - xa));
    double yb = std::min(uy, s);
    add(std::min(ux, s - yb), yb);
    // The axis parts reach the full single-user caps.
    add(ux, 0.0);
    add(0.0, uy);
    dominance_prune(cloud, 2);
    std::vector<RatePoint> out;
    for (auto& c : cloud) out.push_back({r0, r1, r2, c[0], c[1]});
    return out;
}

std::vector<RatePoint> equivocation_set_union_form(double r0, double r1,
                                                   double r2, const MiTwo& mi,
                                                   int denom) {
    require_cpmac(r0, r1, r2, mi);
    if (denom < 1) throw std::invalid_argument("sampling denominator must be >= 1");
    double rp1_max = std::min({mi.m1, mi.m12 - r2, mi.m012 - r0 - r2});
    std::vector<std::vector<double>> cloud;
    for (int i = 0; i <= denom; ++i) {
        double rp1 = rp1_max * i / denom;
        if (rp1 < 0.0) continue;
        double rp2 = std::min({mi.m2, mi.m12 - r1, mi.m012 - r0 - r1,
                               mi.m12 - rp1, mi.m012 - r0 - rp1});
        if (rp2 < 0.0) continue;
        cloud.push_back({std::min(r1, pos(rp1 - mi.c1)),
                         std::min(r2, pos(rp2 - mi.c2))});
    }
    if (cloud.empty()) cloud.push_back({0.0, 0.0});
    dominance_prune(cloud, 2);
    std::vector<RatePoint> out;
    for (auto& c : cloud) out.push_back({r0, r1, r2, c[0], c[1]});
    return out;
}

EquivFormsReport verify_equivocation_forms(int instances, int grid_n,
                                     uint64_t seed) {
    if (instances < 1 || grid_n < 1)
        throw std::invalid_argument("need at least one instance and one grid cell");
    EquivFormsReport rep;
    rep.instances = instances;
    Rng root{seed};
    for (int i = 0; i < instances; ++i) {
        Rng rng = root.substream((uint64_t)i);
        MiTwo mi;
        double r0 = 0.0, r1 = 0.0, r2 = 0.0;
        if (i > 0) {
            mi.m1 = 1.5 * rng.uniform01();
            mi.m2 = 1.5 * rng.uniform01();
            double lo = std::max(mi.m1, mi.m2);
            mi.m12 = lo + rng.uniform01() * (mi.m1 + mi.m2 - lo);
            mi.m012 = mi.m12 + rng.uniform01();
            mi.c1 = 1.2 * rng.uniform01();
            mi.c2 = 1.2 * rng.uniform01();
            r1 = rng.uniform01() * std::min({mi.m1, mi.m12, mi.m012});
            r2 = rng.uniform01() * std::min({mi.m2, mi.m12 - r1, mi.m012 - r1});
            r0 = rng.uniform01() * (mi.m012 - r1 - r2);
        }
        for (int gx = 0; gx < grid_n; ++gx) {
            double fx = grid_n > 1 ? (double)gx / (grid_n - 1) : 0.0;
            for (int gy = 0; gy < grid_n; ++gy) {
                double fy = grid_n > 1 ? (double)gy / (grid_n - 1) : 0.0;
                double r1e = fx * r1, r2e = fy * r2;
                bool e = equiv_explicit_contains(r0, r1, r2, mi, r1e, r2e, 1e-12);
                bool u = equiv_union_contains(r0, r1, r2, mi, r1e, r2e, 1e-12);
                ++rep.cells;
                if (e != u) {
                    ++rep.disagreements;
                    if (rep.first_counterexample.empty()) {
                        char buf[512];
                        std::snprintf(
                            buf, sizeof buf,
                            "instance %d: m1=%.17g m2=%.17g m12=%.17g "
                            "m012=%.17g c1=%.17g c2=%.17g R=(%.17g,%.17g,%.17g) "
                            "point=(%.17g,%.17g) explicit=%d union=%d",
                            i, mi.m1, mi.m2, mi.m12, mi.m012, mi.c1, mi.c2, r0,
                            r1, r2, r1e, r2e, (int)e, (int)u);
                        rep.first_counterexample = buf;
                    }
                }
            }
        }
    }
    return rep;
}

namespace {

struct TwoFrontEntry {
    double key[6];
    uint64_t id;
    MiTwo mi;
};

// Streaming antichain under componentwise <= of
// (m1, m2, m12, m012, -c1, -c2).
struct Front6 {
    std::vector<TwoFrontEntry> v;

    void insert(const MiTwo& mi, uint64_t id) {
        TwoFrontEntry e;
        e.key[0] = mi.m1;
        e.key[1] = mi.m2;
        e.key[2] = mi.m12;
        e.key[3] = mi.m012;
        e.key[4] = -mi.c1;
        e.key[5] = -mi.c2;
        e.id = id;
        e.mi = mi;
        for (auto& o : v) {
            bool dom = true;
            for (int k = 0; k < 6; ++k)
                if (o.key[k] < e.key[k] - 1e-15) { dom = false; break; }
            if (dom) return;
        }
        v.erase(std::remove_if(v.begin(), v.end(),
                               [&](const TwoFrontEntry& o) {
                                   for (int k = 0; k < 6; ++k)
                                       if (e.key[k] < o.key[k] - 1e-15)
                                           return false;
                                   return true;
                               }),
                v.end());
        v.push_back(e);
    }
};

template <class F>
ScanSetup scan_two(const GmacChannel& ch, const GridOptions& opts, F&& f) {
    ScanSetup su;
    su.nq = opts.nq > 0 ? opts.nq : 2;
    int nu = opts.nu > 0 ? opts.nu : 2;
    int nv = opts.nv > 0 ? opts.nv : 2;
    su.nu = nu;
    std::vector<SimplexBlock> blocks = {{1, su.nq},
                                        {su.nq, nu},
                                        {nu, ch.nx1},
                                        {su.nq, nv},
                                        {nv, ch.nx2}};
    su.denom = pick_denom(blocks, opts.denom, opts.budget);
    su.points = lattice_count(blocks, su.denom, UINT64_MAX - 1);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "p(q)p(u|q)p(x1|u)p(v|q)p(x2|v): |Q|=%d, |U|=%d, |V|=%d, "
                  "step=1/%d, points=%llu",
                  su.nq, nu, nv, su.denom, (unsigned long long)su.points);
    su.desc = buf;

    TwoMessageDist d;
    d.nq = su.nq;
    d.nu = nu;
    d.nv = nv;
    d.nx1 = ch.nx1;
    d.nx2 = ch.nx2;
    d.q.assign(su.nq, 0.0);
    d.u_given_q.assign(su.nq * nu, 0.0);
    d.x1_given_u.assign(nu * ch.nx1, 0.0);
    d.v_given_q.assign(su.nq * nv, 0.0);
    d.x2_given_v.assign(nv * ch.nx2, 0.0);

    LatticeScan scan(blocks, su.denom);
    uint64_t id = 0;
    int b1 = 1, b2 = b1 + su.nq, b3 = b2 + nu, b4 = b3 + su.nq;
    auto fill = [&](int row, const double* p, int cols) {
        if (row == 0)
            std::copy(p, p + cols, d.q.begin());
        else if (row < b2)
            std::copy(p, p + cols, d.u_given_q.begin() + (row - b1) * nu);
        else if (row < b3)
            std::copy(p, p + cols, d.x1_given_u.begin() + (row - b2) * ch.nx1);
        else if (row < b4)
            std::copy(p, p + cols, d.v_given_q.begin() + (row - b3) * nv);
        else
            std::copy(p, p + cols, d.x2_given_v.begin() + (row - b4) * ch.nx2);
    };
    while (scan.next(fill, &id)) f(d, id, mi_bundle_two_message(ch, d));
    return su;
}

// Dominance-prunes one R0 slice (keeping ids aligned) and appends the
// survivors. Pruning never crosses slices so per-R0 exports stay complete.
void prune_slice_into(RegionTrace& dst, const std::vector<RatePoint>& pts,
                      const std::vector<int64_t>& ids) {
    std::vector<std::vector<double>> tagged;
    tagged.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
        tagged.push_back({pts[i].r0, pts[i].r1, pts[i].r2, pts[i].r1e,
                          pts[i].r2e, (double)i});
    dominance_prune(tagged, 5);
    for (auto& t : tagged) {
        size_t i = (size_t)t[5];
        dst.points.push_back(pts[i]);
        dst.grid_ids.push_back(ids[i]);
    }
}

// Pareto corners of the decoding pentagon at sum cap s.
std::vector<std::pair<double, double>> pentagon_corners(double m1, double m2,
                                                        double s) {
    std::vector<std::pair<double, double>> c;
    if (s < 0.0 || m1 < 0.0 || m2 < 0.0) return c;
    double xa = std::min(m1, s);
    c.push_back({xa, std::min(m2, s - xa)});
    double yb = std::min(m2, s);
    std::pair<double, double> other = {std::min(m1, s - yb), yb};
    if (std::abs(other.first - c[0].first) > 1e-15 ||
        std::abs(other.second - c[0].second) > 1e-15)
        c.push_back(other);
    return c;
}

}  // namespace

RegionTrace two_message_inner_bound(const GmacChannel& ch,
                                    const GridOptions& opts,
                                    const R0Grid& r0s) {
    Front6 front;
    ScanSetup su =
        scan_two(ch, opts, [&](const TwoMessageDist&, uint64_t id,
                               const MiTwo& mi) { front.insert(mi, id); });
    RegionTrace tr;
    tr.provenance = Provenance::inner;
    tr.grid_desc = su.desc;
    for (double r0 : r0s.values()) {
        std::vector<RatePoint> slice;
        std::vector<int64_t> ids;
        for (auto& e : front.v) {
            const MiTwo& mi = e.mi;
            double s = std::min(mi.m12, mi.m012 - r0);
            if (s < -1e-12) continue;
            for (auto& [r1, r2] : pentagon_corners(mi.m1, mi.m2, pos(s))) {
                for (auto& p : equivocation_set_explicit(r0, r1, r2, mi)) {
                    slice.push_back(p);
                    ids.push_back((int64_t)e.id);
                }
            }
        }
        prune_slice_into(tr, slice, ids);
    }
    return tr;
}

std::vector<RatePoint> secrecy_slice_two(const MiTwo& mi, double r0) {
    std::vector<RatePoint> pts;
    auto add = [&](double r1, double r2) {
        pts.push_back({r0, r1, r2, r1, r2});
    };
    double ux = mi.m1 - mi.c1;
    double uy = mi.m2 - mi.c2;
    // Joint sub-region: both users secret simultaneously.
    double s =
        std::min(mi.m12 - mi.c1 - mi.c2, mi.m012 - mi.c1 - mi.c2 - r0);
    if (ux >= -1e-12 && uy >= -1e-12 && s >= -1e-12)
        for (auto& [r1, r2] : pentagon_corners(pos(ux), pos(uy), pos(s)))
            add(r1, r2);
    // Single-user sub-regions.
    double s1 = std::min(ux, mi.m012 - mi.c1 - r0);
    if (ux >= -1e-12 && s1 >= -1e-12) add(pos(s1), 0.0);
    double s2 = std::min(uy, mi.m012 - mi.c2 - r0);
    if (uy >= -1e-12 && s2 >= -1e-12) add(0.0, pos(s2));
    std::vector<std::vector<double>> tagged;
    tagged.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
        tagged.push_back({pts[i].r1, pts[i].r2, (double)i});
    dominance_prune(tagged, 2);
    std::vector<RatePoint> out;
    out.reserve(tagged.size());
    for (auto& t : tagged) out.push_back(pts[(size_t)t[2]]);
    return out;
}

RegionTrace secrecy_rate_region_two(const GmacChannel& ch,
                                    const GridOptions& opts,
                                    const R0Grid& r0s) {
    Front6 front;
    ScanSetup su =
        scan_two(ch, opts, [&](const TwoMessageDist&, uint64_t id,
                               const MiTwo& mi) { front.insert(mi, id); });
    RegionTrace tr;
    tr.provenance = Provenance::secrecy;
    tr.grid_desc = su.desc;
    std::vector<RatePoint> slice;
    std::vector<int64_t> ids;
    for (double r0 : r0s.values()) {
        slice.clear();
        ids.clear();
        for (auto& e : front.v)
            for (auto& p : secrecy_slice_two(e.mi, r0)) {
                slice.push_back(p);
                ids.push_back((int64_t)e.id);
            }
        prune_slice_into(tr, slice, ids);
    }
    return tr;
}

std::pair<bool, bool> positive_secrecy_possible(const GmacChannel& ch,
                                                const GridOptions& opts) {
    bool u1 = false, u2 = false;
    scan_two(ch, opts, [&](const TwoMessageDist&, uint64_t, const MiTwo& mi) {
        if (mi.m1 - mi.c1 > 1e-9) u1 = true;
        if (mi.m2 - mi.c2 > 1e-9) u2 = true;
    });
    return {u1, u2};
}

std::vector<CaseWitness> leakage_case_witnesses(const GmacChannel& ch,
                                                const GridOptions& opts,
                                                std::string* grid_desc) {
    std::vector<CaseWitness> out(4);
    for (int i = 0; i < 4; ++i) out[i].case_id = i + 1;
    ScanSetup su = scan_two(ch, opts, [&](const TwoMessageDist& d, uint64_t id,
                           const MiTwo& mi) {
        if (mi.m1 <= 1e-9 || mi.m2 <= 1e-9) return;
        bool pv = mi.v_y_q > mi.c2;
        bool pu = mi.u_y_q > mi.c1;
        int idx = pv ? (pu ? 0 : 2) : (pu ? 1 : 3);
        if (!out[idx].found) {
            out[idx].found = true;
            out[idx].grid_id = id;
            out[idx].dist = d;
            out[idx].mi = mi;
        }
    });
    if (grid_desc) *grid_desc = su.desc;
    return out;
}

std::vector<RatePoint> convexify(const std::vector<RatePoint>& pts) {
    if (pts.empty()) throw std::invalid_argument("convexify: empty input");
    std::vector<std::vector<double>> cloud;
    for (auto& p : pts) cloud.push_back({p.r0, p.r1, p.r2, p.r1e, p.r2e});
    dominance_prune(cloud, 5);
    bool changed = true;
    while (changed && cloud.size() > 1) {
        changed = false;
        for (size_t i = 0; i < cloud.size(); ++i) {
            std::vector<std::vector<double>> others;
            for (size_t j = 0; j < cloud.size(); ++j)
                if (j != i) others.push_back(cloud[j]);
            if (downset_hull_member(others, cloud[i], 1e-12)) {
                cloud.erase(cloud.begin() + i);
                changed = true;
                break;
            }
        }
    }
    std::vector<RatePoint> out;
    for (auto& c : cloud) out.push_back({c[0], c[1], c[2], c[3], c[4]});
    return out;
}

bool contains(const RegionTrace& tr, const RatePoint& p, double tol) {
    if (tr.points.empty())
        throw std::invalid_argument("contains: empty region trace");
    std::vector<std::vector<double>> cloud;
    for (auto& q : tr.points) cloud.push_back({q.r0, q.r1, q.r2, q.r1e, q.r2e});
    dominance_prune(cloud, 5);
    return downset_hull_member(cloud, {p.r0, p.r1, p.r2, p.r1e, p.r2e}, tol);
}

}
