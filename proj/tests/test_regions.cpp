#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gmacsec/binary_entropy.hpp"
#include "gmacsec/channel.hpp"
#include "gmacsec/regions.hpp"
#include "gmacsec/rng.hpp"

using namespace gmacsec;

namespace {

// oracle: mpmath, 40 digits
const double H_QUARTER = 0.8112781244591328639;   // h(1/4)
const double H_03 = 0.88129089923069262;          // h(0.3)
const double RE_BOUND_025_011 = 0.42387682634845414;  // h(1/4)+h(.11)-h(.305)
const double CS_011_HALF = 0.28642351814083731;   // p=0.11, R0=0.5
const double LEAK_03 = 0.11870910076930738;       // 1 - h(0.3)

OneMessageDist superposition_dist(double alpha) {
    // Q uniform, X2 = 1, X1 = Q xor Bern(alpha), U = X1.
    OneMessageDist d;
    d.nq = 2;
    d.nu = 2;
    d.nx1 = 2;
    d.nx2 = 2;
    d.qx2 = {0.0, 0.5, 0.0, 0.5};
    d.u_given_q = {1.0 - alpha, alpha, alpha, 1.0 - alpha};
    d.x1_given_u = {1.0, 0.0, 0.0, 1.0};
    return d;
}

OneMessageDist uniform_x1_dist() {
    // X2 = 1, U = X1 uniform, no time sharing.
    OneMessageDist d;
    d.nq = 1;
    d.nu = 2;
    d.nx1 = 2;
    d.nx2 = 2;
    d.qx2 = {0.0, 1.0};
    d.u_given_q = {0.5, 0.5};
    d.x1_given_u = {1.0, 0.0, 0.0, 1.0};
    return d;
}

void random_row(Rng& rng, double* p, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        p[i] = 1e-3 + rng.uniform01();
        s += p[i];
    }
    for (int i = 0; i < n; ++i) p[i] /= s;
}

OneMessageDist random_one_dist(Rng& rng, int nx1, int nx2) {
    OneMessageDist d;
    d.nq = 2;
    d.nu = 2;
    d.nx1 = nx1;
    d.nx2 = nx2;
    d.qx2.resize(d.nq * nx2);
    d.u_given_q.resize(d.nq * d.nu);
    d.x1_given_u.resize(d.nu * nx1);
    random_row(rng, d.qx2.data(), d.nq * nx2);
    for (int q = 0; q < d.nq; ++q) random_row(rng, d.u_given_q.data() + q * d.nu, d.nu);
    for (int u = 0; u < d.nu; ++u) random_row(rng, d.x1_given_u.data() + u * nx1, nx1);
    return d;
}

GmacChannel random_channel(Rng& rng, int nx1, int nx2, int ny, int ny1, int ny2) {
    std::vector<double> t((size_t)nx1 * nx2 * ny * ny1 * ny2);
    size_t cells = (size_t)ny * ny1 * ny2;
    for (size_t s = 0; s < t.size(); s += cells) {
        double sum = 0.0;
        for (size_t c = 0; c < cells; ++c) {
            t[s + c] = 1e-3 + rng.uniform01();
            sum += t[s + c];
        }
        for (size_t c = 0; c < cells; ++c) t[s + c] /= sum;
    }
    return make_channel(nx1, nx2, ny, ny1, ny2, std::move(t));
}

// y2 = x1 & x2 exactly, y = (x1 & x2) through a BSC(p): the eavesdropper is
// strictly less noisy than the destination.
GmacChannel reversed_binary(double p) {
    std::vector<double> t(2 * 2 * 2 * 1 * 2, 0.0);
    GmacChannel proto;
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2) {
            int z = x1 & x2;
            for (int y = 0; y < 2; ++y)
                t[(((size_t)(x1 * 2 + x2) * 2 + y) * 1 + 0) * 2 + z] =
                    y == z ? 1.0 - p : p;
        }
    return make_channel(2, 2, 2, 1, 2, std::move(t));
}

// Replays the one-message lattice of `opts` on `ch` to the given scan id and
// returns that distribution.
OneMessageDist dist_at_scan_id(const GmacChannel& ch, const GridOptions& opts,
                               uint64_t want) {
    int nq = opts.nq > 0 ? opts.nq : 2;
    int nu = opts.nu > 0 ? opts.nu : ch.nx1 + 1;
    std::vector<SimplexBlock> blocks = {{1, nq * ch.nx2}, {nq, nu}, {nu, ch.nx1}};
    int denom = pick_denom(blocks, opts.denom, opts.budget);
    OneMessageDist d;
    d.nq = nq;
    d.nu = nu;
    d.nx1 = ch.nx1;
    d.nx2 = ch.nx2;
    d.qx2.resize(nq * ch.nx2);
    d.u_given_q.resize(nq * nu);
    d.x1_given_u.resize(nu * ch.nx1);
    LatticeScan scan(blocks, denom);
    uint64_t id = 0;
    auto fill = [&](int row, const double* p, int cols) {
        if (row == 0)
            std::copy(p, p + cols, d.qx2.begin());
        else if (row <= nq)
            std::copy(p, p + cols, d.u_given_q.begin() + (row - 1) * nu);
        else
            std::copy(p, p + cols, d.x1_given_u.begin() + (row - nq - 1) * ch.nx1);
    };
    while (scan.next(fill, &id))
        if (id == want) return d;
    throw std::runtime_error("scan id out of range");
}

MiTwo hand_bundle() {
    MiTwo mi;
    mi.m1 = 1.0;
    mi.m2 = 1.0;
    mi.m12 = 1.5;
    mi.m012 = 2.0;
    mi.c1 = 0.2;
    mi.c2 = 0.3;
    return mi;
}

}  // namespace

TEST_CASE("superposition input reproduces the binary identities") {
    GmacChannel ch = builtin_degraded_binary(0.11);
    MiOne mi = mi_bundle_one_message(ch, superposition_dist(0.25));
    CHECK(mi.u_y_x2q == doctest::Approx(H_QUARTER).epsilon(1e-9));
    CHECK(mi.ux2q_y == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mi.u_y_x2q - mi.u_y2_x2q ==
          doctest::Approx(RE_BOUND_025_011).epsilon(1e-9));

    // alpha = 1/2 washes out the eavesdropper completely: the secrecy gap
    // collapses to h(p).
    MiOne half = mi_bundle_one_message(ch, superposition_dist(0.5));
    CHECK(half.u_y_x2q == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(half.u_y_x2q - half.u_y2_x2q ==
          doctest::Approx(binary_entropy(0.11)).epsilon(1e-9));
}

TEST_CASE("multiplier: full rate with full secrecy") {
    GmacChannel ch = builtin_multiplier_bias();
    OneMessageDist d = uniform_x1_dist();
    MiOne mi = mi_bundle_one_message(ch, d);
    CHECK(mi.u_y_x2q == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mi.u_y2_x2q == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mi.ux2q_y == doctest::Approx(1.0).epsilon(1e-12));

    auto pts = inner_bound_one(ch, d, {0.0, 1.0, 0.5});
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].r1 == doctest::Approx(1.0));
    CHECK(pts[0].r1e == doctest::Approx(1.0));
    CHECK(pts[1].r1 == doctest::Approx(0.5));
    CHECK(pts[1].r1e == doctest::Approx(0.5));
    CHECK(pts[2].r1 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("inner slices clamp where outer slices vanish") {
    GmacChannel ch = reversed_binary(0.3);
    OneMessageDist d = uniform_x1_dist();
    MiOne mi = mi_bundle_one_message(ch, d);
    CHECK(mi.u_y_x2q < mi.u_y2_x2q);  // eavesdropper strictly better

    R0Grid grid{0.0, 0.1, 0.05};
    auto inner = inner_bound_one(ch, d, grid);
    REQUIRE(inner.size() == 3);
    for (auto& p : inner) CHECK(p.r1e == 0.0);
    CHECK(outer_bound_one(ch, d, grid).empty());
}

TEST_CASE("outer evaluator with V := Q coincides with the inner one on a degraded channel") {
    GmacChannel ch = builtin_degraded_binary(0.2);
    Rng rng{811};
    R0Grid grid{0.0, 1.0, 0.2};
    for (int trial = 0; trial < 5; ++trial) {
        OneMessageDist d = random_one_dist(rng, 2, 2);
        MiOne mi = mi_bundle_one_message(ch, d);
        auto inner = inner_bound_one(ch, d, grid);
        auto outer = outer_bound_one(ch, d, grid);
        // The outer slice disappears once R0 exceeds I(U,X2,Q;Y) - I(U;Y2|X2,Q);
        // wherever it exists it must match the inner slice exactly.
        size_t expect = 0;
        for (double r0 : grid.values())
            if (mi.ux2q_y - mi.u_y2_x2q - r0 >= -1e-12 &&
                std::min(mi.u_y_x2q, mi.ux2q_y - r0) >= -1e-12)
                ++expect;
        CHECK(outer.size() == expect);
        for (auto& op : outer) {
            bool matched = false;
            for (auto& ip : inner)
                if (ip.r0 == op.r0) {
                    matched = true;
                    CHECK(ip.r1 == doctest::Approx(op.r1).epsilon(1e-12));
                    CHECK(ip.r1e == doctest::Approx(op.r1e).epsilon(1e-12));
                }
            CHECK(matched);
        }
    }
}

TEST_CASE("outer rate term defaults to the conditional bound") {
    Rng rng{4242};
    for (int trial = 0; trial < 6; ++trial) {
        GmacChannel ch = random_channel(rng, 2, 2, 2, 2, 2);
        OneMessageDist d = random_one_dist(rng, 2, 2);
        MiOne mi = mi_bundle_one_message(ch, d);
        CHECK(outer_rate_term(ch, d) == doctest::Approx(mi.u_y_x2q).epsilon(1e-9));
        // explicit identity kernel, same answer
        d.nv = d.nq;
        d.v_given_q.assign(d.nq * d.nq, 0.0);
        for (int q = 0; q < d.nq; ++q) d.v_given_q[q * d.nq + q] = 1.0;
        CHECK(outer_rate_term(ch, d) == doctest::Approx(mi.u_y_x2q).epsilon(1e-9));
    }
}

TEST_CASE("secrecy hull matches a brute-force sweep of the same lattice") {
    Rng rng{99};
    GmacChannel ch = random_channel(rng, 2, 2, 2, 1, 2);
    GridOptions opts;
    opts.denom = 2;
    opts.nu = 2;
    RegionTrace tr = secrecy_capacity_region_one(ch, opts);
    REQUIRE(!tr.points.empty());

    // Enumerate the identical lattice through the generic evaluator.
    std::vector<SimplexBlock> blocks = {{1, 4}, {2, 2}, {2, 2}};
    OneMessageDist d;
    d.nq = 2;
    d.nu = 2;
    d.nx1 = 2;
    d.nx2 = 2;
    d.qx2.resize(4);
    d.u_given_q.resize(4);
    d.x1_given_u.resize(4);
    LatticeScan scan(blocks, 2);
    uint64_t id = 0;
    double best0 = 0.0, bmax = 0.0;
    std::vector<std::pair<double, double>> cloud;
    auto fill = [&](int row, const double* p, int cols) {
        if (row == 0)
            std::copy(p, p + cols, d.qx2.begin());
        else if (row <= 2)
            std::copy(p, p + cols, d.u_given_q.begin() + (row - 1) * 2);
        else
            std::copy(p, p + cols, d.x1_given_u.begin() + (row - 3) * 2);
    };
    while (scan.next(fill, &id)) {
        MiOne mi = mi_bundle_one_message(ch, d);
        double a = mi.u_y_x2q - mi.u_y2_x2q;
        double b = mi.ux2q_y - mi.u_y2_x2q;
        if (a < 0.0 || b < 0.0) continue;
        cloud.push_back({a, b});
        best0 = std::max(best0, std::min(a, b));
        bmax = std::max(bmax, b);
    }
    CHECK(trace_boundary_r1(tr, 0.0) == doctest::Approx(best0).epsilon(1e-9));
    CHECK(trace_boundary_r1(tr, bmax) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(trace_boundary_r1(tr, bmax + 0.01) == -1.0);
    for (double r0 : {0.25 * bmax, 0.5 * bmax, 0.75 * bmax})
        for (auto& [a, b] : cloud) {
            double per_dist = std::min(a, b - r0);
            if (per_dist > 0.0)
                CHECK(trace_boundary_r1(tr, r0) >= per_dist - 1e-9);
        }
}

TEST_CASE("secrecy trace vertices map back to generating grid points") {
    GmacChannel ch = builtin_multiplier_bias();
    GridOptions opts;
    RegionTrace tr = secrecy_capacity_region_one(ch, opts);
    REQUIRE(!tr.points.empty());
    REQUIRE(tr.points.size() == tr.grid_ids.size());

    // The multiplier line R1 = 1 - R0, exactly on the lattice.
    for (double r0 : {0.0, 0.25, 0.5, 0.75, 1.0})
        CHECK(trace_boundary_r1(tr, r0) == doctest::Approx(1.0 - r0).epsilon(1e-9));

    for (size_t i = 0; i < tr.points.size(); ++i) {
        REQUIRE(tr.grid_ids[i] >= 0);
        OneMessageDist d = dist_at_scan_id(ch, opts, (uint64_t)tr.grid_ids[i]);
        MiOne mi = mi_bundle_one_message(ch, d);
        double a = mi.u_y_x2q - mi.u_y2_x2q;
        double b = mi.ux2q_y - mi.u_y2_x2q;
        // every vertex sits on its generator's pentagon boundary
        CHECK(tr.points[i].r1 ==
              doctest::Approx(std::min(a, b - tr.points[i].r0)).epsilon(1e-9));
    }
}

TEST_CASE("fixed common rate: grid value approaches the closed form from below") {
    GmacChannel ch = builtin_degraded_binary(0.11);
    GridOptions opts;
    double v = secrecy_capacity_at_R0(ch, 0.5, opts);
    CHECK(v <= CS_011_HALF + 1e-9);
    CHECK(v >= CS_011_HALF - 5e-3);
}

TEST_CASE("degraded scan touches the closed-form boundary at on-lattice alpha") {
    GmacChannel ch = builtin_degraded_binary(0.3);
    GridOptions opts;
    opts.denom = 8;
    bool ok = false;
    RegionTrace tr = degraded_region(ch, opts, {0.0, 0.5, 0.25}, &ok);
    CHECK(ok);
    REQUIRE(!tr.points.empty());

    auto slice_max = [&](double r0, bool re_axis) {
        double best = -1.0;
        for (auto& p : tr.points)
            if (p.r0 == r0) best = std::max(best, re_axis ? p.r1e : p.r1);
        return best;
    };
    // At R0 = 0 the uniform input is on the lattice and is optimal: R1 = 1
    // with equivocation h(0.3).
    CHECK(slice_max(0.0, false) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(slice_max(0.0, true) == doctest::Approx(H_03).epsilon(1e-9));
    CHECK(slice_max(0.0, true) >= slice_max(0.25, true) - 1e-12);
    CHECK(slice_max(0.25, true) >= slice_max(0.5, true) - 1e-12);
}

TEST_CASE("equivocation corners on a hand-built bundle") {
    MiTwo mi = hand_bundle();
    double r0 = 0.3, r1 = 0.7, r2 = 0.6;
    REQUIRE(in_cpmac(r0, r1, r2, mi, 1e-12));

    CHECK(equiv_explicit_contains(r0, r1, r2, mi, 0.7, 0.3, 1e-12));
    CHECK(!equiv_explicit_contains(r0, r1, r2, mi, 0.7, 0.5, 1e-12));
    CHECK(equiv_explicit_contains(r0, r1, r2, mi, 0.7, 0.0, 1e-12));
    CHECK(equiv_union_contains(r0, r1, r2, mi, 0.7, 0.3, 1e-12));
    CHECK(!equiv_union_contains(r0, r1, r2, mi, 0.7, 0.5, 1e-12));
    CHECK(equiv_union_contains(r0, r1, r2, mi, 0.7, 0.0, 1e-12));

    auto corners = equivocation_set_explicit(r0, r1, r2, mi);
    REQUIRE(corners.size() == 2);
    CHECK(corners[0].r1e == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(corners[0].r2e == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(corners[1].r1e == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(corners[1].r2e == doctest::Approx(0.5).epsilon(1e-12));

    // sampled union-form corners stay inside the explicit set and get close
    // to its corners
    auto sampled = equivocation_set_union_form(r0, r1, r2, mi);
    for (auto& p : sampled)
        CHECK(equiv_explicit_contains(r0, r1, r2, mi, p.r1e, p.r2e, 1e-9));
    for (auto& c : corners) {
        double gap = 1e9;
        for (auto& p : sampled)
            gap = std::min(gap, std::max(c.r1e - p.r1e, c.r2e - p.r2e));
        CHECK(gap < 1e-2);
    }

    CHECK_THROWS_AS(equivocation_set_explicit(0.0, 1.2, 0.0, mi),
                    std::invalid_argument);
}

TEST_CASE("explicit and union forms agree on random instances") {
    EquivFormsReport rep = verify_equivocation_forms(200, 32, 20260822);
    CHECK(rep.instances == 200);
    CHECK(rep.cells == 200LL * 32 * 32);
    CHECK(rep.disagreements == 0);
    CHECK(rep.first_counterexample.empty());
}

TEST_CASE("two-message bundle specializes to the one-message bundle with V := X2") {
    Rng rng{314159};
    for (int trial = 0; trial < 20; ++trial) {
        GmacChannel ch = random_channel(rng, 2, 2, 2, 2, 2);
        OneMessageDist od = random_one_dist(rng, 2, 2);
        MiOne one = mi_bundle_one_message(ch, od);

        TwoMessageDist td;
        td.nq = od.nq;
        td.nu = od.nu;
        td.nv = 2;
        td.nx1 = 2;
        td.nx2 = 2;
        td.q.assign(od.nq, 0.0);
        for (int q = 0; q < od.nq; ++q)
            for (int x2 = 0; x2 < 2; ++x2) td.q[q] += od.qx2[q * 2 + x2];
        td.v_given_q.resize(od.nq * 2);
        for (int q = 0; q < od.nq; ++q)
            for (int x2 = 0; x2 < 2; ++x2)
                td.v_given_q[q * 2 + x2] = od.qx2[q * 2 + x2] / td.q[q];
        td.x2_given_v = {1.0, 0.0, 0.0, 1.0};
        td.u_given_q = od.u_given_q;
        td.x1_given_u = od.x1_given_u;

        MiTwo two = mi_bundle_two_message(ch, td);
        CHECK(two.m1 == doctest::Approx(one.u_y_x2q).epsilon(1e-9));
        CHECK(two.m012 == doctest::Approx(one.ux2q_y).epsilon(1e-9));
        CHECK(two.c1 == doctest::Approx(one.u_y2_x2q).epsilon(1e-9));
        // the extra sum bound never binds for user 1
        CHECK(two.m12 >= two.m1 - 1e-9);
        for (double v : {two.m1, two.m2, two.m12, two.m012, two.c1, two.c2})
            CHECK(v >= 0.0);
    }
}

TEST_CASE("two-message traces on the multiplier reach both corner schemes") {
    GmacChannel ch = builtin_multiplier_bias();
    GridOptions opts;

    auto [u1, u2] = positive_secrecy_possible(ch, opts);
    CHECK(u1);
    CHECK(u2);

    RegionTrace sr = secrecy_rate_region_two(ch, opts, {0.0, 0.5, 0.5});
    bool corner1 = false, joint = false;
    for (auto& p : sr.points) {
        if (p.r0 == 0.0 && p.r1 >= 1.0 - 1e-9 && p.r1e >= 1.0 - 1e-9)
            corner1 = true;
        if (p.r0 == 0.0 && p.r1 >= 0.5 - 1e-9 && p.r2 >= 0.5 - 1e-9)
            joint = true;
        CHECK(p.r1e == doctest::Approx(p.r1).epsilon(1e-12));
        CHECK(p.r2e == doctest::Approx(p.r2).epsilon(1e-12));
    }
    CHECK(corner1);
    CHECK(joint);

    RegionTrace ib = two_message_inner_bound(ch, opts, {0.0, 0.0, 1.0});
    bool full = false;
    for (auto& p : ib.points)
        if (p.r1 >= 1.0 - 1e-9 && p.r1e >= 1.0 - 1e-9) full = true;
    CHECK(full);
}

TEST_CASE("leakage case witnesses classify consistently") {
    GmacChannel ch = builtin_multiplier_bias();
    GridOptions opts;
    auto ws = leakage_case_witnesses(ch, opts);
    REQUIRE(ws.size() == 4);
    CHECK(ws[0].found);  // both receivers beat the cross leakage somewhere
    for (auto& w : ws) {
        CHECK(w.case_id >= 1);
        CHECK(w.case_id <= 4);
        if (!w.found) continue;
        MiTwo mi = mi_bundle_two_message(ch, w.dist);
        bool pv = mi.v_y_q > mi.c2;
        bool pu = mi.u_y_q > mi.c1;
        int expect = pv ? (pu ? 1 : 3) : (pu ? 2 : 4);
        CHECK(w.case_id == expect);
        CHECK(mi.m1 > 1e-9);
        CHECK(mi.m2 > 1e-9);
    }
}

TEST_CASE("convexify and containment against the unit line") {
    GmacChannel ch = builtin_multiplier_bias();
    GridOptions opts;
    opts.denom = 2;
    opts.nu = 2;
    RegionTrace tr = secrecy_capacity_region_one(ch, opts);

    CHECK(contains(tr, {0.3, 0.7, 0.0, 0.0, 0.0}, 1e-6));
    CHECK(!contains(tr, {0.3, 0.71, 0.0, 0.0, 0.0}, 1e-6));
    CHECK(contains(tr, {0.0, 0.0, 0.0, 0.0, 0.0}, 1e-6));

    std::vector<RatePoint> pts = {{0.0, 1.0, 0, 0, 0},
                                  {1.0, 0.0, 0, 0, 0},
                                  {0.5, 0.5, 0, 0, 0},
                                  {0.2, 0.2, 0, 0, 0}};
    auto hull = convexify(pts);
    CHECK(hull.size() == 2);
    for (auto& p : hull) CHECK(p.r0 + p.r1 == doctest::Approx(1.0));
    CHECK_THROWS_AS(convexify({}), std::invalid_argument);
}

TEST_CASE("R0 grid expansion") {
    R0Grid g{0.0, 1.0, 0.25};
    auto v = g.values();
    REQUIRE(v.size() == 5);
    CHECK(v[0] == 0.0);
    CHECK(v[4] == doctest::Approx(1.0));
    CHECK_THROWS_AS((R0Grid{0.0, 1.0, 0.0}.values()), std::invalid_argument);
    CHECK_THROWS_AS((R0Grid{1.0, 0.0, 0.1}.values()), std::invalid_argument);
}

TEST_CASE("scans are deterministic") {
    GmacChannel ch = builtin_degraded_binary(0.3);
    GridOptions opts;
    opts.denom = 4;
    bool ok = false;
    RegionTrace a = degraded_region(ch, opts, {0.0, 0.5, 0.25}, &ok);
    RegionTrace b = degraded_region(ch, opts, {0.0, 0.5, 0.25}, &ok);
    REQUIRE(a.points.size() == b.points.size());
    CHECK(a.grid_desc == b.grid_desc);
    for (size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].r1 == b.points[i].r1);
        CHECK(a.points[i].r1e == b.points[i].r1e);
        CHECK(a.grid_ids[i] == b.grid_ids[i]);
    }
}

TEST_CASE("mac bundle on the simulator input") {
    GmacChannel ch = builtin_degraded_binary(0.3);
    ProductInputDist d;
    d.nq = 1;
    d.nx1 = 2;
    d.nx2 = 2;
    d.q = {1.0};
    d.x1_given_q = {0.5, 0.5};
    d.x2_given_q = {0.0, 1.0};
    MacMi mi = mac_bundle(ch, d);
    CHECK(mi.x1_y_x2q == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mi.leak1 == doctest::Approx(LEAK_03).epsilon(1e-9));
    CHECK(mi.leak2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mi.x12q_y == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("general-class scans: agreement at R0 = 0, clamp past the envelope") {
    GmacChannel ch = builtin_degraded_binary(0.25);
    GridOptions opts;
    opts.denom = 3;
    R0Grid grid{0.0, 1.0, 0.25};
    RegionTrace inner = one_message_inner_region(ch, opts, grid);
    RegionTrace outer = outer_form_scan(ch, opts, grid);
    CHECK(inner.provenance == Provenance::inner);
    CHECK(outer.provenance == Provenance::outer);

    // Degraded channel at R0 = 0: every distribution has a nonnegative
    // equivocation term, so clamping changes nothing and the two fronts
    // are identical.
    std::vector<RatePoint> in0, out0;
    for (auto& p : inner.points)
        if (p.r0 == 0.0) in0.push_back(p);
    for (auto& p : outer.points)
        if (p.r0 == 0.0) out0.push_back(p);
    REQUIRE(in0.size() == out0.size());
    REQUIRE(!in0.empty());
    for (size_t i = 0; i < in0.size(); ++i) {
        CHECK(in0[i].r1 == out0[i].r1);
        CHECK(in0[i].r1e == out0[i].r1e);
    }

    // The general class cannot beat the degraded-class closed form:
    // max Re at R0 = 0 stays within h(p), and the scan gets close.
    double best = 0.0;
    for (auto& p : in0) best = std::max(best, p.r1e);
    CHECK(best <= H_QUARTER + 1e-9);
    CHECK(best > 0.5);

    // Per-slice maxima: inner rate coverage contains the outer one, and
    // wherever the outer front is nonempty its best Re matches.
    for (double r0 : grid.values()) {
        double ri = -1.0, ro = -1.0, ei = -1.0, eo = -1.0;
        for (auto& p : inner.points)
            if (p.r0 == r0) {
                ri = std::max(ri, p.r1);
                ei = std::max(ei, p.r1e);
            }
        for (auto& p : outer.points)
            if (p.r0 == r0) {
                ro = std::max(ro, p.r1);
                eo = std::max(eo, p.r1e);
            }
        CHECK(ri >= ro - 1e-12);
        if (eo >= 0.0) CHECK(ei == doctest::Approx(eo).epsilon(1e-12));
    }
}

TEST_CASE("general-class scans on a reversed channel") {
    // Eavesdropper strictly better than the destination: the inner scan
    // keeps full-rate points with Re clamped to zero, the outer-form scan
    // retains only points whose unclamped terms are nonnegative.
    GmacChannel ch = reversed_binary(0.3);
    GridOptions opts;
    opts.denom = 3;
    R0Grid grid{0.0, 0.0, 1.0};
    RegionTrace inner = one_message_inner_region(ch, opts, grid);
    RegionTrace outer = outer_form_scan(ch, opts, grid);
    double ri = 0.0, ro = 0.0;
    for (auto& p : inner.points) {
        CHECK(p.r1e <= 1e-12);
        ri = std::max(ri, p.r1);
    }
    for (auto& p : outer.points) {
        CHECK(p.r1e <= 1e-9);
        ro = std::max(ro, p.r1);
    }
    // Destination capacity here is 1 - h(0.3); the lattice gets close and
    // the inner scan keeps that rate at zero secrecy. The outer-form scan
    // only retains distributions with U useless to both receivers.
    CHECK(ri > 0.08);
    CHECK(ri <= LEAK_03 + 1e-9);
    CHECK(ro < 0.01);
}

TEST_CASE("two-message secrecy slice of a hand-built bundle") {
    MiTwo mi = hand_bundle();  // m1=m2=1, m12=1.5, m012=2, c1=0.2, c2=0.3

    auto at0 = secrecy_slice_two(mi, 0.0);
    // Joint pentagon: ux=0.8, uy=0.7, s=min(1.0,1.5)=1.0. The single-user
    // points (0.8,0) and (0,0.7) are dominated by its corners.
    REQUIRE(at0.size() == 2);
    CHECK(at0[0].r1 == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(at0[0].r2 == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(at0[1].r1 == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(at0[1].r2 == doctest::Approx(0.7).epsilon(1e-12));
    for (auto& p : at0) {
        CHECK(p.r0 == 0.0);
        CHECK(p.r1e == p.r1);
        CHECK(p.r2e == p.r2);
    }

    // Large R0 squeezes the joint pentagon below the single-user points.
    auto at14 = secrecy_slice_two(mi, 1.4);
    REQUIRE(at14.size() == 2);
    CHECK(at14[0].r1 == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(at14[0].r2 == 0.0);
    CHECK(at14[1].r1 == 0.0);
    CHECK(at14[1].r2 == doctest::Approx(0.3).epsilon(1e-12));

    // Beyond m012 - c1 every sub-region is infeasible.
    CHECK(secrecy_slice_two(mi, 2.5).empty());
}
