// End-to-end checklist over the library and the command-line tool. Each
// check prints one PASS/FAIL line with its runtime; the process exits
// nonzero unless every check passes. argv[1]: path to the CLI binary.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gmacsec/binary_entropy.hpp"
#include "gmacsec/channel.hpp"
#include "gmacsec/closed_form.hpp"
#include "gmacsec/finite_dist.hpp"
#include "gmacsec/regions.hpp"
#include "gmacsec/rng.hpp"
#include "gmacsec/sim.hpp"

namespace {

using namespace gmacsec;

// Pinned tolerances.
constexpr double kLineTol = 1e-6;        // multiplier boundary vs 1 - R0
constexpr double kClosedFormTol = 1e-9;  // closed forms vs exact values
constexpr double kGapFloor = 1e-9;       // capacity minus the chord, interior
constexpr double kGapAtHalf = 0.01;      // the same gap at R0 = 1/2
constexpr double kMonotoneSlack = 1e-12;
constexpr double kBundleTol = 1e-9;      // specialized bundle agreement
constexpr double kCrossTol = 1e-6;       // grid scan vs closed-form region
constexpr double kEpiSlack = 1e-11;      // room for the bisection interval
constexpr double kEqTargetTol = 0.15;    // bits/symbol around R1' - leak

// Pinned runtime budgets, seconds.
constexpr double kBudgetCli = 10.0;
constexpr double kBudgetClosed = 1.0;
constexpr double kBudgetVerify = 60.0;
constexpr double kBudgetSim = 300.0;

std::string g_cli;
std::string g_tmp;
std::string g_fail;  // first failure detail of the current check

bool note(bool ok, const std::string& what) {
    if (!ok && g_fail.empty()) g_fail = what;
    return ok;
}

std::string str(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int run_cli(const std::string& args) {
    std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// (R0, R1) columns of a region table, header and footers skipped.
std::vector<std::pair<double, double>> read_r0_r1(const std::string& path) {
    std::vector<std::pair<double, double>> pts;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        double r0 = 0, r1 = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &r0, &r1) == 2)
            pts.push_back({r0, r1});
    }
    return pts;
}

// Largest R1 at the given R0 in the downward closure of the convex hull
// of the points: the better of any point to the right and any chord
// straddling r0.
double hull_r1_at(const std::vector<std::pair<double, double>>& pts,
                  double r0) {
    double best = 0.0;
    for (auto& [x, y] : pts)
        if (x >= r0 - 1e-12) best = std::max(best, y);
    for (auto& a : pts)
        for (auto& b : pts) {
            if (a.first > r0 || b.first < r0 ||
                b.first - a.first < 1e-12)
                continue;
            double t = (r0 - a.first) / (b.first - a.first);
            best = std::max(best, a.second + t * (b.second - a.second));
        }
    return best;
}

// ---- 1: the one-bit multiplier's perfect-secrecy trace is R0 + R1 = 1 ----

bool check_multiplier_line() {
    std::string out = g_tmp + "/multiplier.csv";
    if (!note(run_cli("region --builtin multiplier_bias --theorem secrecy1"
                      " --out " + out) == 0,
              "region command failed"))
        return false;
    auto pts = read_r0_r1(out);
    bool ok = note(pts.size() >= 2, "trace has fewer than two points");
    for (int i = 0; i < 50 && ok; ++i) {
        double r0 = i / 49.0;
        double got = hull_r1_at(pts, r0);
        ok = note(std::fabs(got - (1.0 - r0)) <= kLineTol,
                  "boundary " + str(got) + " off the line at R0 = " + str(r0));
    }
    return ok;
}

// ---- 2: binary capacity endpoints ----

bool check_binary_endpoints() {
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        double r0 = i / 999.0;
        ok = note(std::fabs(binary_secrecy_capacity(0.0, r0)) <=
                      kClosedFormTol,
                  "p = 0 capacity nonzero at R0 = " + str(r0));
        ok = ok && note(std::fabs(binary_secrecy_capacity(0.5, r0) -
                                  (1.0 - r0)) <= kClosedFormTol,
                        "p = 1/2 capacity off 1 - R0 at R0 = " + str(r0));
    }
    for (int i = 0; i < 1000 && ok; ++i) {
        double p = 0.5 * i / 999.0;
        ok = note(std::fabs(binary_secrecy_capacity(p, 0.0) -
                            binary_entropy(p)) <= kClosedFormTol,
                  "capacity at R0 = 0 is not h(p) for p = " + str(p));
    }
    return ok;
}

// ---- 3: capacity strictly above the time-sharing chord at p = 0.11 ----

bool check_gap_over_time_sharing() {
    bool ok = true;
    for (int i = 1; i < 999 && ok; ++i) {
        double r0 = i / 999.0;
        double gap = binary_secrecy_capacity(0.11, r0) -
                     binary_time_sharing_secrecy(0.11, r0);
        ok = note(gap > kGapFloor,
                  "gap " + str(gap) + " not positive at R0 = " + str(r0));
    }
    double at_half = binary_secrecy_capacity(0.11, 0.5) -
                     binary_time_sharing_secrecy(0.11, 0.5);
    return note(at_half > kGapAtHalf,
                "gap at R0 = 1/2 is only " + str(at_half)) && ok;
}

// ---- 4: Gaussian capacity shape ----

bool check_gaussian_shape() {
    bool ok = true;
    for (double n2 : {2.0, 5.0, 10.0}) {
        GaussianParams gp{10.0, 10.0, 1.0, n2};
        double t = gaussian_r0_threshold(gp);
        double below = gaussian_secrecy_capacity(gp, t - 1e-12).value;
        double above = gaussian_secrecy_capacity(gp, t + 1e-12).value;
        ok &= note(std::fabs(below - above) <= kClosedFormTol,
                   "branch jump at the threshold for N2 = " + str(n2));
        double r0max = gaussian_r0_max(gp);
        double prev = below + 1.0;
        for (int i = 0; i < 1000; ++i) {
            double v =
                gaussian_secrecy_capacity(gp, r0max * i / 999.0).value;
            ok &= note(v <= prev + kMonotoneSlack,
                       "capacity increases in R0 for N2 = " + str(n2));
            prev = v;
        }
    }
    GaussianParams a{10.0, 10.0, 1.0, 2.0};
    GaussianParams b{10.0, 10.0, 1.0, 5.0};
    GaussianParams c{10.0, 10.0, 1.0, 10.0};
    double shared = std::min(
        {gaussian_r0_max(a), gaussian_r0_max(b), gaussian_r0_max(c)});
    for (int i = 0; i < 1000; ++i) {
        double r0 = shared * i / 999.0;
        double va = gaussian_secrecy_capacity(a, r0).value;
        double vb = gaussian_secrecy_capacity(b, r0).value;
        double vc = gaussian_secrecy_capacity(c, r0).value;
        ok &= note(vb >= va - kMonotoneSlack && vc >= vb - kMonotoneSlack,
                   "noisier eavesdropper lowers capacity at R0 = " + str(r0));
    }
    GaussianParams eq{10.0, 10.0, 1.0, 1.0};
    for (int i = 0; i < 100; ++i) {
        double r0 = gaussian_r0_max(eq) * i / 99.0;
        ok &= note(gaussian_secrecy_capacity(eq, r0).value <= kClosedFormTol,
                   "capacity nonzero with N2 = N at R0 = " + str(r0));
    }
    return ok;
}

// ---- 5: explicit and union membership forms agree ----

bool check_membership_forms() {
    EquivFormsReport rep = verify_equivocation_forms(1000, 64, 1);
    bool ok = note(rep.instances == 1000, "instance count off");
    ok &= note(rep.cells == 1000LL * 64 * 64, "cell count off");
    ok &= note(rep.disagreements == 0,
               "forms disagree: " + rep.first_counterexample);
    return ok;
}

// ---- 6: the two-message bundle specializes to one message via V := X2 ----

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
    for (int q = 0; q < d.nq; ++q)
        random_row(rng, d.u_given_q.data() + q * d.nu, d.nu);
    for (int u = 0; u < d.nu; ++u)
        random_row(rng, d.x1_given_u.data() + u * nx1, nx1);
    return d;
}

GmacChannel random_channel(Rng& rng, int nx1, int nx2, int ny, int ny1,
                           int ny2) {
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

bool check_specialization() {
    Rng rng{271828};
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
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
        ok = note(std::fabs(two.m1 - one.u_y_x2q) <= kBundleTol,
                  "rate terms differ: " + str(two.m1) + " vs " +
                      str(one.u_y_x2q));
        ok = ok && note(std::fabs(two.m012 - one.ux2q_y) <= kBundleTol,
                        "sum terms differ");
        ok = ok && note(std::fabs(two.c1 - one.u_y2_x2q) <= kBundleTol,
                        "leak terms differ");
        // resolved extents of the R2 = 0 slice at a few common rates
        for (double r0 : {0.0, 0.25, 0.5}) {
            double r1_two =
                std::min({two.m1, two.m12, two.m012 - r0});
            double r1_one = std::min(one.u_y_x2q, one.ux2q_y - r0);
            ok = ok && note(std::fabs(r1_two - r1_one) <= 3 * kBundleTol,
                            "rate extents differ at R0 = " + str(r0));
            double re_two =
                std::min(two.m1 - two.c1, two.m012 - two.c1 - r0);
            double re_one = std::min(one.u_y_x2q - one.u_y2_x2q,
                                     one.ux2q_y - one.u_y2_x2q - r0);
            ok = ok && note(std::fabs(re_two - re_one) <= 3 * kBundleTol,
                            "secrecy extents differ at R0 = " + str(r0));
        }
    }
    return ok;
}

// ---- 7: degraded grid scan vs the closed-form region ----

// Membership in the union over alpha of closed-form boxes. The caps
// rising in alpha (rate, secrecy) and the one falling (common-rate sum)
// make the smallest alpha satisfying the rising pair the best candidate.
bool in_binary_region(double p, double r0, double r1, double re,
                      double tol) {
    if (r1 > 1.0 - r0 + tol) return false;
    if (re > r1 + tol) return false;
    auto rising_ok = [&](double alpha) {
        BinarySlice bs = binary_region_slice(p, alpha, 0.0);
        return bs.r1_cap >= r1 - tol && bs.re_cap >= re - tol;
    };
    if (!rising_ok(0.5)) return false;
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (rising_ok(mid) ? hi : lo) = mid;
    }
    BinarySlice bs = binary_region_slice(p, hi, r0);
    return r1 <= bs.r1_max + tol && re <= bs.re_max + tol;
}

bool check_degraded_cross() {
    bool ok = true;
    R0Grid r0s{0.0, 1.0, 0.25};
    for (double p : {0.1, 0.3, 0.5}) {
        GmacChannel ch = builtin_channel("degraded_binary", p);
        GridOptions opts;
        opts.denom = 8;
        bool is_degraded = false;
        RegionTrace tr = degraded_region(ch, opts, r0s, &is_degraded);
        ok &= note(is_degraded, "channel not detected as degraded");
        for (auto& pt : tr.points)
            ok &= note(
                in_binary_region(p, pt.r0, pt.r1, pt.r1e, kCrossTol),
                "grid point (" + str(pt.r1) + ", " + str(pt.r1e) +
                    ") escapes the region at p = " + str(p) +
                    ", R0 = " + str(pt.r0));
        // every step-1/8 input bias has its box corner on the trace
        for (double r0 : r0s.values())
            for (int k = 0; k <= 4; ++k) {
                BinarySlice bs = binary_region_slice(p, k / 8.0, r0);
                bool covered = false;
                for (auto& pt : tr.points)
                    if (std::fabs(pt.r0 - r0) < 1e-12 &&
                        pt.r1 >= bs.r1_max - kCrossTol &&
                        pt.r1e >= bs.re_max - kCrossTol) {
                        covered = true;
                        break;
                    }
                ok &= note(covered, "corner for alpha = " + str(k / 8.0) +
                                        " missing at p = " + str(p) +
                                        ", R0 = " + str(r0));
            }
    }
    return ok;
}

// ---- 8: per-symbol output entropy floor under product BSC noise ----

bool check_entropy_floor() {
    Rng rng(8675309);
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
        int cells = 1 << n;
        for (int trial = 0; trial < 250; ++trial) {
            double p0 = 0.02 + 0.48 * rng.uniform01();
            std::vector<double> px(cells);
            double sum = 0.0;
            for (auto& x : px) {
                x = rng.uniform01();
                sum += x;
            }
            for (auto& x : px) x /= sum;
            std::vector<double> py(cells, 0.0);
            for (int x = 0; x < cells; x++)
                for (int y = 0; y < cells; y++) {
                    int flips = __builtin_popcount((unsigned)(x ^ y));
                    py[y] += px[x] * std::pow(p0, flips) *
                             std::pow(1.0 - p0, n - flips);
                }
            double hx = entropy_of_mass(px), hy = entropy_of_mass(py);
            ok &= note(
                hy >= n * binary_epi_floor(hx / n, p0) - kEpiSlack,
                "floor violated at n = " + std::to_string(n) +
                    ", p0 = " + str(p0));
        }
    }
    return ok;
}

// ---- 9: corner scheme, zero error and exactly one hidden bit ----

bool check_corner_scheme() {
    GmacChannel ch = builtin_channel("multiplier_bias", 0.0);
    Codebook cb = corner_codebook();
    auto [g1, g2] = make_partitions(2, 2, 1, 1);
    SimConfig cfg;
    cfg.trials = 10000;
    cfg.seed = 4242;
    SimStats st = run_trials(ch, cb, g1, g2, cfg);
    bool ok = note(st.lambda == 0.0, "error rate " + str(st.lambda));
    ok &= note(st.eq1 == 1.0, "equivocation " + str(st.eq1) +
                                  " is not exactly one bit");
    return ok;
}

// ---- 10: longer blocks cut errors and land on the equivocation target ----

bool check_binning_gains() {
    GmacChannel ch = builtin_channel("degraded_binary", 0.3);
    ProductInputDist d;
    d.nq = 1;
    d.nx1 = 2;
    d.nx2 = 2;
    d.q = {1.0};
    d.x1_given_q = {0.5, 0.5};
    d.x2_given_q = {0.0, 1.0};
    int good = 0;
    std::string trail;
    for (uint64_t seed : {101u, 202u, 303u}) {
        double lambda8 = 0, lambda16 = 0, eq_err = 0;
        for (int n : {8, 16}) {
            CodebookSpec spec;
            spec.n = n;
            spec.rp1 = 0.7;
            spec.seed = seed;
            Codebook cb = build_codebook(ch, d, spec);
            PartitionMap g1 = make_partition(
                cb.cols1, partition_range(n, 0.7, cb.rows1, cb.cols1));
            PartitionMap g2 = make_partition(cb.cols2, 1);
            SimConfig cfg;
            cfg.trials = 10000;
            cfg.seed = seed + 7;  // trials on their own stream
            SimStats st = run_trials(ch, cb, g1, g2, cfg);
            (n == 8 ? lambda8 : lambda16) = st.lambda;
            if (n == 16) eq_err = std::fabs(st.eq1 - (cb.rp1 - cb.leak1));
        }
        if (lambda16 < lambda8 && eq_err <= kEqTargetTol) ++good;
        trail += " seed " + std::to_string(seed) + ": lambda " +
                 str(lambda8) + " -> " + str(lambda16) + ", |eq err| " +
                 str(eq_err) + ";";
    }
    return note(good >= 2, "fewer than two of three seeds succeed:" + trail);
}

// ---- 11: seeded commands reproduce byte for byte ----

bool check_reproducible_commands() {
    const char* cmds[] = {
        "region --builtin degraded_binary --p 0.3 --theorem inner1"
        " --grid-step 1/4 --seed 5",
        "simulate --builtin degraded_binary --p 0.3 --codebook binned"
        " --n 8 --rp1 0.7 --pin-x2 1 --trials 500 --seed 101",
        "figure --figure fig6 --seed 2",
        "verify --instances 25 --grid-n 16 --seed 9",
    };
    bool ok = true;
    int i = 0;
    for (const char* c : cmds) {
        std::string first = g_tmp + "/rep" + std::to_string(i) + "a.csv";
        std::string second = g_tmp + "/rep" + std::to_string(i) + "b.csv";
        std::string cmd(c);
        ok &= note(run_cli(cmd + " --out " + first) == 0,
                   "command failed: " + cmd);
        ok &= note(run_cli(cmd + " --out " + second) == 0,
                   "rerun failed: " + cmd);
        std::string fa = slurp(first);
        ok &= note(!fa.empty() && fa == slurp(second),
                   "reruns differ: " + cmd);
        ++i;
    }
    return ok;
}

struct Check {
    const char* name;
    double budget;  // seconds; 0 means no limit
    std::function<bool()> fn;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
        return 2;
    }
    g_cli = argv[1];
    g_tmp = "/tmp/gmacsec-accept-" + std::to_string((long)getpid());
    std::filesystem::create_directories(g_tmp);

    const Check checks[] = {
        {"multiplier secrecy trace follows R0 + R1 = 1", kBudgetCli,
         check_multiplier_line},
        {"binary capacity endpoints: p = 0, p = 1/2, R0 = 0", kBudgetClosed,
         check_binary_endpoints},
        {"binary capacity strictly beats the time-sharing chord", 0,
         check_gap_over_time_sharing},
        {"gaussian capacity: continuity and monotone shape", 0,
         check_gaussian_shape},
        {"equivocation membership forms agree on random instances",
         kBudgetVerify, check_membership_forms},
        {"two-message bundle specializes to one message via V := X2", 0,
         check_specialization},
        {"degraded grid scan matches the closed-form region", 0,
         check_degraded_cross},
        {"output entropy floor under product BSC noise", 0,
         check_entropy_floor},
        {"corner scheme: zero error, exactly one bit hidden", 0,
         check_corner_scheme},
        {"longer blocks cut errors and meet the equivocation target",
         kBudgetSim, check_binning_gains},
        {"seeded commands reproduce byte for byte", 0,
         check_reproducible_commands},
    };

    int passed = 0, id = 0;
    for (auto& c : checks) {
        ++id;
        g_fail.clear();
        auto t0 = std::chrono::steady_clock::now();
        bool ok = c.fn();
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        if (ok && c.budget > 0 && secs > c.budget) {
            ok = false;
            g_fail = "over the " + str(c.budget) + " s budget";
        }
        std::printf("[%2d] %-58s %s  (%.1f s)\n", id, c.name,
                    ok ? "PASS" : "FAIL", secs);
        if (!ok && !g_fail.empty()) std::printf("     %s\n", g_fail.c_str());
        passed += ok;
    }
    std::printf("%d/11 checks passed\n", passed);
    std::filesystem::remove_all(g_tmp);
    return passed == 11 ? 0 : 1;
}
