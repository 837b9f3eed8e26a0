// Command-line front end. Everything goes through the C interface in
// gmacsec.h; this file deliberately stays free of the C++ core headers.
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmacsec.h"

namespace {

struct ChannelFlags {
    std::string path;
    std::string builtin;
    double p = 0.11;
};

void add_channel_flags(CLI::App* cmd, ChannelFlags& cf) {
    auto* file = cmd->add_option("--channel", cf.path,
                                 "channel description file (JSON)");
    auto* name =
        cmd->add_option("--builtin", cf.builtin,
                        "built-in channel: multiplier_bias | degraded_binary");
    file->excludes(name);
    name->excludes(file);
}

// Exactly one channel source. Exits with the validation status on failure.
gmx_channel* open_channel(const ChannelFlags& cf) {
    if (cf.path.empty() == cf.builtin.empty()) {
        std::fprintf(stderr, "error: exactly one of --channel/--builtin\n");
        std::exit(GMX_EINVAL);
    }
    gmx_channel* ch = nullptr;
    int rc = cf.path.empty()
                 ? gmx_channel_builtin(cf.builtin.c_str(), cf.p, &ch)
                 : gmx_channel_load(cf.path.c_str(), &ch);
    if (rc != GMX_OK) {
        std::fprintf(stderr, "error: %s\n", gmx_last_error());
        std::exit(rc);
    }
    return ch;
}

// "start:stop:step" in decimal.
void parse_r0_grid(const std::string& s, double* a, double* b, double* c) {
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf", a, b, c) != 3) {
        std::fprintf(stderr, "error: --r0-grid wants start:stop:step\n");
        std::exit(GMX_EINVAL);
    }
}

// "1/k" or a plain decimal step; returns the denominator k.
int parse_grid_step(const std::string& s) {
    int num = 0, den = 0;
    if (std::sscanf(s.c_str(), "%d/%d", &num, &den) == 2) {
        if (num != 1 || den < 1) {
            std::fprintf(stderr, "error: --grid-step wants 1/k, k >= 1\n");
            std::exit(GMX_EINVAL);
        }
        return den;
    }
    double v = 0;
    if (std::sscanf(s.c_str(), "%lf", &v) != 1 || v <= 0 || v > 1) {
        std::fprintf(stderr, "error: unreadable --grid-step '%s'\n",
                     s.c_str());
        std::exit(GMX_EINVAL);
    }
    return (int)(1.0 / v + 0.5);
}

std::string g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int finish(int rc) {
    if (rc != GMX_OK) std::fprintf(stderr, "error: %s\n", gmx_last_error());
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secrecy regions and random-binning simulations for "
                 "two-sender channels with an eavesdropper"};
    app.set_version_flag("--version", gmx_version());
    app.require_subcommand(1);

    // ---- region ----
    auto* region = app.add_subcommand(
        "region", "scan a rate region and write its boundary trace");
    ChannelFlags rc_ch;
    add_channel_flags(region, rc_ch);
    std::string r_theorem, r_grid, r_step, r_out, r_format = "csv";
    double r_budget = 0;
    int r_nq = 0, r_nu = 0, r_nv = 0;
    uint64_t r_seed = 0;
    region->add_option("--p", rc_ch.p,
                       "degraded_binary flip probability (default 0.11)");
    region
        ->add_option("--theorem", r_theorem,
                     "inner1 | outer1-eval | secrecy1 | degraded | inner2 | "
                     "secrecy2")
        ->required();
    region->add_option("--r0-grid", r_grid,
                       "common-rate slices start:stop:step (default 0:1:0.05)");
    region->add_option("--grid-step", r_step,
                       "distribution lattice step 1/k (default: from budget)");
    region->add_option("--budget", r_budget, "max lattice points");
    region->add_option("--nq", r_nq, "time-sharing cardinality");
    region->add_option("--nu", r_nu, "user 1 auxiliary cardinality");
    region->add_option("--nv", r_nv, "user 2 auxiliary cardinality");
    region->add_option("--out", r_out, "output path (default region.csv)");
    region->add_option("--format", r_format, "csv | doc");
    region->add_option("--seed", r_seed,
                       "recorded in the footer; scans are deterministic");

    // ---- figure ----
    auto* figure = app.add_subcommand(
        "figure", "emit the data behind one of the standard figures");
    ChannelFlags f_ch;
    add_channel_flags(figure, f_ch);
    std::string f_figure, f_grid, f_step, f_out, f_format = "csv";
    std::vector<double> f_p, f_n2;
    double f_p1 = 0, f_p2 = 0, f_noise = 0, f_budget = 0;
    int f_rows = 0, f_nq = 0, f_nu = 0, f_nv = 0;
    uint64_t f_seed = 0;
    figure->add_option("--figure", f_figure, "fig5 | fig6 | fig7 | fig8")
        ->required();
    figure->add_option(
        "--p", f_p,
        "fig5: repeat for each series; fig6/fig8 channel: first value");
    figure->add_option("--P1", f_p1, "fig7 user 1 power (default 10)");
    figure->add_option("--P2", f_p2, "fig7 user 2 power (default 10)");
    figure->add_option("--N", f_noise, "fig7 destination noise (default 1)");
    figure->add_option("--N2", f_n2,
                       "fig7 eavesdropper noise, repeat per series "
                       "(default 2 5 10)");
    figure->add_option("--rows", f_rows, "rows per series (default 101)");
    figure->add_option("--r0-grid", f_grid, "fig8 slices (default 0:0:1)");
    figure->add_option("--grid-step", f_step, "fig8 lattice step 1/k");
    figure->add_option("--budget", f_budget, "fig8 max lattice points");
    figure->add_option("--nq", f_nq, "fig8 time-sharing cardinality");
    figure->add_option("--nu", f_nu, "fig8 user 1 auxiliary cardinality");
    figure->add_option("--nv", f_nv, "fig8 user 2 auxiliary cardinality");
    figure->add_option("--out", f_out, "output path (default <figure>.csv)");
    figure->add_option("--format", f_format, "csv | doc");
    figure->add_option("--seed", f_seed,
                       "recorded in the footer; tables are deterministic");

    // ---- simulate ----
    auto* sim = app.add_subcommand(
        "simulate", "run the random-binning scheme and measure error rates "
                    "and equivocation");
    ChannelFlags s_ch;
    add_channel_flags(sim, s_ch);
    int s_n = 8, s_pin = -1;
    double s_r0 = 0, s_rp1 = 0, s_rp2 = 0, s_r1 = 0, s_r2 = 0, s_eps = 0;
    uint64_t s_trials = 1000, s_seed = 0;
    std::string s_codebook, s_decoder = "map", s_out, s_format = "csv";
    sim->add_option("--p", s_ch.p,
                    "degraded_binary flip probability (default 0.11)");
    sim->add_option("--n", s_n, "block length (default 8)");
    sim->add_option("--r0", s_r0, "common-message rate");
    sim->add_option("--rp1", s_rp1, "user 1 codebook table rate");
    sim->add_option("--rp2", s_rp2, "user 2 codebook table rate");
    sim->add_option("--r1", s_r1,
                    "user 1 message rate (default: whole table rate)");
    sim->add_option("--r2", s_r2,
                    "user 2 message rate (default: whole table rate)");
    sim->add_option("--eps", s_eps, "typicality slack (default: from n)");
    sim->add_option("--trials", s_trials, "trial count (default 1000)");
    sim->add_option("--seed", s_seed, "codebook and trial seed")->required();
    sim->add_option("--codebook", s_codebook,
                    "binned | corner (default binned)");
    sim->add_option("--decoder", s_decoder, "map | typicality");
    sim->add_option("--pin-x2", s_pin,
                    "fix user 2's input symbol (default: uniform)");
    sim->add_option("--out", s_out, "output path (default simulate.csv)");
    sim->add_option("--format", s_format, "csv | doc");

    // ---- verify ----
    auto* verify = app.add_subcommand(
        "verify", "cross-check the explicit and union equivocation forms on "
                  "random instances");
    int v_instances = 0, v_grid = 0;
    uint64_t v_seed = 0;
    std::string v_out, v_format = "csv";
    verify->add_option("--instances", v_instances,
                       "random instances (default 1000)");
    verify->add_option("--grid-n", v_grid,
                       "membership grid per axis (default 64)");
    verify->add_option("--seed", v_seed, "instance seed");
    verify->add_option("--out", v_out, "output path (default verify.csv)");
    verify->add_option("--format", v_format, "csv | doc");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : GMX_EINVAL;
    }

    auto default_out = [](std::string& out, const std::string& base,
                          const std::string& format) {
        if (out.empty()) out = base + (format == "doc" ? ".json" : ".csv");
    };

    if (region->parsed()) {
        default_out(r_out, "region", r_format);
        gmx_channel* ch = open_channel(rc_ch);
        gmx_region_run run = {};
        run.theorem = r_theorem.c_str();
        if (!r_grid.empty())
            parse_r0_grid(r_grid, &run.r0_start, &run.r0_stop, &run.r0_step);
        if (!r_step.empty()) run.denom = parse_grid_step(r_step);
        run.budget = r_budget;
        run.nq = r_nq;
        run.nu = r_nu;
        run.nv = r_nv;
        run.out_path = r_out.c_str();
        run.format = r_format.c_str();
        std::string cfg = "region";
        cfg += rc_ch.path.empty() ? " --builtin " + rc_ch.builtin +
                                        " --p " + g(rc_ch.p)
                                  : " --channel " + rc_ch.path;
        cfg += " --theorem " + r_theorem;
        if (!r_grid.empty()) cfg += " --r0-grid " + r_grid;
        if (run.denom) cfg += " --grid-step 1/" + std::to_string(run.denom);
        if (r_budget > 0) cfg += " --budget " + g(r_budget);
        cfg += " --format " + r_format + " --seed " + std::to_string(r_seed);
        run.config_line = cfg.c_str();

        double best = 0;
        int s1 = 0, s2 = 0, warn = 0;
        int rc = gmx_region(ch, &run, &best, &s1, &s2, &warn);
        gmx_channel_free(ch);
        if (rc != GMX_OK) return finish(rc);
        if (warn)
            std::fprintf(stderr,
                         "warning: channel is not degraded; the degraded "
                         "evaluator ran anyway\n");
        std::printf("wrote %s\n", r_out.c_str());
        std::printf("max total secrecy rate: %.6f\n", best);
        std::printf("positive secrecy: user1=%s user2=%s\n",
                    s1 ? "yes" : "no", s2 ? "yes" : "no");
        return 0;
    }

    if (figure->parsed()) {
        default_out(f_out, f_figure.empty() ? "figure" : f_figure, f_format);
        gmx_figure_run run = {};
        run.figure = f_figure.c_str();
        if (f_figure == "fig5" && !f_p.empty()) {
            run.p_list = f_p.data();
            run.p_count = (int)f_p.size();
        }
        if (!f_p.empty()) {
            run.p = f_p.front();
            f_ch.p = f_p.front();
        }
        run.p1 = f_p1;
        run.p2 = f_p2;
        run.noise = f_noise;
        if (!f_n2.empty()) {
            run.n2_list = f_n2.data();
            run.n2_count = (int)f_n2.size();
        }
        run.grid_n = f_rows;
        if (!f_grid.empty())
            parse_r0_grid(f_grid, &run.r0_start, &run.r0_stop, &run.r0_step);
        if (!f_step.empty()) run.denom = parse_grid_step(f_step);
        run.budget = f_budget;
        run.nq = f_nq;
        run.nu = f_nu;
        run.nv = f_nv;
        run.out_path = f_out.c_str();
        run.format = f_format.c_str();
        std::string cfg = "figure --figure " + f_figure;
        for (double p : f_p) cfg += " --p " + g(p);
        for (double n2 : f_n2) cfg += " --N2 " + g(n2);
        if (f_p1 > 0) cfg += " --P1 " + g(f_p1);
        if (f_p2 > 0) cfg += " --P2 " + g(f_p2);
        if (f_noise > 0) cfg += " --N " + g(f_noise);
        cfg += " --format " + f_format + " --seed " + std::to_string(f_seed);
        run.config_line = cfg.c_str();

        gmx_channel* ch = nullptr;
        if (f_figure == "fig8") ch = open_channel(f_ch);
        int mask = 0;
        int rc = gmx_figure(ch, &run, &mask);
        gmx_channel_free(ch);
        if (rc != GMX_OK) return finish(rc);
        std::printf("wrote %s\n", f_out.c_str());
        if (f_figure == "fig8") {
            std::printf("cases found:");
            for (int i = 0; i < 4; ++i)
                if (mask & (1 << i)) std::printf(" case%d", i + 1);
            std::printf("\n");
        }
        return 0;
    }

    if (sim->parsed()) {
        default_out(s_out, "simulate", s_format);
        gmx_channel* ch = open_channel(s_ch);
        gmx_sim_run run = {};
        run.n = s_n;
        run.r0 = s_r0;
        run.rp1 = s_rp1;
        run.rp2 = s_rp2;
        run.r1 = s_r1;
        run.r2 = s_r2;
        run.eps = s_eps;
        run.trials = s_trials;
        run.seed = s_seed;
        run.use_corner = s_codebook == "corner";
        if (!s_codebook.empty() && !run.use_corner && s_codebook != "binned") {
            std::fprintf(stderr, "error: unknown codebook '%s'\n",
                         s_codebook.c_str());
            gmx_channel_free(ch);
            return GMX_EINVAL;
        }
        run.decoder = s_decoder.c_str();
        run.pin_x2 = s_pin;
        run.out_path = s_out.c_str();
        run.format = s_format.c_str();
        std::string cfg = "simulate";
        cfg += s_ch.path.empty() ? " --builtin " + s_ch.builtin + " --p " +
                                       g(s_ch.p)
                                 : " --channel " + s_ch.path;
        cfg += " --n " + std::to_string(s_n) + " --r0 " + g(s_r0) +
               " --rp1 " + g(s_rp1) + " --rp2 " + g(s_rp2) + " --r1 " +
               g(s_r1) + " --r2 " + g(s_r2) + " --trials " +
               std::to_string(s_trials) + " --seed " + std::to_string(s_seed);
        if (run.use_corner) cfg += " --codebook corner";
        cfg += " --decoder " + s_decoder;
        if (s_pin >= 0) cfg += " --pin-x2 " + std::to_string(s_pin);
        cfg += " --format " + s_format;
        run.config_line = cfg.c_str();

        double lambda = 0, eq1 = 0, eq2 = 0;
        int rc = gmx_simulate(ch, &run, &lambda, &eq1, &eq2);
        gmx_channel_free(ch);
        if (rc != GMX_OK) return finish(rc);
        std::printf("wrote %s\n", s_out.c_str());
        std::printf("error rate lambda: %.6f\n", lambda);
        std::printf("equivocation: user1=%.6f user2=%.6f bits/symbol\n", eq1,
                    eq2);
        return 0;
    }

    if (verify->parsed()) {
        default_out(v_out, "verify", v_format);
        gmx_verify_run run = {};
        run.instances = v_instances;
        run.grid_n = v_grid;
        run.seed = v_seed;
        run.out_path = v_out.c_str();
        run.format = v_format.c_str();
        std::string cfg = "verify --instances " + std::to_string(v_instances) +
                          " --grid-n " + std::to_string(v_grid) + " --seed " +
                          std::to_string(v_seed) + " --format " + v_format;
        run.config_line = cfg.c_str();
        long long disagreements = -1;
        int rc = gmx_verify_equivocation_forms(&run, &disagreements);
        if (rc != GMX_OK) return finish(rc);
        std::printf("wrote %s\n", v_out.c_str());
        std::printf("disagreements: %lld\n", disagreements);
        if (disagreements != 0) {
            std::fprintf(stderr,
                         "error: the two equivocation forms disagreed\n");
            return 1;
        }
        return 0;
    }

    return GMX_EINVAL;
}
