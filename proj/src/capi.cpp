#include "gmacsec.h"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmacsec/channel.hpp"
#include "gmacsec/closed_form.hpp"
#include "gmacsec/errors.hpp"
#include "gmacsec/export_fmt.hpp"
#include "gmacsec/regions.hpp"
#include "gmacsec/sim.hpp"
#include "gmacsec/version.hpp"

struct gmx_channel {
    gmacsec::GmacChannel ch;
};

namespace {

using namespace gmacsec;

thread_local std::string g_error;

template <class F>
int guarded(F&& f) {
    try {
        f();
        return GMX_OK;
    } catch (const internal_error& e) {
        g_error = e.what();
        return GMX_EINTERNAL;
    } catch (const std::exception& e) {
        g_error = e.what();
        return GMX_EINVAL;
    } catch (...) {
        g_error = "unknown error";
        return GMX_EINTERNAL;
    }
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

std::string str_or(const char* s, const char* dflt) { return s ? s : dflt; }

GridOptions opts_of(int denom, double budget, int nq, int nu, int nv) {
    require(denom >= 0 && budget >= 0 && nq >= 0 && nu >= 0 && nv >= 0,
            "lattice controls must be nonnegative");
    GridOptions o;
    if (denom > 0) o.denom = denom;
    if (budget > 0) o.budget = budget;
    if (nq > 0) o.nq = nq;
    if (nu > 0) o.nu = nu;
    if (nv > 0) o.nv = nv;
    return o;
}

// All-zero means "default"; otherwise the triple must describe a forward
// grid.
R0Grid grid_of(double start, double stop, double step) {
    if (start == 0 && stop == 0 && step == 0) return R0Grid{};
    require(step > 0 && stop >= start && start >= 0,
            "R0 grid needs start <= stop, step > 0");
    return R0Grid{start, stop, step};
}

std::string span_desc(int rows, double lo, double hi) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%d rows on [%g, %g]", rows, lo, hi);
    return buf;
}

}  // namespace

const char* gmx_version(void) { return GMACSEC_VERSION; }

const char* gmx_last_error(void) { return g_error.c_str(); }

int gmx_channel_load(const char* path, gmx_channel** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new gmx_channel{load_channel(path)};
    });
}

int gmx_channel_builtin(const char* name, double p, gmx_channel** out) {
    return guarded([&] {
        require(name && out, "null argument");
        *out = new gmx_channel{builtin_channel(name, p)};
    });
}

void gmx_channel_free(gmx_channel* ch) { delete ch; }

int gmx_channel_info(const gmx_channel* ch, int* nx1, int* nx2, int* ny,
                     int* ny1, int* ny2) {
    return guarded([&] {
        require(ch, "null channel");
        if (nx1) *nx1 = ch->ch.nx1;
        if (nx2) *nx2 = ch->ch.nx2;
        if (ny) *ny = ch->ch.ny;
        if (ny1) *ny1 = ch->ch.ny1;
        if (ny2) *ny2 = ch->ch.ny2;
    });
}

int gmx_channel_degradedness(const gmx_channel* ch, int* physically,
                             int* stochastically) {
    return guarded([&] {
        require(ch, "null channel");
        DegradednessReport rep = find_stochastic_degradation(ch->ch);
        if (physically) *physically = rep.physically_degraded;
        if (stochastically) *stochastically = rep.stochastically_degraded;
    });
}

int gmx_binary_secrecy_capacity(double p, double r0, double* out) {
    return guarded([&] {
        require(out, "null output");
        *out = binary_secrecy_capacity(p, r0);
    });
}

int gmx_binary_time_sharing_secrecy(double p, double r0, double* out) {
    return guarded([&] {
        require(out, "null output");
        *out = binary_time_sharing_secrecy(p, r0);
    });
}

int gmx_gaussian_secrecy_capacity(double p1, double p2, double n, double n2,
                                  double r0, double* value,
                                  double* alpha_star, int* flat,
                                  int* infeasible) {
    return guarded([&] {
        GaussianCapacity c =
            gaussian_secrecy_capacity(GaussianParams{p1, p2, n, n2}, r0);
        if (value) *value = c.value;
        if (alpha_star) *alpha_star = c.alpha_star;
        if (flat) *flat = c.flat;
        if (infeasible) *infeasible = c.infeasible;
    });
}

int gmx_region(const gmx_channel* ch, const gmx_region_run* run,
               double* max_secrecy_sum, int* secrecy1_positive,
               int* secrecy2_positive, int* degraded_warning) {
    return guarded([&] {
        require(ch && run, "null channel or run");
        require(run->theorem, "theorem selector required");
        require(run->out_path, "output path required");
        OutFormat fmt = parse_format(str_or(run->format, "csv"));
        GridOptions opts =
            opts_of(run->denom, run->budget, run->nq, run->nu, run->nv);
        R0Grid r0s = grid_of(run->r0_start, run->r0_stop, run->r0_step);
        std::string th = run->theorem;

        RegionTrace tr;
        bool warn = false;
        bool two_message = false;
        if (th == "inner1") {
            tr = one_message_inner_region(ch->ch, opts, r0s);
        } else if (th == "outer1-eval") {
            tr = outer_form_scan(ch->ch, opts, r0s);
        } else if (th == "secrecy1") {
            tr = secrecy_capacity_region_one(ch->ch, opts);
        } else if (th == "degraded") {
            bool ok = false;
            tr = degraded_region(ch->ch, opts, r0s, &ok);
            warn = !ok;
        } else if (th == "inner2") {
            tr = two_message_inner_bound(ch->ch, opts, r0s);
            two_message = true;
        } else if (th == "secrecy2") {
            tr = secrecy_rate_region_two(ch->ch, opts, r0s);
            two_message = true;
        } else {
            throw std::invalid_argument("unknown theorem '" + th + "'");
        }

        ExportMeta meta;
        meta.config_line = str_or(run->config_line, "");
        write_trace(run->out_path, fmt, tr, meta);

        double best = 0.0;
        bool p1 = false, p2 = false;
        for (auto& p : tr.points) {
            best = std::max(best, p.r1e + p.r2e);
            if (p.r1e > 1e-9) p1 = true;
            if (p.r2e > 1e-9) p2 = true;
        }
        if (two_message) {
            // The exact predicate: a grid distribution with positive
            // single-user secrecy may be pruned from the trace front.
            auto [u1, u2] = positive_secrecy_possible(ch->ch, opts);
            p1 = u1;
            p2 = u2;
        }
        if (max_secrecy_sum) *max_secrecy_sum = best;
        if (secrecy1_positive) *secrecy1_positive = p1;
        if (secrecy2_positive) *secrecy2_positive = p2;
        if (degraded_warning) *degraded_warning = warn;
    });
}

int gmx_figure(const gmx_channel* ch, const gmx_figure_run* run,
               int* cases_found) {
    return guarded([&] {
        require(run, "null run");
        require(run->figure, "figure id required");
        require(run->out_path, "output path required");
        OutFormat fmt = parse_format(str_or(run->format, "csv"));
        ExportMeta meta;
        meta.config_line = str_or(run->config_line, "");
        int grid_n = run->grid_n > 0 ? run->grid_n : 101;
        if (cases_found) *cases_found = 0;
        std::string fig = run->figure;

        if (fig == "fig5") {
            std::vector<double> ps =
                run->p_list
                    ? std::vector<double>(run->p_list,
                                          run->p_list + run->p_count)
                    : std::vector<double>{0.1, 0.2, 0.35, 0.5};
            FigureTrace t = binary_capacity_figure(ps, grid_n);
            meta.extra.push_back({"grid", span_desc(grid_n, 0.0, 1.0)});
            write_figure(run->out_path, fmt, t, meta);
        } else if (fig == "fig6") {
            double p = run->p > 0 ? run->p : 0.11;
            FigureTrace t = binary_time_sharing_figure(p, grid_n);
            meta.extra.push_back({"grid", span_desc(grid_n, 0.0, 1.0)});
            write_figure(run->out_path, fmt, t, meta);
        } else if (fig == "fig7") {
            double p1 = run->p1 > 0 ? run->p1 : 10.0;
            double p2 = run->p2 > 0 ? run->p2 : 10.0;
            double noise = run->noise > 0 ? run->noise : 1.0;
            std::vector<double> n2s =
                run->n2_list
                    ? std::vector<double>(run->n2_list,
                                          run->n2_list + run->n2_count)
                    : std::vector<double>{2.0, 5.0, 10.0};
            require(!n2s.empty(), "fig7 needs at least one N2");
            FigureTrace t = gaussian_capacity_figure(p1, p2, noise, n2s,
                                                     grid_n);
            double hi =
                gaussian_r0_max(GaussianParams{p1, p2, noise, n2s.front()});
            meta.extra.push_back({"grid", span_desc(grid_n, 0.0, hi)});
            write_figure(run->out_path, fmt, t, meta);
        } else if (fig == "fig8") {
            require(ch, "fig8 requires a channel");
            GridOptions opts =
                opts_of(run->denom, run->budget, run->nq, run->nu, run->nv);
            R0Grid r0s =
                (run->r0_start == 0 && run->r0_stop == 0 && run->r0_step == 0)
                    ? R0Grid{0.0, 0.0, 1.0}
                    : grid_of(run->r0_start, run->r0_stop, run->r0_step);
            std::string desc;
            std::vector<CaseWitness> ws =
                leakage_case_witnesses(ch->ch, opts, &desc);
            std::vector<std::pair<std::string, RegionTrace>> traces;
            int mask = 0;
            for (auto& w : ws) {
                if (!w.found) continue;
                mask |= 1 << (w.case_id - 1);
                RegionTrace tr;
                tr.provenance = Provenance::secrecy;
                tr.grid_desc = desc;
                for (double r0 : r0s.values())
                    for (auto& pt : secrecy_slice_two(w.mi, r0)) {
                        tr.points.push_back(pt);
                        tr.grid_ids.push_back((int64_t)w.grid_id);
                    }
                traces.push_back(
                    {"case" + std::to_string(w.case_id), std::move(tr)});
            }
            require(!traces.empty(),
                    "no leakage-case witness found on this grid");
            write_labeled_traces(run->out_path, fmt, traces, meta);
            if (cases_found) *cases_found = mask;
        } else {
            throw std::invalid_argument("unknown figure '" + fig + "'");
        }
    });
}

int gmx_simulate(const gmx_channel* ch, const gmx_sim_run* run,
                 double* lambda, double* eq1, double* eq2) {
    return guarded([&] {
        require(ch && run, "null channel or run");
        require(run->out_path, "output path required");
        require(run->trials > 0, "trials must be positive");
        OutFormat fmt = parse_format(str_or(run->format, "csv"));

        Codebook cb;
        if (run->use_corner) {
            cb = corner_codebook();
        } else {
            require(run->n >= 1, "block length must be >= 1");
            require(run->rp1 >= 0 && run->rp2 >= 0,
                    "table rates must be nonnegative");
            ProductInputDist d;
            d.nq = 1;
            d.nx1 = ch->ch.nx1;
            d.nx2 = ch->ch.nx2;
            d.q = {1.0};
            d.x1_given_q.assign(d.nx1, 1.0 / d.nx1);
            if (run->pin_x2 >= 0) {
                require(run->pin_x2 < d.nx2, "pinned X2 symbol out of range");
                d.x2_given_q.assign(d.nx2, 0.0);
                d.x2_given_q[run->pin_x2] = 1.0;
            } else {
                d.x2_given_q.assign(d.nx2, 1.0 / d.nx2);
            }
            CodebookSpec spec;
            spec.n = run->n;
            spec.r0 = run->r0;
            spec.rp1 = run->rp1;
            spec.rp2 = run->rp2;
            spec.eps = run->eps;
            spec.seed = run->seed;
            cb = build_codebook(ch->ch, d, spec);
        }

        double want1 = run->r1 > 0 ? run->r1 : cb.rp1;
        double want2 = run->r2 > 0 ? run->r2 : cb.rp2;
        PartitionMap g1 = make_partition(
            cb.cols1, partition_range(cb.n, want1, cb.rows1, cb.cols1));
        PartitionMap g2 = make_partition(
            cb.cols2, partition_range(cb.n, want2, cb.rows2, cb.cols2));

        SimConfig cfg;
        cfg.trials = run->trials;
        cfg.seed = run->seed + 7;  // trials on their own stream
        cfg.eps = run->eps;
        std::string dec = str_or(run->decoder, "map");
        if (dec == "map") cfg.mode = DecodeMode::map;
        else if (dec == "typicality") cfg.mode = DecodeMode::typicality;
        else throw std::invalid_argument("unknown decoder '" + dec + "'");

        SimStats st = run_trials(ch->ch, cb, g1, g2, cfg);
        if (st.eq1 > st.r1 + 1e-9 || st.eq2 > st.r2 + 1e-9)
            throw internal_error("equivocation exceeds the message rate");

        ExportMeta meta;
        meta.config_line = str_or(run->config_line, "");
        write_sim_stats(run->out_path, fmt, st, meta);
        if (lambda) *lambda = st.lambda;
        if (eq1) *eq1 = st.eq1;
        if (eq2) *eq2 = st.eq2;
    });
}

int gmx_verify_equivocation_forms(const gmx_verify_run* run,
                                  long long* disagreements) {
    return guarded([&] {
        require(run, "null run");
        require(run->out_path, "output path required");
        OutFormat fmt = parse_format(str_or(run->format, "csv"));
        int instances = run->instances > 0 ? run->instances : 1000;
        int grid_n = run->grid_n > 0 ? run->grid_n : 64;
        EquivFormsReport rep =
            verify_equivocation_forms(instances, grid_n, run->seed);
        ExportMeta meta;
        meta.config_line = str_or(run->config_line, "");
        write_verify_report(run->out_path, fmt, rep, meta);
        if (disagreements) *disagreements = rep.disagreements;
    });
}
