#include "gmacsec/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gmacsec/errors.hpp"
#include "gmacsec/regions.hpp"

namespace gmacsec {

namespace {

constexpr uint64_t kSampleBudget = 1000000;
constexpr uint64_t kWordBudget = 1u << 22;
constexpr uint64_t kPosteriorBudget = 1u << 20;
constexpr double kLogZero = -1e300;

double ln_or(double p) { return p > 0 ? std::log(p) : kLogZero; }

struct LogLik {
    int nx2 = 0, nout = 0;
    std::vector<double> lp;  // [(x1*nx2 + x2)*nout + out]

    explicit LogLik(const MarginalChannel& mc)
        : nx2(mc.nx2), nout(mc.nout), lp(mc.p.size()) {
        for (size_t i = 0; i < mc.p.size(); ++i) lp[i] = ln_or(mc.p[i]);
    }

    double word(const std::vector<int>& x1, const std::vector<int>& x2,
                const std::vector<int>& out) const {
        double s = 0;
        for (size_t k = 0; k < out.size(); ++k) {
            s += lp[(x1[k] * nx2 + x2[k]) * nout + out[k]];
        }
        return s;
    }
};

int round_size(double bits) {
    double v = std::exp2(bits);
    if (v >= static_cast<double>(kWordBudget)) {
        throw std::invalid_argument("codebook table dimension too large");
    }
    return static_cast<int>(std::max(1.0, std::round(v)));
}

// Entropy in bits of the distribution proportional to exp(logw).
double posterior_entropy_bits(const std::vector<double>& logw) {
    double m = kLogZero;
    for (double v : logw) m = std::max(m, v);
    if (m <= kLogZero / 2) {
        throw internal_error("posterior with no support");
    }
    double w = 0, s = 0;
    for (double v : logw) {
        double e = std::exp(v - m);
        w += e;
        s += e * (v - m);
    }
    return (std::log(w) - s / w) / std::log(2.0);
}

double freq_half_width(uint64_t hits, uint64_t trials) {
    if (trials == 0) return 0;
    double p = static_cast<double>(hits) / trials;
    return 1.96 * std::sqrt(p * (1 - p) / trials);
}

double mean_half_width(double sum, double sumsq, uint64_t trials) {
    if (trials < 2) return 0;
    double mean = sum / trials;
    double var = (sumsq - trials * mean * mean) / (trials - 1);
    return 1.96 * std::sqrt(std::max(0.0, var) / trials);
}

}  // namespace

double default_typicality_eps(int n) {
    double eps = 0.1;
    for (int m = 16; m < n; m *= 2) eps *= 0.5;
    return eps;
}

bool is_typical(const std::vector<double>& p, const std::vector<int>& seq,
                double eps) {
    int k = static_cast<int>(p.size());
    std::vector<int> count(k, 0);
    for (int v : seq) count[v]++;
    double n = static_cast<double>(seq.size());
    for (int v = 0; v < k; ++v) {
        if (p[v] <= 0 && count[v] > 0) return false;
        if (std::abs(count[v] / n - p[v]) > eps) return false;
    }
    return true;
}

bool is_typical_given(const std::vector<double>& kernel, int nout,
                      const std::vector<int>& parent,
                      const std::vector<int>& seq, double eps) {
    int rows = static_cast<int>(kernel.size()) / nout;
    std::vector<int> pair(rows * nout, 0), base(rows, 0);
    for (size_t i = 0; i < seq.size(); ++i) {
        pair[parent[i] * nout + seq[i]]++;
        base[parent[i]]++;
    }
    double n = static_cast<double>(seq.size());
    for (int c = 0; c < rows; ++c) {
        for (int v = 0; v < nout; ++v) {
            double pv = kernel[c * nout + v];
            int cnt = pair[c * nout + v];
            if (pv <= 0 && cnt > 0) return false;
            if (std::abs(cnt / n - pv * base[c] / n) > eps) return false;
        }
    }
    return true;
}

std::vector<int> sample_typical(const std::vector<double>& p, int n,
                                double eps, Rng& rng) {
    if (n < 1 || eps <= 0) {
        throw std::invalid_argument("need n >= 1 and eps > 0");
    }
    std::vector<int> seq(n);
    for (uint64_t tries = 0; tries < kSampleBudget; ++tries) {
        for (int i = 0; i < n; ++i) seq[i] = rng.categorical(p);
        if (is_typical(p, seq, eps)) return seq;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "typicality sampling budget exhausted (n=%d, eps=%g)", n,
                  eps);
    throw std::runtime_error(buf);
}

std::vector<int> sample_typical_given(const std::vector<double>& kernel,
                                      int nout,
                                      const std::vector<int>& parent,
                                      double eps, Rng& rng) {
    if (parent.empty() || eps <= 0) {
        throw std::invalid_argument("need a parent sequence and eps > 0");
    }
    int n = static_cast<int>(parent.size());
    std::vector<int> seq(n);
    for (uint64_t tries = 0; tries < kSampleBudget; ++tries) {
        for (int i = 0; i < n; ++i) {
            seq[i] = rng.categorical(kernel.data() + parent[i] * nout, nout);
        }
        if (is_typical_given(kernel, nout, parent, seq, eps)) return seq;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "typicality sampling budget exhausted (n=%d, eps=%g)", n,
                  eps);
    throw std::runtime_error(buf);
}

Codebook build_codebook(const GmacChannel& ch, const ProductInputDist& d,
                        const CodebookSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("blocklength must be >= 1");
    if (spec.r0 < 0 || spec.rp1 < 0 || spec.rp2 < 0) {
        throw std::invalid_argument("rates must be nonnegative");
    }
    MacMi mi = mac_bundle(ch, d);
    Codebook cb;
    cb.n = spec.n;
    cb.eps = spec.eps > 0 ? spec.eps : default_typicality_eps(spec.n);
    cb.dist = d;
    cb.leak1 = mi.leak1;
    cb.leak2 = mi.leak2;
    cb.rp1_req = spec.rp1;
    cb.rp2_req = spec.rp2;
    cb.no_secrecy1 = spec.rp1 <= mi.leak1 + 1e-12;
    cb.no_secrecy2 = spec.rp2 <= mi.leak2 + 1e-12;

    cb.n_clouds = round_size(spec.n * spec.r0);
    if (cb.no_secrecy1) {
        cb.rows1 = 1;
        cb.cols1 = round_size(spec.n * spec.rp1);
    } else {
        cb.rows1 = round_size(spec.n * (spec.rp1 - mi.leak1));
        cb.cols1 = round_size(spec.n * mi.leak1);
    }
    if (cb.no_secrecy2) {
        cb.rows2 = 1;
        cb.cols2 = round_size(spec.n * spec.rp2);
    } else {
        cb.rows2 = round_size(spec.n * (spec.rp2 - mi.leak2));
        cb.cols2 = round_size(spec.n * mi.leak2);
    }
    cb.r0 = std::log2(static_cast<double>(cb.n_clouds)) / spec.n;
    cb.rp1 = std::log2(static_cast<double>(cb.rows1) * cb.cols1) / spec.n;
    cb.rp2 = std::log2(static_cast<double>(cb.rows2) * cb.cols2) / spec.n;

    uint64_t words1 =
        static_cast<uint64_t>(cb.n_clouds) * cb.rows1 * cb.cols1;
    uint64_t words2 =
        static_cast<uint64_t>(cb.n_clouds) * cb.rows2 * cb.cols2;
    if (words1 > kWordBudget || words2 > kWordBudget) {
        throw std::invalid_argument("codebook exceeds the generation budget");
    }

    Rng rng(spec.seed);
    cb.q.reserve(cb.n_clouds);
    cb.x1.reserve(words1);
    cb.x2.reserve(words2);
    for (int i = 0; i < cb.n_clouds; ++i) {
        cb.q.push_back(sample_typical(d.q, spec.n, cb.eps, rng));
    }
    for (int i = 0; i < cb.n_clouds; ++i) {
        for (int w = 0; w < cb.rows1 * cb.cols1; ++w) {
            cb.x1.push_back(sample_typical_given(d.x1_given_q, d.nx1,
                                                 cb.q[i], cb.eps, rng));
        }
    }
    for (int i = 0; i < cb.n_clouds; ++i) {
        for (int w = 0; w < cb.rows2 * cb.cols2; ++w) {
            cb.x2.push_back(sample_typical_given(d.x2_given_q, d.nx2,
                                                 cb.q[i], cb.eps, rng));
        }
    }
    return cb;
}

Codebook corner_codebook() {
    Codebook cb;
    cb.n = 1;
    cb.eps = 1.0;
    cb.n_clouds = 1;
    cb.rows1 = 1;
    cb.cols1 = 2;
    cb.rows2 = 1;
    cb.cols2 = 1;
    cb.r0 = 0;
    cb.rp1 = cb.rp1_req = 1.0;
    cb.rp2 = cb.rp2_req = 0.0;
    cb.leak1 = 0.0;  // y2 = [x1 <= x2] is constant once x2 = 1
    cb.leak2 = 0.0;
    cb.no_secrecy1 = false;
    cb.no_secrecy2 = true;
    cb.dist.nq = 1;
    cb.dist.nx1 = 2;
    cb.dist.nx2 = 2;
    cb.dist.q = {1.0};
    cb.dist.x1_given_q = {0.5, 0.5};
    cb.dist.x2_given_q = {0.0, 1.0};
    cb.q = {{0}};
    cb.x1 = {{0}, {1}};
    cb.x2 = {{1}};
    return cb;
}

PartitionMap make_partition(int domain, int range) {
    if (range < 1 || range > domain) {
        throw std::invalid_argument("partition range must be in [1, domain]");
    }
    PartitionMap g;
    g.domain = domain;
    g.range = range;
    g.assign.resize(domain);
    g.cells.assign(range, {});
    for (int d = 0; d < domain; ++d) {
        g.assign[d] = d % range;
        g.cells[d % range].push_back(d);
    }
    return g;
}

std::pair<PartitionMap, PartitionMap> make_partitions(int cols1, int bins1,
                                                      int cols2,
                                                      int bins2) {
    return {make_partition(cols1, bins1), make_partition(cols2, bins2)};
}

int partition_range(int n, double rate, int rows, int cols) {
    double want = std::exp2(n * rate) / rows;
    long long bins = std::llround(want);
    return static_cast<int>(
        std::clamp<long long>(bins, 1, static_cast<long long>(cols)));
}

EncodedPair encode(const Codebook& cb, const PartitionMap& g1,
                   const PartitionMap& g2, const Message& m, Rng& rng) {
    if (g1.domain != cb.cols1 || g2.domain != cb.cols2) {
        throw std::invalid_argument("partition domains do not match");
    }
    if (m.w0 < 0 || m.w0 >= cb.n_clouds || m.row1 < 0 ||
        m.row1 >= cb.rows1 || m.row2 < 0 || m.row2 >= cb.rows2 ||
        m.bin1 < 0 || m.bin1 >= g1.range || m.bin2 < 0 ||
        m.bin2 >= g2.range) {
        throw std::invalid_argument("message index out of range");
    }
    EncodedPair e;
    const std::vector<int>& c1 = g1.cells[m.bin1];
    const std::vector<int>& c2 = g2.cells[m.bin2];
    e.col1 = c1[rng.uniform_below(c1.size())];
    e.col2 = c2[rng.uniform_below(c2.size())];
    e.x1n = &cb.x1_word(m.w0, m.row1, e.col1);
    e.x2n = &cb.x2_word(m.w0, m.row2, e.col2);
    return e;
}

ChannelOutput transmit(const GmacChannel& ch, const std::vector<int>& x1,
                       const std::vector<int>& x2, Rng& rng) {
    if (x1.size() != x2.size()) {
        throw std::invalid_argument("input length mismatch");
    }
    int row_len = ch.ny * ch.ny1 * ch.ny2;
    ChannelOutput out;
    out.y.resize(x1.size());
    out.y1.resize(x1.size());
    out.y2.resize(x1.size());
    for (size_t k = 0; k < x1.size(); ++k) {
        const double* row = ch.t.data() + (x1[k] * ch.nx2 + x2[k]) * row_len;
        int idx = rng.categorical(row, row_len);
        out.y[k] = idx / (ch.ny1 * ch.ny2);
        out.y1[k] = (idx / ch.ny2) % ch.ny1;
        out.y2[k] = idx % ch.ny2;
    }
    return out;
}

namespace {

// Joint law over (q, x1, x2, out) used by the typicality decoders.
std::vector<double> joint_with_output(const ProductInputDist& d,
                                      const MarginalChannel& mc) {
    std::vector<double> j(static_cast<size_t>(d.nq) * d.nx1 * d.nx2 *
                          mc.nout);
    size_t at = 0;
    for (int q = 0; q < d.nq; ++q) {
        for (int a = 0; a < d.nx1; ++a) {
            for (int b = 0; b < d.nx2; ++b) {
                double base = d.q[q] * d.x1_given_q[q * d.nx1 + a] *
                              d.x2_given_q[q * d.nx2 + b];
                for (int o = 0; o < mc.nout; ++o) {
                    j[at++] = base * mc.at(a, b, o);
                }
            }
        }
    }
    return j;
}

bool tuple_typical(const std::vector<double>& joint, int nx1, int nx2,
                   int nout, const std::vector<int>& q,
                   const std::vector<int>& x1, const std::vector<int>& x2,
                   const std::vector<int>& out, double eps) {
    std::vector<int> count(joint.size(), 0);
    for (size_t k = 0; k < out.size(); ++k) {
        count[((q[k] * nx1 + x1[k]) * static_cast<size_t>(nx2) + x2[k]) *
                  nout +
              out[k]]++;
    }
    double n = static_cast<double>(out.size());
    for (size_t c = 0; c < joint.size(); ++c) {
        if (joint[c] <= 0 && count[c] > 0) return false;
        if (std::abs(count[c] / n - joint[c]) > eps) return false;
    }
    return true;
}

}  // namespace

DecodedTuple decode_destination(const GmacChannel& ch, const Codebook& cb,
                                const std::vector<int>& y, DecodeMode mode,
                                double eps) {
    DecodedTuple best;
    if (mode == DecodeMode::map) {
        LogLik lik(marginal(ch, Receiver::destination));
        double top = -1e308;
        for (int i = 0; i < cb.n_clouds; ++i) {
            for (int a = 0; a < cb.rows1; ++a) {
                for (int b = 0; b < cb.cols1; ++b) {
                    const std::vector<int>& w1 = cb.x1_word(i, a, b);
                    for (int s = 0; s < cb.rows2; ++s) {
                        for (int t = 0; t < cb.cols2; ++t) {
                            double sc = lik.word(w1, cb.x2_word(i, s, t), y);
                            if (sc > top) {
                                top = sc;
                                best = {i, a, b, s, t, true};
                            }
                        }
                    }
                }
            }
        }
        return best;
    }
    std::vector<double> joint =
        joint_with_output(cb.dist, marginal(ch, Receiver::destination));
    int hits = 0;
    for (int i = 0; i < cb.n_clouds; ++i) {
        for (int a = 0; a < cb.rows1; ++a) {
            for (int b = 0; b < cb.cols1; ++b) {
                const std::vector<int>& w1 = cb.x1_word(i, a, b);
                for (int s = 0; s < cb.rows2; ++s) {
                    for (int t = 0; t < cb.cols2; ++t) {
                        if (tuple_typical(joint, cb.dist.nx1, cb.dist.nx2,
                                          ch.ny, cb.q[i], w1,
                                          cb.x2_word(i, s, t), y, eps)) {
                            if (++hits > 1) return {};
                            best = {i, a, b, s, t, true};
                        }
                    }
                }
            }
        }
    }
    return hits == 1 ? best : DecodedTuple{};
}

int decode_user1_column(const GmacChannel& ch, const Codebook& cb,
                        const std::vector<int>& y2, int cloud, int row1,
                        int row2, int col2, DecodeMode mode, double eps) {
    const std::vector<int>& x2n = cb.x2_word(cloud, row2, col2);
    if (mode == DecodeMode::map) {
        LogLik lik(marginal(ch, Receiver::user2));
        int best = 0;
        double top = -1e308;
        for (int b = 0; b < cb.cols1; ++b) {
            double sc = lik.word(cb.x1_word(cloud, row1, b), x2n, y2);
            if (sc > top) {
                top = sc;
                best = b;
            }
        }
        return best;
    }
    std::vector<double> joint =
        joint_with_output(cb.dist, marginal(ch, Receiver::user2));
    int best = -1, hits = 0;
    for (int b = 0; b < cb.cols1; ++b) {
        if (tuple_typical(joint, cb.dist.nx1, cb.dist.nx2, ch.ny2,
                          cb.q[cloud], cb.x1_word(cloud, row1, b), x2n, y2,
                          eps)) {
            if (++hits > 1) return -1;
            best = b;
        }
    }
    return hits == 1 ? best : -1;
}

int decode_user2_column(const GmacChannel& ch, const Codebook& cb,
                        const std::vector<int>& y1, int cloud, int row1,
                        int col1, int row2, DecodeMode mode, double eps) {
    const std::vector<int>& x1n = cb.x1_word(cloud, row1, col1);
    if (mode == DecodeMode::map) {
        LogLik lik(marginal(ch, Receiver::user1));
        int best = 0;
        double top = -1e308;
        for (int t = 0; t < cb.cols2; ++t) {
            double sc = lik.word(x1n, cb.x2_word(cloud, row2, t), y1);
            if (sc > top) {
                top = sc;
                best = t;
            }
        }
        return best;
    }
    std::vector<double> joint =
        joint_with_output(cb.dist, marginal(ch, Receiver::user1));
    int best = -1, hits = 0;
    for (int t = 0; t < cb.cols2; ++t) {
        if (tuple_typical(joint, cb.dist.nx1, cb.dist.nx2, ch.ny1,
                          cb.q[cloud], x1n, cb.x2_word(cloud, row2, t), y1,
                          eps)) {
            if (++hits > 1) return -1;
            best = t;
        }
    }
    return hits == 1 ? best : -1;
}

SimStats run_trials(const GmacChannel& ch, const Codebook& cb,
                    const PartitionMap& g1, const PartitionMap& g2,
                    const SimConfig& cfg) {
    if (g1.domain != cb.cols1 || g2.domain != cb.cols2) {
        throw std::invalid_argument("partition domains do not match");
    }
    uint64_t table1 = static_cast<uint64_t>(cb.rows1) * cb.cols1;
    uint64_t table2 = static_cast<uint64_t>(cb.rows2) * cb.cols2;
    if (cfg.equivocation &&
        (table1 > kPosteriorBudget || table2 > kPosteriorBudget)) {
        throw std::invalid_argument(
            "posterior enumeration budget exceeded (rows*cols > 2^20)");
    }

    SimStats st;
    st.trials = cfg.trials;
    st.seed = cfg.seed;
    st.n = cb.n;
    st.r0 = cb.r0;
    st.rp1 = cb.rp1;
    st.rp2 = cb.rp2;
    st.r1 = std::log2(static_cast<double>(cb.rows1) * g1.range) / cb.n;
    st.r2 = std::log2(static_cast<double>(cb.rows2) * g2.range) / cb.n;
    st.no_secrecy1 = cb.no_secrecy1;
    st.no_secrecy2 = cb.no_secrecy2;
    st.bins1_collapsed = g1.range == 1;
    st.bins2_collapsed = g2.range == 1;
    st.lambda1_skipped = cb.no_secrecy1;
    st.lambda2_skipped = cb.no_secrecy2;

    double eps = cfg.eps > 0 ? cfg.eps : cb.eps;
    LogLik lik2(marginal(ch, Receiver::user2));
    LogLik lik1(marginal(ch, Receiver::user1));

    uint64_t err = 0, err1 = 0, err2 = 0;
    double eq1_sum = 0, eq1_sq = 0, eq2_sum = 0, eq2_sq = 0;
    std::vector<double> score1(table1), score2(table2);
    std::vector<double> logw1(static_cast<size_t>(cb.rows1) * g1.range);
    std::vector<double> logw2(static_cast<size_t>(cb.rows2) * g2.range);

    Rng root(cfg.seed);
    for (uint64_t trial = 0; trial < cfg.trials; ++trial) {
        Rng tr = root.substream(trial);
        Message m;
        m.w0 = static_cast<int>(tr.uniform_below(cb.n_clouds));
        m.row1 = static_cast<int>(tr.uniform_below(cb.rows1));
        m.bin1 = static_cast<int>(tr.uniform_below(g1.range));
        m.row2 = static_cast<int>(tr.uniform_below(cb.rows2));
        m.bin2 = static_cast<int>(tr.uniform_below(g2.range));
        EncodedPair enc = encode(cb, g1, g2, m, tr);
        ChannelOutput out = transmit(ch, *enc.x1n, *enc.x2n, tr);

        if (cfg.errors) {
            DecodedTuple d =
                decode_destination(ch, cb, out.y, cfg.mode, eps);
            if (!d.ok || d.cloud != m.w0 || d.row1 != m.row1 ||
                d.col1 != enc.col1 || d.row2 != m.row2 ||
                d.col2 != enc.col2) {
                err++;
            }
            if (!cb.no_secrecy1) {
                int b = decode_user1_column(ch, cb, out.y2, m.w0, m.row1,
                                            m.row2, enc.col2, cfg.mode,
                                            eps);
                if (b != enc.col1) err1++;
            }
            if (!cb.no_secrecy2) {
                int t = decode_user2_column(ch, cb, out.y1, m.w0, m.row1,
                                            enc.col1, m.row2, cfg.mode,
                                            eps);
                if (t != enc.col2) err2++;
            }
        }

        if (cfg.equivocation) {
            // Exact posterior of (row, bin) given the eavesdropper's view:
            // output sequence, own word, cloud index, own messages.
            for (int a = 0; a < cb.rows1; ++a) {
                for (int b = 0; b < cb.cols1; ++b) {
                    score1[a * cb.cols1 + b] =
                        lik2.word(cb.x1_word(m.w0, a, b), *enc.x2n, out.y2);
                }
            }
            for (int a = 0; a < cb.rows1; ++a) {
                for (int j = 0; j < g1.range; ++j) {
                    const std::vector<int>& cell = g1.cells[j];
                    double mtop = kLogZero;
                    for (int b : cell) {
                        mtop = std::max(mtop, score1[a * cb.cols1 + b]);
                    }
                    double acc = 0;
                    if (mtop > kLogZero / 2) {
                        for (int b : cell) {
                            acc += std::exp(score1[a * cb.cols1 + b] - mtop);
                        }
                    }
                    logw1[a * g1.range + j] =
                        acc > 0 ? mtop + std::log(acc / cell.size())
                                : kLogZero;
                }
            }
            double h1 = posterior_entropy_bits(logw1) / cb.n;
            eq1_sum += h1;
            eq1_sq += h1 * h1;

            for (int s = 0; s < cb.rows2; ++s) {
                for (int t = 0; t < cb.cols2; ++t) {
                    score2[s * cb.cols2 + t] =
                        lik1.word(*enc.x1n, cb.x2_word(m.w0, s, t), out.y1);
                }
            }
            for (int s = 0; s < cb.rows2; ++s) {
                for (int k = 0; k < g2.range; ++k) {
                    const std::vector<int>& cell = g2.cells[k];
                    double mtop = kLogZero;
                    for (int t : cell) {
                        mtop = std::max(mtop, score2[s * cb.cols2 + t]);
                    }
                    double acc = 0;
                    if (mtop > kLogZero / 2) {
                        for (int t : cell) {
                            acc += std::exp(score2[s * cb.cols2 + t] - mtop);
                        }
                    }
                    logw2[s * g2.range + k] =
                        acc > 0 ? mtop + std::log(acc / cell.size())
                                : kLogZero;
                }
            }
            double h2 = posterior_entropy_bits(logw2) / cb.n;
            eq2_sum += h2;
            eq2_sq += h2 * h2;
        }
    }

    if (cfg.errors && cfg.trials > 0) {
        st.lambda = static_cast<double>(err) / cfg.trials;
        st.lambda_hw = freq_half_width(err, cfg.trials);
        if (!st.lambda1_skipped) {
            st.lambda1 = static_cast<double>(err1) / cfg.trials;
            st.lambda1_hw = freq_half_width(err1, cfg.trials);
        }
        if (!st.lambda2_skipped) {
            st.lambda2 = static_cast<double>(err2) / cfg.trials;
            st.lambda2_hw = freq_half_width(err2, cfg.trials);
        }
    }
    if (cfg.equivocation && cfg.trials > 0) {
        st.eq1 = eq1_sum / cfg.trials;
        st.eq1_hw = mean_half_width(eq1_sum, eq1_sq, cfg.trials);
        st.eq2 = eq2_sum / cfg.trials;
        st.eq2_hw = mean_half_width(eq2_sum, eq2_sq, cfg.trials);
    }
    return st;
}

SimStats measure_equivocation(const GmacChannel& ch, const Codebook& cb,
                              const PartitionMap& g1, const PartitionMap& g2,
                              uint64_t trials, uint64_t seed) {
    SimConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.errors = false;
    return run_trials(ch, cb, g1, g2, cfg);
}

}
