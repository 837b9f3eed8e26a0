#pragma once
#include "gmacsec/aux_dist.hpp"
#include "gmacsec/channel.hpp"
#include "gmacsec/rng.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace gmacsec {

// -------- typical-sequence sampling --------

// Default slack of the typicality test: 0.1 up to blocklength 16, halved
// for every doubling beyond that.
double default_typicality_eps(int n);

// Strong typicality: every symbol's empirical frequency is within eps of
// p, and symbols of probability zero do not occur.
bool is_typical(const std::vector<double>& p, const std::vector<int>& seq,
                double eps);

// Conditional version against a kernel (rows of length nout indexed by the
// parent symbol): joint pair frequencies track p(out|parent) times the
// parent's own frequency.
bool is_typical_given(const std::vector<double>& kernel, int nout,
                      const std::vector<int>& parent,
                      const std::vector<int>& seq, double eps);

// i.i.d. draws rejected until typical. Approximately uniform over the
// typical set (exactly uniform when p is uniform); attempt budget 10^6,
// exhaustion throws.
std::vector<int> sample_typical(const std::vector<double>& p, int n,
                                double eps, Rng& rng);
std::vector<int> sample_typical_given(const std::vector<double>& kernel,
                                      int nout,
                                      const std::vector<int>& parent,
                                      double eps, Rng& rng);

// -------- codebook --------

// Random-binning codebook. Each user's words form a rows x cols table per
// cloud center: the destination decodes the whole table, the other user
// can at best separate columns within a known row, so messages ride on
// rows and on a partition of the columns.
struct Codebook {
    int n = 0;
    double eps = 0;
    int n_clouds = 1;
    int rows1 = 1, cols1 = 1;  // user 1 table, per cloud
    int rows2 = 1, cols2 = 1;  // user 2 table, per cloud
    double r0 = 0;             // realized log2(n_clouds)/n
    double rp1 = 0, rp2 = 0;   // realized table rates (rows*cols)
    double rp1_req = 0, rp2_req = 0;
    double leak1 = 0;          // I(X1;Y2|X2,Q): column capacity of user 1
    double leak2 = 0;          // I(X2;Y1|X1,Q)
    // Requested table rate at or below the leak: the whole table fits in
    // one decodable row set, binning gains nothing and the scheme reports
    // zero equivocation for that user.
    bool no_secrecy1 = false;
    bool no_secrecy2 = false;
    ProductInputDist dist;
    std::vector<std::vector<int>> q;    // [cloud]
    std::vector<std::vector<int>> x1;   // [(cloud*rows1 + row)*cols1 + col]
    std::vector<std::vector<int>> x2;   // [(cloud*rows2 + row)*cols2 + col]

    const std::vector<int>& x1_word(int cloud, int row, int col) const {
        return x1[(static_cast<size_t>(cloud) * rows1 + row) * cols1 + col];
    }
    const std::vector<int>& x2_word(int cloud, int row, int col) const {
        return x2[(static_cast<size_t>(cloud) * rows2 + row) * cols2 + col];
    }
};

struct CodebookSpec {
    int n = 8;
    double r0 = 0;
    double rp1 = 0, rp2 = 0;  // requested table rates
    double eps = 0;           // 0: default_typicality_eps(n)
    uint64_t seed = 1;
};

// Table sizes are rounded to integers (floored at 1) from the requested
// rates and the channel's leak terms; realized rates are recorded in the
// result. Same seed, same codebook, bit for bit.
Codebook build_codebook(const GmacChannel& ch, const ProductInputDist& d,
                        const CodebookSpec& spec);

// Hand-built two-codeword scheme on the one-bit multiplier channel: user 2
// pins x2 = 1, user 1 sends the confidential bit raw, blocklength 1.
// Bypasses the typicality invariant of build_codebook.
Codebook corner_codebook();

// -------- column partitions --------

struct PartitionMap {
    int domain = 1, range = 1;
    std::vector<int> assign;               // assign[col] = bin
    std::vector<std::vector<int>> cells;   // cells[bin] = cols, ascending
};

// Round-robin (col mod bins): cell sizes differ by at most one, so the
// 2x balance bound holds with room to spare.
PartitionMap make_partition(int domain, int range);
std::pair<PartitionMap, PartitionMap> make_partitions(int cols1, int bins1,
                                                      int cols2, int bins2);

// Bin count realizing message rate `rate` over a rows x cols table:
// rows * bins = 2^{n rate}, rounded and clamped to [1, cols].
int partition_range(int n, double rate, int rows, int cols);

// -------- per-trial operations --------

struct Message {
    int w0 = 0;
    int row1 = 0, bin1 = 0;
    int row2 = 0, bin2 = 0;
};

struct EncodedPair {
    int col1 = 0, col2 = 0;
    const std::vector<int>* x1n = nullptr;
    const std::vector<int>* x2n = nullptr;
};

// Stochastic encoder: the column index is drawn uniformly from the bin's
// cell. A single bin spreads the draw over the whole column range.
EncodedPair encode(const Codebook& cb, const PartitionMap& g1,
                   const PartitionMap& g2, const Message& m, Rng& rng);

struct ChannelOutput {
    std::vector<int> y, y1, y2;
};

// Memoryless per-symbol sampling from the transition tensor.
ChannelOutput transmit(const GmacChannel& ch, const std::vector<int>& x1,
                       const std::vector<int>& x2, Rng& rng);

enum class DecodeMode { map, typicality };

struct DecodedTuple {
    int cloud = -1;
    int row1 = -1, col1 = -1;
    int row2 = -1, col2 = -1;
    bool ok = false;
};

// map: exact maximum likelihood over every word tuple, ties to the lowest
// index tuple. typicality: the unique jointly typical tuple, with none or
// several counting as a failure.
DecodedTuple decode_destination(const GmacChannel& ch, const Codebook& cb,
                                const std::vector<int>& y, DecodeMode mode,
                                double eps);

// User 2's view of user 1's column, knowing every other index (and the
// symmetric experiment at user 1). Returns the decoded column, -1 on a
// typicality failure.
int decode_user1_column(const GmacChannel& ch, const Codebook& cb,
                        const std::vector<int>& y2, int cloud, int row1,
                        int row2, int col2, DecodeMode mode, double eps);
int decode_user2_column(const GmacChannel& ch, const Codebook& cb,
                        const std::vector<int>& y1, int cloud, int row1,
                        int col1, int row2, DecodeMode mode, double eps);

// -------- Monte Carlo driver --------

struct SimConfig {
    uint64_t trials = 1000;
    uint64_t seed = 1;
    DecodeMode mode = DecodeMode::map;
    double eps = 0;             // 0: the codebook's eps
    bool errors = true;         // decoding experiments
    bool equivocation = true;   // exact posterior entropies
};

struct SimStats {
    uint64_t trials = 0;
    uint64_t seed = 0;
    int n = 0;
    double r0 = 0, rp1 = 0, rp2 = 0;  // realized codebook rates
    double r1 = 0, r2 = 0;            // realized message rates (rows*bins)
    bool no_secrecy1 = false, no_secrecy2 = false;
    bool bins1_collapsed = false;  // one bin: rows carry the whole message
    bool bins2_collapsed = false;
    double lambda = 0, lambda1 = 0, lambda2 = 0;
    double lambda_hw = 0, lambda1_hw = 0, lambda2_hw = 0;
    bool lambda1_skipped = false, lambda2_skipped = false;
    double eq1 = 0, eq2 = 0;  // bits per symbol
    double eq1_hw = 0, eq2_hw = 0;
};

// Independent trials on substreams of the seed: draw messages, encode,
// transmit, run the three decoding experiments, and compute the exact
// posterior entropy of each confidential message given the other user's
// observables. Posterior enumeration requires rows*cols <= 2^20.
SimStats run_trials(const GmacChannel& ch, const Codebook& cb,
                    const PartitionMap& g1, const PartitionMap& g2,
                    const SimConfig& cfg);

// Equivocation only; the error-rate fields stay zero.
SimStats measure_equivocation(const GmacChannel& ch, const Codebook& cb,
                              const PartitionMap& g1, const PartitionMap& g2,
                              uint64_t trials, uint64_t seed);

}
