#pragma once
#include "gmacsec/finite_dist.hpp"
#include "gmacsec/channel.hpp"
#include <cstdint>
#include <functional>
#include <vector>

namespace gmacsec {

// Input class p(q,x2) p(u|q) p(x1|u) for the single-confidential-message
// evaluators. Kernels are row-major: qx2[q*nx2+x2], u_given_q[q*nu+u],
// x1_given_u[u*nx1+x1]. The optional extra auxiliary p(v|q) feeds only the
// outer-bound rate term; empty means V := Q.
struct OneMessageDist {
    int nq = 0, nu = 0, nx1 = 0, nx2 = 0;
    std::vector<double> qx2;
    std::vector<double> u_given_q;
    std::vector<double> x1_given_u;
    int nv = 0;
    std::vector<double> v_given_q;
};

// Input class p(q) p(u|q) p(x1|u) p(v|q) p(x2|v) for the two-message
// evaluators.
struct TwoMessageDist {
    int nq = 0, nu = 0, nv = 0, nx1 = 0, nx2 = 0;
    std::vector<double> q;
    std::vector<double> u_given_q;
    std::vector<double> x1_given_u;
    std::vector<double> v_given_q;
    std::vector<double> x2_given_v;
};

// Independent-encoders class p(q) p(x1|q) p(x2|q) used by the simulator's
// rate bookkeeping.
struct ProductInputDist {
    int nq = 0, nx1 = 0, nx2 = 0;
    std::vector<double> q;
    std::vector<double> x1_given_q;
    std::vector<double> x2_given_q;
};

// Joint tensors, variable order as listed. Y1 is summed out of the
// one-message joint since no evaluator conditions on it there.
FiniteDist one_message_joint(const GmacChannel& ch, const OneMessageDist& d);   // (Q,U,X1,X2,Y,Y2)
FiniteDist two_message_joint(const GmacChannel& ch, const TwoMessageDist& d);   // (Q,U,V,X1,X2,Y,Y1,Y2)
FiniteDist product_input_joint(const GmacChannel& ch, const ProductInputDist& d);  // (Q,X1,X2,Y,Y1,Y2)

// A lattice over a product of simplices: `rows` independent distributions,
// each over `cols` outcomes, entries restricted to multiples of 1/denom.
struct SimplexBlock {
    int rows = 0, cols = 0;
};

// Number of lattice points, saturated at cap+1 to keep the arithmetic exact.
uint64_t lattice_count(const std::vector<SimplexBlock>& blocks, int denom,
                       uint64_t cap);

// Largest denominator in {16, 8, 4, 2, 1} whose lattice fits the budget, or
// `forced` when nonzero. Throws std::invalid_argument if nothing fits.
int pick_denom(const std::vector<SimplexBlock>& blocks, int forced,
               uint64_t budget);

// Enumerates every lattice point in a fixed deterministic order (row-major
// over rows; within a row, compositions of denom). `fill` receives the flat
// row index and a pointer to that row's probabilities.
class LatticeScan {
public:
    LatticeScan(std::vector<SimplexBlock> blocks, int denom);
    uint64_t total() const { return total_; }
    // Writes the current point through `fill(row, probs, cols)` and returns
    // its scan id, then advances. Returns false when exhausted.
    bool next(const std::function<void(int, const double*, int)>& fill,
              uint64_t* id);

private:
    int denom_;
    uint64_t total_, at_ = 0;
    std::vector<int> cols_;            // flattened rows
    std::vector<std::vector<int>> comp_;
    std::vector<std::vector<double>> row_;
    bool advance_row(int r);
};

// Local search around a lattice point: repeatedly moves probability mass
// delta from one entry of a row to another, keeping the best strict
// improvement per sweep, halving delta `halvings` times starting at
// step/2. Returns the final objective value. `eval` must read the storage
// behind `rows`.
struct RowRef {
    double* p = nullptr;
    int len = 0;
};
double refine_rows(std::vector<RowRef> rows, double step, int halvings,
                   const std::function<double()>& eval);

}
