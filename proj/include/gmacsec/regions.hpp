#pragma once
#include "gmacsec/aux_dist.hpp"
#include "gmacsec/channel.hpp"
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gmacsec {

// Mutual-information bundle for the single-confidential-message theorems,
// all in bits.
struct MiOne {
    double u_y_x2q = 0;   // I(U;Y|X2,Q)
    double u_y2_x2q = 0;  // I(U;Y2|X2,Q)
    double ux2q_y = 0;    // I(U,X2,Q;Y)
};

// Bundle for the two-confidential-message theorems.
struct MiTwo {
    double m1 = 0;    // I(U;Y|V,Q)
    double m2 = 0;    // I(V;Y|U,Q)
    double m12 = 0;   // I(U,V;Y|Q)
    double m012 = 0;  // I(U,V,Q;Y)
    double c1 = 0;    // I(U;Y2|X2,V,Q)
    double c2 = 0;    // I(V;Y1|X1,U,Q)
    double u_y_q = 0; // I(U;Y|Q)   (leakage-case classification)
    double v_y_q = 0; // I(V;Y|Q)
};

// Decoding-side bundle for an independent-encoders input, used by the
// simulator's rate budgeting.
struct MacMi {
    double x1_y_x2q = 0;  // I(X1;Y|X2,Q)
    double x2_y_x1q = 0;  // I(X2;Y|X1,Q)
    double x12_y_q = 0;   // I(X1,X2;Y|Q)
    double x12q_y = 0;    // I(X1,X2,Q;Y)
    double leak1 = 0;     // I(X1;Y2|X2,Q)
    double leak2 = 0;     // I(X2;Y1|X1,Q)
};

struct RatePoint {
    double r0 = 0, r1 = 0, r2 = 0, r1e = 0, r2e = 0;
};

enum class Provenance { inner, outer, secrecy, mac };
const char* provenance_name(Provenance p);

// Point-cloud representation of a rate region: extreme/boundary points plus
// the grid id of the distribution that produced each one (-1 when the point
// was synthesized by hull or clamping steps). Regions are downward closed
// toward the origin in every coordinate.
struct RegionTrace {
    Provenance provenance = Provenance::inner;
    std::string grid_desc;
    std::vector<RatePoint> points;
    std::vector<int64_t> grid_ids;
};

struct R0Grid {
    double start = 0.0, stop = 1.0, step = 0.05;
    std::vector<double> values() const;
};

// Search-grid knobs. Cardinalities 0 mean the defaults |Q| = 2,
// |U| = |X1| + 1, |V| = |X2| + 1 for one-message searches; two-message
// searches default to |U| = |V| = 2 to keep the lattice meaningful under
// the point budget. denom 0 picks the largest of {16, 8, 4, 2, 1} whose
// lattice fits the budget.
struct GridOptions {
    int denom = 0;
    uint64_t budget = 1000000;
    int nq = 2;
    int nu = 0;
    int nv = 0;
    int refine_halvings = 6;
};

// -------- per-distribution evaluators --------

MiOne mi_bundle_one_message(const GmacChannel& ch, const OneMessageDist& d);

// The rate term I(U;Y|X2,V) of the outer bound, using d's p(v|q) kernel
// (V := Q when it is empty).
double outer_rate_term(const GmacChannel& ch, const OneMessageDist& d);

MiTwo mi_bundle_two_message(const GmacChannel& ch, const TwoMessageDist& d);
MacMi mac_bundle(const GmacChannel& ch, const ProductInputDist& d);

// Extreme points of the per-distribution inner-bound slice at each R0 in
// the grid: (R1max, Re_max) with clamped eavesdropper terms. Slices with no
// feasible rate are omitted.
std::vector<RatePoint> inner_bound_one(const GmacChannel& ch,
                                       const OneMessageDist& d,
                                       const R0Grid& r0s);

// Per-distribution outer-bound slice points; unlike the inner bound the
// equivocation terms are not clamped at zero, so a slice can be empty even
// at Re = 0 when the eavesdropper is stronger. This is an evaluator for one
// distribution, not a computed outer bound (maximizing an outer bound over
// a finite grid would be unsound).
std::vector<RatePoint> outer_bound_one(const GmacChannel& ch,
                                       const OneMessageDist& d,
                                       const R0Grid& r0s);

// -------- grid searches, one message set --------

// Union over the distribution grid of the (R0, R1) pentagons, convexified.
// Points are hull vertices in R0 order.
RegionTrace secrecy_capacity_region_one(const GmacChannel& ch,
                                        const GridOptions& opts);

// max over the grid (plus local refinement) of
// min{I(U;Y|X2,Q) - I(U;Y2|X2,Q), I(U,X2,Q;Y) - I(U;Y2|X2,Q) - R0},
// clamped at 0.
double secrecy_capacity_at_R0(const GmacChannel& ch, double r0,
                              const GridOptions& opts);

// Largest R1 on the trace's convexified boundary at the given R0
// (piecewise-linear interpolation along hull vertices); -1 when the slice
// is empty. Only meaningful for 2-D (R0, R1) traces.
double trace_boundary_r1(const RegionTrace& tr, double r0);

// Capacity-equivocation region for degraded channels, searched over the
// p(q,x2) p(x1|q) class. Emits per-R0 Pareto points in (R1, Re).
// *degraded_ok reports the degradedness check (callers warn, not refuse).
RegionTrace degraded_region(const GmacChannel& ch, const GridOptions& opts,
                            const R0Grid& r0s, bool* degraded_ok);

// One-message achievable (R1, Re) per R0 over the general
// p(q,x2) p(u|q) p(x1|u) class. Rate points with no positive equivocation
// are kept with Re clamped to 0.
RegionTrace one_message_inner_region(const GmacChannel& ch,
                                     const GridOptions& opts,
                                     const R0Grid& r0s);

// Union over the grid of the per-distribution outer-form pentagons (the
// same rate expressions with the general class in place of p(q,x2)p(x1|q)).
// This is a lower envelope of the outer form, not an outer bound; see
// outer_bound_one for exact per-distribution evaluation.
RegionTrace outer_form_scan(const GmacChannel& ch, const GridOptions& opts,
                            const R0Grid& r0s);

// -------- equivocation sets, two message sets --------

// Membership precondition for the equivocation sets.
bool in_cpmac(double r0, double r1, double r2, const MiTwo& mi, double tol);

// Explicit three-part union form.
bool equiv_explicit_contains(double r0, double r1, double r2, const MiTwo& mi,
                             double r1e, double r2e, double tol);
// Union-over-auxiliary-rates form: membership via the witness reduction
// (exact, no sampling).
bool equiv_union_contains(double r0, double r1, double r2, const MiTwo& mi,
                          double r1e, double r2e, double tol);

// Extreme points of the explicit form (exact 2-D polygon corners).
std::vector<RatePoint> equivocation_set_explicit(double r0, double r1,
                                                 double r2, const MiTwo& mi);
// Box corners of the union form, sampling the auxiliary-rate pair at
// resolution 1/denom of each range; dominance-pruned. For export and
// cross-checks, not membership.
std::vector<RatePoint> equivocation_set_union_form(double r0, double r1,
                                                   double r2, const MiTwo& mi,
                                                   int denom = 256);

struct EquivFormsReport {
    int instances = 0;
    long long cells = 0;
    int disagreements = 0;
    std::string first_counterexample;
};
// Random-instance equivalence harness between the explicit and union
// membership forms on grid_n x grid_n membership grids.
EquivFormsReport verify_equivocation_forms(int instances, int grid_n,
                                     uint64_t seed);

// -------- grid searches, two message sets --------

RegionTrace two_message_inner_bound(const GmacChannel& ch,
                                    const GridOptions& opts,
                                    const R0Grid& r0s);
RegionTrace secrecy_rate_region_two(const GmacChannel& ch,
                                    const GridOptions& opts,
                                    const R0Grid& r0s);
// Perfect-secrecy (R1, R2) corners of one bundle at one R0: the joint
// pentagon plus the two single-user segments, dominance-pruned.
std::vector<RatePoint> secrecy_slice_two(const MiTwo& mi, double r0);
std::pair<bool, bool> positive_secrecy_possible(const GmacChannel& ch,
                                                const GridOptions& opts);

// First grid distribution found for each of the four leakage-ordering
// cases (predicates I(V;Y|Q) vs I(V;Y1|X1,U,Q) and I(U;Y|Q) vs
// I(U;Y2|X2,V,Q)), among distributions whose decoding pentagon is
// nondegenerate.
struct CaseWitness {
    int case_id = 0;
    bool found = false;
    uint64_t grid_id = 0;
    TwoMessageDist dist;
    MiTwo mi;
};
std::vector<CaseWitness> leakage_case_witnesses(const GmacChannel& ch,
                                                const GridOptions& opts,
                                                std::string* grid_desc = nullptr);

// -------- geometry --------

// Extreme points of the convex hull of the cloud union its coordinate
// down-sets.
std::vector<RatePoint> convexify(const std::vector<RatePoint>& pts);

// True iff p lies within tol of the convexified, origin-comprehensive hull
// of the trace points.
bool contains(const RegionTrace& tr, const RatePoint& p, double tol);

}
