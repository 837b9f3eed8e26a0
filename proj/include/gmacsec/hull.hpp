#pragma once
#include <vector>

namespace gmacsec {

// Upper concave envelope of a 2-D point set (x ascending). Returns the
// subset of input points on the envelope, in x order.
std::vector<std::pair<double, double>> upper_concave_envelope(
    std::vector<std::pair<double, double>> pts);

// Removes points componentwise-dominated by another point (all coordinates
// <=, at least one <). Ties keep the earlier point. dim is the number of
// leading coordinates compared.
void dominance_prune(std::vector<std::vector<double>>& pts, int dim);

// True iff z is in the downward closure of the convex hull of cloud within
// slack, i.e. some convex combination of cloud points dominates z - slack
// componentwise. Small dense phase-1 simplex.
bool downset_hull_member(const std::vector<std::vector<double>>& cloud,
                         const std::vector<double>& z, double slack);

}
