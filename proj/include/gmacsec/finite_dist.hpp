#pragma once
#include <vector>

#include "gmacsec/errors.hpp"

namespace gmacsec {

// Joint probability mass function over a tuple of finite variables,
// stored as a dense tensor. Variable 0 is the slowest index, the last
// variable the fastest. Alphabets here are tiny (a handful of symbols),
// so dense is always the right call.
class FiniteDist {
public:
    // Total mass must be within 1e-12 of 1; entries below 1e-15 are
    // snapped to exact zero.
    FiniteDist(std::vector<int> sizes, std::vector<double> probs);

    int num_vars() const { return (int)sizes_.size(); }
    int size(int v) const { return sizes_[v]; }
    const std::vector<int>& sizes() const { return sizes_; }
    const std::vector<double>& probs() const { return probs_; }

    // Marginal mass over the listed variables, indexed in their listed
    // order (first listed slowest). Empty list gives the scalar {1}.
    std::vector<double> marginal(const std::vector<int>& vars) const;

private:
    std::vector<int> sizes_;
    std::vector<double> probs_;
};

// Shannon entropy in bits of a raw mass vector, 0 log 0 = 0.
double entropy_of_mass(const std::vector<double>& mass);

// H of the marginal over vars, bits.
double entropy(const FiniteDist& d, const std::vector<int>& vars);

// I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C). The subsets must be
// disjoint. Values in (-1e-9, 0) are clamped to 0; anything more
// negative raises internal_error.
double cond_mutual_info(const FiniteDist& d, const std::vector<int>& a,
                        const std::vector<int>& b, const std::vector<int>& c);

}
