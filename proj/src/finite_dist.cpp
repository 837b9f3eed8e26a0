#include "gmacsec/finite_dist.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace gmacsec {

FiniteDist::FiniteDist(std::vector<int> sizes, std::vector<double> probs)
    : sizes_(std::move(sizes)), probs_(std::move(probs)) {
    if (sizes_.empty()) throw std::invalid_argument("FiniteDist: no variables");
    size_t cells = 1;
    for (int s : sizes_) {
        if (s <= 0) throw std::invalid_argument("FiniteDist: nonpositive alphabet size");
        cells *= (size_t)s;
    }
    if (probs_.size() != cells)
        throw std::invalid_argument("FiniteDist: tensor size mismatch");
    double sum = 0.0;
    for (double& p : probs_) {
        if (p < -1e-15) throw std::invalid_argument("FiniteDist: negative probability");
        if (p < 1e-15) p = 0.0;
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("FiniteDist: mass not 1");
}

std::vector<double> FiniteDist::marginal(const std::vector<int>& vars) const {
    for (size_t i = 0; i < vars.size(); i++) {
        if (vars[i] < 0 || vars[i] >= num_vars())
            throw std::invalid_argument("marginal: variable index out of range");
        for (size_t j = i + 1; j < vars.size(); j++)
            if (vars[i] == vars[j])
                throw std::invalid_argument("marginal: duplicate variable");
    }
    size_t out_cells = 1;
    for (int v : vars) out_cells *= (size_t)sizes_[v];
    std::vector<double> out(out_cells, 0.0);

    std::vector<int> idx(sizes_.size(), 0);
    for (size_t cell = 0; cell < probs_.size(); cell++) {
        if (probs_[cell] != 0.0) {
            size_t oi = 0;
            for (int v : vars) oi = oi * (size_t)sizes_[v] + (size_t)idx[v];
            out[oi] += probs_[cell];
        }
        for (int v = (int)sizes_.size() - 1; v >= 0; v--) {
            if (++idx[v] < sizes_[v]) break;
            idx[v] = 0;
        }
    }
    return out;
}

double entropy_of_mass(const std::vector<double>& mass) {
    double h = 0.0;
    for (double p : mass)
        if (p >= 1e-15) h -= p * std::log2(p);
    return h;
}

double entropy(const FiniteDist& d, const std::vector<int>& vars) {
    if (vars.empty()) throw std::invalid_argument("entropy: empty variable set");
    return entropy_of_mass(d.marginal(vars));
}

static std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

double cond_mutual_info(const FiniteDist& d, const std::vector<int>& a,
                        const std::vector<int>& b, const std::vector<int>& c) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("cond_mutual_info: empty variable set");
    for (int va : a)
        for (int vb : b)
            if (va == vb) throw std::invalid_argument("cond_mutual_info: overlapping sets");
    for (int vc : c) {
        for (int va : a)
            if (va == vc) throw std::invalid_argument("cond_mutual_info: overlapping sets");
        for (int vb : b)
            if (vb == vc) throw std::invalid_argument("cond_mutual_info: overlapping sets");
    }
    double hac = entropy_of_mass(d.marginal(concat(a, c)));
    double hbc = entropy_of_mass(d.marginal(concat(b, c)));
    double habc = entropy_of_mass(d.marginal(concat(concat(a, b), c)));
    double hc = c.empty() ? 0.0 : entropy_of_mass(d.marginal(c));
    double mi = hac + hbc - habc - hc;
    if (mi < 0.0) {
        if (mi > -1e-9) return 0.0;
        throw internal_error("cond_mutual_info: negative beyond tolerance");
    }
    return mi;
}

}
