#include "gmacsec/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gmacsec/errors.hpp"

namespace gmacsec {

GmacChannel make_channel(int nx1, int nx2, int ny, int ny1, int ny2,
                         std::vector<double> tensor) {
    if (nx1 <= 0 || nx2 <= 0 || ny <= 0 || ny1 <= 0 || ny2 <= 0)
        throw std::invalid_argument("channel: nonpositive alphabet size");
    GmacChannel ch;
    ch.nx1 = nx1;
    ch.nx2 = nx2;
    ch.ny = ny;
    ch.ny1 = ny1;
    ch.ny2 = ny2;
    ch.t = std::move(tensor);
    size_t want = (size_t)nx1 * nx2 * ny * ny1 * ny2;
    if (ch.t.size() != want)
        throw std::invalid_argument("channel: transition tensor size mismatch");
    size_t sc = ch.slice_cells();
    for (int x1 = 0; x1 < nx1; x1++)
        for (int x2 = 0; x2 < nx2; x2++) {
            double* slice = &ch.t[((size_t)x1 * nx2 + x2) * sc];
            double sum = 0.0;
            for (size_t i = 0; i < sc; i++) {
                if (slice[i] < -1e-15)
                    throw std::invalid_argument("channel: negative transition probability");
                if (slice[i] < 1e-15) slice[i] = 0.0;
                sum += slice[i];
            }
            if (std::fabs(sum - 1.0) > 1e-8)
                throw std::invalid_argument("channel: transition slice does not sum to 1");
            for (size_t i = 0; i < sc; i++) slice[i] /= sum;
        }
    return ch;
}

GmacChannel parse_channel(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("channel spec: ") + e.what());
    }
    if (!j.contains("alphabets") || !j.contains("transition"))
        throw std::invalid_argument("channel spec: need alphabets and transition");
    auto& al = j["alphabets"];
    for (const char* k : {"x1", "x2", "y", "y1", "y2"})
        if (!al.contains(k) || !al[k].is_number_integer())
            throw std::invalid_argument(std::string("channel spec: missing alphabet size ") + k);
    int nx1 = al["x1"], nx2 = al["x2"], ny = al["y"], ny1 = al["y1"], ny2 = al["y2"];

    std::vector<double> t;
    auto& tr = j["transition"];
    auto expect = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("channel spec: ") + what);
    };
    expect(tr.is_array() && (int)tr.size() == nx1, "transition x1 dimension mismatch");
    for (auto& a : tr) {
        expect(a.is_array() && (int)a.size() == nx2, "transition x2 dimension mismatch");
        for (auto& b : a) {
            expect(b.is_array() && (int)b.size() == ny, "transition y dimension mismatch");
            for (auto& c : b) {
                expect(c.is_array() && (int)c.size() == ny1, "transition y1 dimension mismatch");
                for (auto& d : c) {
                    expect(d.is_array() && (int)d.size() == ny2, "transition y2 dimension mismatch");
                    for (auto& v : d) {
                        expect(v.is_number(), "transition entry not a number");
                        t.push_back((double)v);
                    }
                }
            }
        }
    }
    return make_channel(nx1, nx2, ny, ny1, ny2, std::move(t));
}

GmacChannel load_channel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("channel spec: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_channel(ss.str());
}

void save_channel(const GmacChannel& ch, const std::string& path) {
    nlohmann::json j;
    j["alphabets"] = {{"x1", ch.nx1}, {"x2", ch.nx2}, {"y", ch.ny}, {"y1", ch.ny1}, {"y2", ch.ny2}};
    nlohmann::json tr = nlohmann::json::array();
    for (int x1 = 0; x1 < ch.nx1; x1++) {
        nlohmann::json a = nlohmann::json::array();
        for (int x2 = 0; x2 < ch.nx2; x2++) {
            nlohmann::json b = nlohmann::json::array();
            for (int y = 0; y < ch.ny; y++) {
                nlohmann::json c = nlohmann::json::array();
                for (int y1 = 0; y1 < ch.ny1; y1++) {
                    nlohmann::json d = nlohmann::json::array();
                    for (int y2 = 0; y2 < ch.ny2; y2++) d.push_back(ch.at(x1, x2, y, y1, y2));
                    c.push_back(d);
                }
                b.push_back(c);
            }
            a.push_back(b);
        }
        tr.push_back(a);
    }
    j["transition"] = tr;
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("channel spec: cannot write " + path);
    out << j.dump(1) << "\n";
}

MarginalChannel marginal(const GmacChannel& ch, Receiver r) {
    MarginalChannel m;
    m.tag = r;
    m.nx1 = ch.nx1;
    m.nx2 = ch.nx2;
    m.nout = r == Receiver::destination ? ch.ny : (r == Receiver::user1 ? ch.ny1 : ch.ny2);
    m.p.assign((size_t)m.nx1 * m.nx2 * m.nout, 0.0);
    for (int x1 = 0; x1 < ch.nx1; x1++)
        for (int x2 = 0; x2 < ch.nx2; x2++)
            for (int y = 0; y < ch.ny; y++)
                for (int y1 = 0; y1 < ch.ny1; y1++)
                    for (int y2 = 0; y2 < ch.ny2; y2++) {
                        int out = r == Receiver::destination ? y : (r == Receiver::user1 ? y1 : y2);
                        m.p[((size_t)x1 * m.nx2 + x2) * m.nout + out] += ch.at(x1, x2, y, y1, y2);
                    }
    return m;
}

bool is_physically_degraded(const GmacChannel& ch, double tol) {
    MarginalChannel md = marginal(ch, Receiver::destination);
    // p(y, y2 | x1, x2) with y1 summed out
    auto joint = [&](int x1, int x2, int y, int y2) {
        double s = 0.0;
        for (int y1 = 0; y1 < ch.ny1; y1++) s += ch.at(x1, x2, y, y1, y2);
        return s;
    };
    for (int x2 = 0; x2 < ch.nx2; x2++)
        for (int y = 0; y < ch.ny; y++) {
            int ref = -1;
            std::vector<double> cref(ch.ny2);
            for (int x1 = 0; x1 < ch.nx1; x1++) {
                double py = md.at(x1, x2, y);
                if (py <= tol) continue;
                std::vector<double> c(ch.ny2);
                for (int y2 = 0; y2 < ch.ny2; y2++) c[y2] = joint(x1, x2, y, y2) / py;
                if (ref < 0) {
                    ref = x1;
                    cref = c;
                } else {
                    for (int y2 = 0; y2 < ch.ny2; y2++)
                        if (std::fabs(c[y2] - cref[y2]) > tol) return false;
                }
            }
        }
    return true;
}

namespace {

// Euclidean projection onto the probability simplex.
void project_simplex(double* v, int n) {
    std::vector<double> u(v, v + n);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    int rho = 0;
    for (int i = 0; i < n; i++) {
        css += u[i];
        double th = (css - 1.0) / (i + 1);
        if (u[i] - th > 0) {
            rho = i + 1;
            theta = th;
        }
    }
    (void)rho;
    for (int i = 0; i < n; i++) v[i] = std::max(0.0, v[i] - theta);
}

}

DegradednessReport find_stochastic_degradation(const GmacChannel& ch, double tol) {
    DegradednessReport rep;
    rep.physically_degraded = is_physically_degraded(ch, tol);
    MarginalChannel md = marginal(ch, Receiver::destination);
    MarginalChannel m2 = marginal(ch, Receiver::user2);

    std::vector<double> kernel((size_t)ch.nx2 * ch.ny * ch.ny2, 0.0);
    auto kat = [&](int x2, int y, int y2) -> double& {
        return kernel[((size_t)x2 * ch.ny + y) * ch.ny2 + y2];
    };

    if (rep.physically_degraded) {
        // the conditional itself is a witness; unconstrained rows go uniform
        for (int x2 = 0; x2 < ch.nx2; x2++)
            for (int y = 0; y < ch.ny; y++) {
                int src = -1;
                for (int x1 = 0; x1 < ch.nx1; x1++)
                    if (md.at(x1, x2, y) > tol) {
                        src = x1;
                        break;
                    }
                if (src < 0) {
                    for (int y2 = 0; y2 < ch.ny2; y2++) kat(x2, y, y2) = 1.0 / ch.ny2;
                } else {
                    double py = md.at(src, x2, y);
                    for (int y2 = 0; y2 < ch.ny2; y2++) {
                        double s = 0.0;
                        for (int y1 = 0; y1 < ch.ny1; y1++) s += ch.at(src, x2, y, y1, y2);
                        kat(x2, y, y2) = s / py;
                    }
                }
            }
    } else {
        // per x2: least squares over row-stochastic kernels by accelerated
        // projected gradient
        for (int x2 = 0; x2 < ch.nx2; x2++) {
            int ny = ch.ny, ny2 = ch.ny2, nx1 = ch.nx1;
            std::vector<double> K((size_t)ny * ny2, 1.0 / ny2);
            std::vector<double> Z = K, Kprev = K, grad(K.size());
            double lips = 0.0;
            for (int x1 = 0; x1 < nx1; x1++)
                for (int y = 0; y < ny; y++) lips += md.at(x1, x2, y) * md.at(x1, x2, y);
            lips = std::max(2.0 * lips, 1e-12);
            double tk = 1.0;
            for (int it = 0; it < 10000; it++) {
                std::fill(grad.begin(), grad.end(), 0.0);
                for (int x1 = 0; x1 < nx1; x1++)
                    for (int y2 = 0; y2 < ny2; y2++) {
                        double r = -m2.at(x1, x2, y2);
                        for (int y = 0; y < ny; y++) r += md.at(x1, x2, y) * Z[(size_t)y * ny2 + y2];
                        for (int y = 0; y < ny; y++)
                            grad[(size_t)y * ny2 + y2] += 2.0 * md.at(x1, x2, y) * r;
                    }
                Kprev = K;
                for (size_t i = 0; i < K.size(); i++) K[i] = Z[i] - grad[i] / lips;
                for (int y = 0; y < ny; y++) project_simplex(&K[(size_t)y * ny2], ny2);
                double tnext = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
                for (size_t i = 0; i < K.size(); i++)
                    Z[i] = K[i] + (tk - 1.0) / tnext * (K[i] - Kprev[i]);
                tk = tnext;
            }
            for (int y = 0; y < ny; y++)
                for (int y2 = 0; y2 < ny2; y2++) kat(x2, y, y2) = K[(size_t)y * ny2 + y2];
        }
    }

    double residual = 0.0;
    for (int x2 = 0; x2 < ch.nx2; x2++)
        for (int x1 = 0; x1 < ch.nx1; x1++)
            for (int y2 = 0; y2 < ch.ny2; y2++) {
                double s = -m2.at(x1, x2, y2);
                for (int y = 0; y < ch.ny; y++) s += md.at(x1, x2, y) * kat(x2, y, y2);
                residual = std::max(residual, std::fabs(s));
            }
    rep.residual = residual;
    rep.stochastically_degraded = residual <= tol;
    if (rep.stochastically_degraded) rep.degrading_kernel = std::move(kernel);
    return rep;
}

GmacChannel builtin_multiplier_bias() {
    std::vector<double> t(2 * 2 * 2 * 1 * 2, 0.0);
    GmacChannel tmp;
    tmp.nx1 = tmp.nx2 = tmp.ny = tmp.ny2 = 2;
    tmp.ny1 = 1;
    for (int x1 = 0; x1 < 2; x1++)
        for (int x2 = 0; x2 < 2; x2++) {
            int y = x1 & x2;
            int y2 = x1 <= x2 ? 1 : 0;
            t[tmp.index(x1, x2, y, 0, y2)] = 1.0;
        }
    return make_channel(2, 2, 2, 1, 2, std::move(t));
}

GmacChannel builtin_degraded_binary(double p) {
    if (p < 0.0 || p > 0.5)
        throw std::invalid_argument("degraded_binary: p outside [0, 1/2]");
    std::vector<double> t(2 * 2 * 2 * 1 * 2, 0.0);
    GmacChannel tmp;
    tmp.nx1 = tmp.nx2 = tmp.ny = tmp.ny2 = 2;
    tmp.ny1 = 1;
    for (int x1 = 0; x1 < 2; x1++)
        for (int x2 = 0; x2 < 2; x2++) {
            int y = x1 & x2;
            for (int y2 = 0; y2 < 2; y2++)
                t[tmp.index(x1, x2, y, 0, y2)] = (y2 == y) ? 1.0 - p : p;
        }
    return make_channel(2, 2, 2, 1, 2, std::move(t));
}

GmacChannel builtin_channel(const std::string& name, double p) {
    if (name == "multiplier_bias") return builtin_multiplier_bias();
    if (name == "degraded_binary") return builtin_degraded_binary(p);
    throw std::invalid_argument("unknown builtin channel: " + name);
}

}
