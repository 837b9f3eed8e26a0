#pragma once
#include <cstdint>
#include <vector>

namespace gmacsec {

// splitmix64. Small, fast, and fully specified, so seeded runs are
// reproducible across platforms (std:: distributions are not).
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Independent substream for trial/codeword id, detached from draw order
    // of the parent stream.
    Rng substream(uint64_t id) const {
        Rng r(state ^ (0x9e3779b97f4a7c15ULL * (id + 0x632be59bd9b4e019ULL)));
        r.next();
        return r;
    }

    double uniform01() { return (next() >> 11) * 0x1.0p-53; }

    uint64_t uniform_below(uint64_t n) {
        if (n <= 1) return 0;
        uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do { x = next(); } while (x >= lim);
        return x % n;
    }

    int categorical(const double* p, int k) {
        double u = uniform01(), c = 0.0;
        for (int i = 0; i + 1 < k; i++) {
            c += p[i];
            if (u < c) return i;
        }
        return k - 1;
    }

    int categorical(const std::vector<double>& p) {
        return categorical(p.data(), (int)p.size());
    }
};

}
