#include "pbl/volume.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pbl {
namespace {

// componentwise-minimal corners, sorted ascending
std::vector<std::vector<Rat>> minimal_corners(std::vector<std::vector<Rat>> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<std::vector<Rat>> kept;
    for (std::size_t i = 0; i < v.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < v.size() && !dominated; ++j) {
            if (i == j) continue;
            bool le = true;
            for (std::size_t t = 0; t < v[i].size() && le; ++t) le = v[j][t] <= v[i][t];
            dominated = le && v[j] != v[i];
        }
        if (!dominated) kept.push_back(v[i]);
    }
    return kept;
}

Rat factorial(std::size_t n) {
    Rat f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= Rat(Int(i));
    return f;
}

// Vol((v + orthant) n {(a,x) < alpha}) = max(0, alpha - a.v)^d / (d! prod a_i)
Rat corner_simplex_volume(const std::vector<Rat>& v, const WeightVector& a,
                          const Rat& alpha) {
    Rat excess = alpha - dot(a, v);
    if (excess <= 0) return 0;
    Rat vol = 1;
    for (std::size_t i = 0; i < v.size(); ++i) vol *= excess / a[i];
    return vol / factorial(v.size());
}

// d = 2 staircase sweep: the region between consecutive corner abscissae is a
// single slab {y >= y_i} cut by the halfspace; integrate exactly.
Rat sweep_2d(const std::vector<std::vector<Rat>>& corners, const WeightVector& a,
             const Rat& alpha) {
    Rat total = 0;
    for (std::size_t i = 0; i < corners.size(); ++i) {
        const Rat& x0 = corners[i][0];
        const Rat& y0 = corners[i][1];
        // integrand (alpha - a0 x)/a1 - y0 vanishes at x = xstar
        Rat xstar = (alpha - a[1] * y0) / a[0];
        Rat hi = xstar;
        if (i + 1 < corners.size()) hi = std::min(hi, corners[i + 1][0]);
        if (hi <= x0) continue;
        Rat left = xstar - x0;
        Rat right = xstar - hi;
        total += (a[0] / (2 * a[1])) * (left * left - right * right);
    }
    return total;
}

}  // namespace

bool orthant_union_exact_feasible(std::size_t d, std::size_t n_corners) {
    return d <= 2 || n_corners <= kInclusionExclusionMaxGens;
}

Rat orthant_union_truncated_volume(const std::vector<std::vector<Rat>>& corners,
                                   const WeightVector& a, const Rat& alpha) {
    if (corners.empty()) return 0;
    const std::size_t d = corners[0].size();
    if (a.dim() != d) throw DimensionError("weight dimension mismatch");
    if (!a.strictly_positive())
        throw NotTruncatingError("orthant truncation needs strictly positive weights");

    std::vector<std::vector<Rat>> mins = minimal_corners(corners);
    if (d == 1) {
        Rat lo = mins[0][0];
        Rat end = alpha / a[0];
        return end > lo ? end - lo : Rat(0);
    }
    if (d == 2) return sweep_2d(mins, a, alpha);

    if (mins.size() > kInclusionExclusionMaxGens)
        throw Error("inclusion-exclusion term cap exceeded; use the Monte Carlo path");
    const std::size_t n = mins.size();
    Rat vol = 0;
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        std::vector<Rat> meet = mins[std::size_t(__builtin_ctzll(mask))];
        int bits = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask >> j & 1)) continue;
            ++bits;
            for (std::size_t t = 0; t < d; ++t) meet[t] = std::max(meet[t], mins[j][t]);
        }
        Rat term = corner_simplex_volume(meet, a, alpha);
        vol += (bits % 2 == 1) ? term : -term;
    }
    return vol;
}

Rat staircase_complement_volume(const std::vector<LatticePoint>& gens,
                                const std::vector<Int>& k) {
    if (gens.empty()) throw Error("staircase_complement_volume: no generators");
    const std::size_t d = gens[0].dim();
    if (k.size() != d) throw DimensionError("box dimension mismatch");
    std::vector<std::vector<Rat>> corners;
    for (const auto& g : gens) {
        std::vector<Rat> c(d);
        for (std::size_t i = 0; i < d; ++i) c[i] = Rat(g[i]);
        corners.push_back(std::move(c));
    }
    corners = minimal_corners(std::move(corners));

    if (d == 1) return Rat(corners[0][0]);
    if (d == 2) {
        // area under the staircase: sum of (x_{i+1} - x_i) * y_i columns
        Rat area = 0;
        for (std::size_t i = 0; i < corners.size(); ++i) {
            Rat next_x = i + 1 < corners.size() ? corners[i + 1][0] : Rat(k[0]);
            area += (next_x - corners[i][0]) * corners[i][1];
        }
        return area;
    }

    if (corners.size() > kInclusionExclusionMaxGens)
        throw Error("inclusion-exclusion term cap exceeded for the exact path");
    Rat boxvol = 1;
    for (const Int& s : k) boxvol *= Rat(s);
    const std::size_t n = corners.size();
    Rat unionvol = 0;
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        std::vector<Rat> meet = corners[std::size_t(__builtin_ctzll(mask))];
        int bits = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask >> j & 1)) continue;
            ++bits;
            for (std::size_t t = 0; t < d; ++t) meet[t] = std::max(meet[t], corners[j][t]);
        }
        Rat cell = 1;
        for (std::size_t t = 0; t < d && cell > 0; ++t) {
            Rat side = Rat(k[t]) - meet[t];
            cell = side > 0 ? cell * side : Rat(0);
        }
        unionvol += (bits % 2 == 1) ? cell : -cell;
    }
    return boxvol - unionvol;
}

namespace {

// exact dyadic rational from the 53-bit mantissa draw
Rat dyadic(std::uint64_t raw) { return Rat(Int(raw >> 11), Int(1) << 53); }

double dyadic_double(std::uint64_t raw) { return double(raw >> 11) * 0x1p-53; }

bool in_union(const RationalCone& cone, const std::vector<std::vector<Rat>>& translates,
              const std::vector<Rat>& x) {
    std::vector<Rat> shifted(x.size());
    for (const auto& v : translates) {
        for (std::size_t i = 0; i < x.size(); ++i) shifted[i] = x[i] - v[i];
        if (cone.contains(shifted)) return true;
    }
    return false;
}

}  // namespace

VolumeValue mc_union_translated_cones(const RationalCone& cone,
                                      const std::vector<std::vector<Rat>>& translates,
                                      const WeightVector& a, const Rat& alpha,
                                      long samples, const Exec& ex) {
    if (!cone.pointed || !cone.full_dimensional)
        throw NotPointedError("Monte Carlo volume needs a pointed full-dimensional cone");
    const std::size_t d = cone.d;
    if (samples <= 0) throw Error("Monte Carlo needs a positive sample count");

    const long chunk = 4096;
    const std::size_t nchunks = std::size_t((samples + chunk - 1) / chunk);
    std::vector<long> hits(nchunks, 0), tried(nchunks, 0);

    if (d == 2) {
        // Sample the exact truncation triangle (0, P1, P2) and scale by its
        // exact area: lower variance than box rejection and still exact
        // membership on dyadic sample points.
        std::vector<std::vector<Rat>> verts;
        for (const auto& n : cone.facets) {
            std::vector<Int> dir = {n[1], -n[0]};
            LatticePoint p{dir[0], dir[1]};
            if (!cone.contains(p)) {
                p[0] = -p[0];
                p[1] = -p[1];
            }
            Rat w = dot(a, p);
            if (w <= 0) throw NotTruncatingError("halfspace is not truncating");
            verts.push_back({alpha * Rat(p[0]) / w, alpha * Rat(p[1]) / w});
        }
        if (verts.size() != 2) throw Error("unexpected facet count in dimension 2");
        const Rat area = truncated_cone_volume(cone, TruncatingHalfspace(a, alpha));

        parallel_chunks(ex, nchunks, [&](std::size_t ci) {
            std::mt19937_64 rng(chunk_seed(ex.seed, ci));
            const long n = std::min<long>(chunk, samples - long(ci) * chunk);
            long h = 0;
            for (long i = 0; i < n; ++i) {
                const double r1 = dyadic_double(rng());
                const std::uint64_t raw2 = rng();
                // sqrt warp for uniformity in the triangle, then exact dyadic mix
                const double s = std::sqrt(r1);
                const Rat srat(s);  // exact value of the double
                const Rat t2 = dyadic(raw2);
                std::vector<Rat> x(2);
                for (std::size_t j = 0; j < 2; ++j)
                    x[j] = srat * ((1 - t2) * verts[0][j] + t2 * verts[1][j]);
                if (dot(a, x) < alpha && in_union(cone, translates, x)) ++h;
            }
            hits[ci] = h;
            tried[ci] = n;
        });
        long h = 0, n = 0;
        for (std::size_t i = 0; i < nchunks; ++i) {
            h += hits[i];
            n += tried[i];
        }
        const double p = double(h) / double(n);
        const double vol = area.convert_to<double>();
        VolumeValue out;
        out.estimate = vol * p;
        out.std_error = vol * std::sqrt(std::max(p * (1 - p), 0.0) / double(n));
        out.samples = n;
        return out;
    }

    auto [plo, phi] = truncation_bounding_box(cone.generators, a, alpha);
    std::vector<Rat> lo(d), span(d);
    double boxvol = 1;
    for (std::size_t i = 0; i < d; ++i) {
        lo[i] = Rat(plo[i]);
        span[i] = Rat(phi[i] - plo[i]);
        boxvol *= span[i].convert_to<double>();
    }
    parallel_chunks(ex, nchunks, [&](std::size_t ci) {
        std::mt19937_64 rng(chunk_seed(ex.seed, ci));
        const long n = std::min<long>(chunk, samples - long(ci) * chunk);
        long h = 0;
        std::vector<Rat> x(d);
        for (long i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) x[j] = lo[j] + dyadic(rng()) * span[j];
            if (dot(a, x) < alpha && in_union(cone, translates, x)) ++h;
        }
        hits[ci] = h;
        tried[ci] = n;
    });
    long h = 0, n = 0;
    for (std::size_t i = 0; i < nchunks; ++i) {
        h += hits[i];
        n += tried[i];
    }
    const double p = double(h) / double(n);
    VolumeValue out;
    out.estimate = boxvol * p;
    out.std_error = boxvol * std::sqrt(std::max(p * (1 - p), 0.0) / double(n));
    out.samples = n;
    return out;
}

}  // namespace pbl
