#include "pbl/counting.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace pbl {
namespace {

using std::int64_t;

constexpr int64_t kMaxCells = int64_t(1) << 27;

struct Grid {
    int d = 0;
    std::vector<int64_t> lo, hi, size, stride;
    std::vector<int64_t> wkey;       // integer weights (denominator cleared)
    int64_t total = 0;

    int64_t key_of(const std::vector<int64_t>& u) const {
        int64_t k = 0;
        for (int i = 0; i < d; ++i) k += wkey[i] * u[i];
        return k;
    }
    void coords_of(int64_t flat, std::vector<int64_t>& u) const {
        for (int i = 0; i < d; ++i) {
            u[i] = lo[i] + flat / stride[i];
            flat %= stride[i];
        }
    }
};

Grid make_grid(const LatticePoint& plo, const LatticePoint& phi,
               const std::vector<Int>& weights_int) {
    Grid g;
    g.d = int(plo.dim());
    g.lo.resize(g.d);
    g.hi.resize(g.d);
    g.size.resize(g.d);
    g.wkey.resize(g.d);
    Int keybound = 0;
    for (int i = 0; i < g.d; ++i) {
        g.lo[i] = to_int64(plo[i]);
        g.hi[i] = to_int64(phi[i]);
        g.size[i] = std::max<int64_t>(0, g.hi[i] - g.lo[i]);
        g.wkey[i] = to_int64(weights_int[i]);
        keybound += abs(weights_int[i]) *
                    std::max(abs(plo[i]), abs(phi[i]));
    }
    if (keybound > (Int(1) << 62)) throw Error("counting region weights overflow");
    g.stride.assign(g.d, 1);
    g.total = 1;
    for (int i = g.d - 1; i >= 0; --i) {
        g.stride[i] = g.total;
        if (g.size[i] != 0 && g.total > kMaxCells / g.size[i])
            throw Error("counting region exceeds the supported cell budget");
        g.total *= g.size[i];
    }
    return g;
}

struct GenOffsets {
    std::vector<std::vector<int64_t>> coords;
    std::vector<int64_t> flat;
};

GenOffsets gen_offsets(const Grid& g, const std::vector<LatticePoint>& gens) {
    GenOffsets out;
    for (const auto& gen : gens) {
        if (gen.is_zero()) continue;
        std::vector<int64_t> c(g.d);
        int64_t off = 0;
        for (int i = 0; i < g.d; ++i) {
            c[i] = to_int64(gen[i]);
            off += c[i] * g.stride[i];
        }
        out.coords.push_back(std::move(c));
        out.flat.push_back(off);
    }
    return out;
}

bool all_lex_positive(const std::vector<LatticePoint>& gens) {
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        for (const Int& x : g.c) {
            if (x > 0) break;
            if (x < 0) return false;
            // zero: look at the next coordinate
        }
    }
    return true;
}

constexpr std::uint8_t kInS = 1, kInT = 2;

/// Marks semigroup and ideal membership over the grid. Both flags propagate
/// through the semigroup generators; seeds are the origin (S) and the ideal
/// generators (T). Correct for every point of the region
/// Cone(S) n {(a,u) < bound} contained in the grid, because membership chains
/// stay inside that region.
std::vector<std::uint8_t> mark_membership(const Grid& g, const StandardSemigroup& s,
                                          const std::vector<LatticePoint>& ideal_gens) {
    std::vector<std::uint8_t> flags(std::size_t(g.total), 0);
    if (g.total == 0) return flags;

    auto in_grid = [&](const LatticePoint& p) {
        for (int i = 0; i < g.d; ++i) {
            if (!fits_int64(p[i])) return false;
            int64_t x = to_int64(p[i]);
            if (x < g.lo[i] || x >= g.hi[i]) return false;
        }
        return true;
    };
    auto flat_of = [&](const LatticePoint& p) {
        int64_t f = 0;
        for (int i = 0; i < g.d; ++i) f += (to_int64(p[i]) - g.lo[i]) * g.stride[i];
        return f;
    };

    LatticePoint origin = LatticePoint::zero(std::size_t(g.d));
    if (in_grid(origin)) flags[std::size_t(flat_of(origin))] |= kInS;
    for (const auto& t : ideal_gens)
        if (in_grid(t)) flags[std::size_t(flat_of(t))] |= kInT;

    GenOffsets gen = gen_offsets(g, s.generators());
    if (gen.flat.empty()) return flags;

    const bool lex_ok = all_lex_positive(s.generators());
    std::vector<int64_t> order;
    if (!lex_ok) {
        // fall back to an explicit weight-sorted sweep
        if (g.total > (int64_t(1) << 24))
            throw Error("weight-sorted counting sweep exceeds the index budget");
        order.resize(std::size_t(g.total));
        std::iota(order.begin(), order.end(), 0);
        std::vector<int64_t> keys(std::size_t(g.total));
        std::vector<int64_t> u(g.d);
        for (int64_t f = 0; f < g.total; ++f) {
            g.coords_of(f, u);
            keys[std::size_t(f)] = g.key_of(u);
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](int64_t x, int64_t y) { return keys[std::size_t(x)] < keys[std::size_t(y)]; });
    }

    std::vector<int64_t> u(g.d);
    const std::size_t ngen = gen.flat.size();
    for (int64_t step = 0; step < g.total; ++step) {
        const int64_t f = lex_ok ? step : order[std::size_t(step)];
        if (lex_ok) {
            if (step == 0)
                g.coords_of(f, u);
            else {
                for (int i = g.d - 1; i >= 0; --i) {
                    if (++u[i] < g.hi[i]) break;
                    u[i] = g.lo[i];
                }
            }
        } else {
            g.coords_of(f, u);
        }
        std::uint8_t fl = flags[std::size_t(f)];
        if (fl == (kInS | kInT)) continue;
        for (std::size_t j = 0; j < ngen; ++j) {
            bool inside = true;
            const auto& gc = gen.coords[j];
            for (int i = 0; i < g.d && inside; ++i) {
                const int64_t v = u[i] - gc[i];
                inside = v >= g.lo[i] && v < g.hi[i];
            }
            if (!inside) continue;
            fl |= flags[std::size_t(f - gen.flat[j])];
            if (fl == (kInS | kInT)) break;
        }
        flags[std::size_t(f)] = fl;
    }
    return flags;
}

struct SlabResult {
    Int count_s = 0, count_t = 0, count_c = 0;
    bool have_max = false;
    int64_t max_key = 0;
    std::vector<int64_t> max_point;
    std::vector<std::vector<int64_t>> complement;
};

/// Tallies flags against the strict key bound, slab-parallel over the leading
/// coordinate, combined in slab order.
std::vector<SlabResult> tally(const Grid& g, const std::vector<std::uint8_t>& flags,
                              std::optional<int64_t> key_max, bool collect,
                              const Exec& ex) {
    const int64_t rows = g.d > 0 ? g.size[0] : 0;
    const int64_t row_cells = rows > 0 ? g.total / rows : 0;
    const std::size_t nchunks =
        std::size_t(std::min<int64_t>(rows, std::max(1, ex.threads * 4)));
    std::vector<SlabResult> parts(nchunks);
    if (g.total == 0 || rows == 0) return parts;

    parallel_chunks(ex, nchunks, [&](std::size_t ci) {
        const int64_t r0 = int64_t(ci) * rows / int64_t(nchunks);
        const int64_t r1 = int64_t(ci + 1) * rows / int64_t(nchunks);
        SlabResult& out = parts[ci];
        std::vector<int64_t> u(g.d);
        for (int64_t f = r0 * row_cells; f < r1 * row_cells; ++f) {
            const std::uint8_t fl = flags[std::size_t(f)];
            if (!fl) continue;
            g.coords_of(f, u);
            if (key_max) {
                if (g.key_of(u) > *key_max) continue;
            }
            if (fl & kInS) ++out.count_s;
            if (fl & kInT) ++out.count_t;
            if ((fl & kInS) && !(fl & kInT)) {
                ++out.count_c;
                const int64_t k = g.key_of(u);
                if (!out.have_max || k > out.max_key ||
                    (k == out.max_key && u > out.max_point)) {
                    out.have_max = true;
                    out.max_key = k;
                    out.max_point = u;
                }
                if (collect) out.complement.push_back(u);
            }
        }
    });
    return parts;
}

LatticePoint to_point(const std::vector<int64_t>& u) {
    std::vector<Int> c(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) c[i] = u[i];
    return LatticePoint(std::move(c));
}

}  // namespace

TruncationCounts count_truncated(const SemigroupIdeal& ideal, const WeightVector& a,
                                 const Rat& bound, const Exec& ex) {
    const StandardSemigroup& s = ideal.parent();
    if (a.dim() != s.dim()) throw DimensionError("weight dimension mismatch");
    for (const auto& g : s.generators())
        if (!g.is_zero() && dot(a, g) <= 0)
            throw NotTruncatingError("halfspace is not truncating for Cone(S)");
    if (bound <= 0) return {};

    auto [plo, phi] = truncation_bounding_box(s.generators(), a, bound);
    const Int d_scale = common_denominator(a.w);
    std::vector<Int> weights(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i)
        weights[i] = num(a[i]) * (d_scale / den(a[i]));
    Grid g = make_grid(plo, phi, weights);
    // strict (a,u) < bound over integer keys: key <= ceil(D*bound) - 1
    const int64_t key_max = to_int64(ceil_rat(Rat(d_scale) * bound) - 1);

    auto flags = mark_membership(g, s, ideal.generators());
    auto parts = tally(g, flags, key_max, false, ex);
    TruncationCounts out;
    for (const auto& p : parts) {
        out.semigroup_points += p.count_s;
        out.ideal_points += p.count_t;
    }
    return out;
}

namespace {

ComplementSummary summarize(const Grid& g, const std::vector<SlabResult>& parts,
                            const std::vector<Int>& weights, const Int& d_scale,
                            bool collect) {
    ComplementSummary out;
    for (const auto& p : parts) {
        out.count += p.count_c;
        if (p.have_max) {
            LatticePoint cand = to_point(p.max_point);
            Rat w = 0;
            for (std::size_t i = 0; i < cand.dim(); ++i)
                w += Rat(weights[i], d_scale) * Rat(cand[i]);
            if (out.empty || w > out.max_weight ||
                (w == out.max_weight && out.max_point < cand)) {
                out.empty = false;
                out.max_weight = w;
                out.max_point = cand;
            }
        }
        if (collect)
            for (const auto& u : p.complement) out.points.push_back(to_point(u));
    }
    (void)g;
    return out;
}

}  // namespace

ComplementSummary complement_in_truncation(const SemigroupIdeal& ideal,
                                           const WeightVector& a, const Rat& bound,
                                           bool collect_points, const Exec& ex) {
    const StandardSemigroup& s = ideal.parent();
    auto [plo, phi] = truncation_bounding_box(s.generators(), a, bound);
    const Int d_scale = common_denominator(a.w);
    std::vector<Int> weights(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i)
        weights[i] = num(a[i]) * (d_scale / den(a[i]));
    Grid g = make_grid(plo, phi, weights);
    const int64_t key_max = to_int64(ceil_rat(Rat(d_scale) * bound) - 1);

    auto flags = mark_membership(g, s, ideal.generators());
    auto parts = tally(g, flags, key_max, collect_points, ex);
    return summarize(g, parts, weights, d_scale, collect_points);
}

ComplementSummary complement_in_box(const SemigroupIdeal& ideal,
                                    const std::vector<Int>& k, bool collect_points,
                                    const Exec& ex) {
    const StandardSemigroup& s = ideal.parent();
    if (!s.regular()) throw Error("complement_in_box requires the regular model");
    if (k.size() != s.dim()) throw DimensionError("box dimension mismatch");
    LatticePoint plo = LatticePoint::zero(s.dim());
    LatticePoint phi(k);
    const Int d_scale = common_denominator(s.witness().w);
    Grid g = make_grid(plo, phi, s.weights_int());
    auto flags = mark_membership(g, s, ideal.generators());
    auto parts = tally(g, flags, std::nullopt, collect_points, ex);
    return summarize(g, parts, s.weights_int(), d_scale, collect_points);
}

}  // namespace pbl
