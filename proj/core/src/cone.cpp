#include "pbl/cone.hpp"

#include <algorithm>
#include <set>

#include "pbl/detail/linalg.hpp"

namespace pbl {
namespace detail {
namespace {

Int dot_ii(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<Int> primitive_int(std::vector<Int> v) {
    Int g = 0;
    for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
    if (g > 1)
        for (Int& x : v) x /= g;
    return v;
}

// w = (c.pos) * neg - (c.neg) * pos, a nonnegative ray combination on c = 0.
std::vector<Int> combine_on_hyperplane(const std::vector<Int>& c,
                                       const std::vector<Int>& pos,
                                       const std::vector<Int>& neg) {
    const Int cp = dot_ii(c, pos);
    const Int cn = dot_ii(c, neg);
    std::vector<Int> w(pos.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = cp * neg[i] - cn * pos[i];
    return primitive_int(std::move(w));
}

}  // namespace

DualDescription dual_description(const std::vector<std::vector<Int>>& constraints,
                                 std::size_t d) {
    DualDescription dd;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Int> e(d, 0);
        e[i] = 1;
        dd.lineality.push_back(std::move(e));
    }
    std::vector<std::vector<Int>> processed;

    auto tight_set = [&](const std::vector<Int>& r) {
        std::vector<std::size_t> t;
        for (std::size_t j = 0; j < processed.size(); ++j)
            if (dot_ii(processed[j], r) == 0) t.push_back(j);
        return t;
    };

    for (const auto& c : constraints) {
        // Lineality pivot: some basis vector not orthogonal to c.
        std::size_t piv = dd.lineality.size();
        for (std::size_t i = 0; i < dd.lineality.size(); ++i)
            if (dot_ii(c, dd.lineality[i]) != 0) {
                piv = i;
                break;
            }
        if (piv != dd.lineality.size()) {
            std::vector<Int> l = dd.lineality[piv];
            if (dot_ii(c, l) < 0)
                for (Int& x : l) x = -x;
            dd.lineality.erase(dd.lineality.begin() + piv);
            const Int cl = dot_ii(c, l);
            for (auto& m : dd.lineality) {
                const Int cm = dot_ii(c, m);
                if (cm != 0) {
                    for (std::size_t j = 0; j < d; ++j) m[j] = cl * m[j] - cm * l[j];
                    m = primitive_int(std::move(m));
                }
            }
            // Project existing rays onto c = 0; the pivot becomes the one
            // generator with positive value on c.
            for (auto& r : dd.rays) {
                const Int cr = dot_ii(c, r);
                if (cr != 0) {
                    for (std::size_t j = 0; j < d; ++j) r[j] = cl * r[j] - cr * l[j];
                    r = primitive_int(std::move(r));
                }
            }
            dd.rays.push_back(std::move(l));
            std::sort(dd.rays.begin(), dd.rays.end());
            dd.rays.erase(std::unique(dd.rays.begin(), dd.rays.end()), dd.rays.end());
            processed.push_back(c);
            continue;
        }

        // Classic double description step on the pointed part.
        std::vector<Int> val(dd.rays.size());
        bool any_neg = false;
        for (std::size_t i = 0; i < dd.rays.size(); ++i) {
            val[i] = dot_ii(c, dd.rays[i]);
            if (val[i] < 0) any_neg = true;
        }
        if (!any_neg) {
            processed.push_back(c);
            continue;
        }
        std::vector<std::vector<std::size_t>> tight(dd.rays.size());
        for (std::size_t i = 0; i < dd.rays.size(); ++i) tight[i] = tight_set(dd.rays[i]);

        std::vector<std::vector<Int>> new_rays;
        for (std::size_t i = 0; i < dd.rays.size(); ++i)
            if (val[i] >= 0) new_rays.push_back(dd.rays[i]);
        for (std::size_t p = 0; p < dd.rays.size(); ++p) {
            if (val[p] <= 0) continue;
            for (std::size_t n = 0; n < dd.rays.size(); ++n) {
                if (val[n] >= 0) continue;
                // adjacency: no third ray tight on everything p and n share
                std::vector<std::size_t> common;
                std::set_intersection(tight[p].begin(), tight[p].end(), tight[n].begin(),
                                      tight[n].end(), std::back_inserter(common));
                bool adjacent = true;
                for (std::size_t k = 0; k < dd.rays.size() && adjacent; ++k) {
                    if (k == p || k == n) continue;
                    adjacent = !std::includes(tight[k].begin(), tight[k].end(),
                                              common.begin(), common.end());
                }
                if (adjacent)
                    new_rays.push_back(combine_on_hyperplane(c, dd.rays[p], dd.rays[n]));
            }
        }
        std::sort(new_rays.begin(), new_rays.end());
        new_rays.erase(std::unique(new_rays.begin(), new_rays.end()), new_rays.end());
        dd.rays = std::move(new_rays);
        processed.push_back(c);
    }
    return dd;
}

Rat polytope_volume(const std::vector<std::vector<Rat>>& points) {
    if (points.empty()) return 0;
    const std::size_t m = points[0].size();
    if (m == 0) return 0;

    std::vector<std::vector<Rat>> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    if (m == 1) {
        Rat lo = pts.front()[0], hi = pts.front()[0];
        for (const auto& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return hi - lo;
    }
    if (pts.size() <= m) return 0;  // too few points to span

    // Facets of the hull from the homogenization cone over (p, 1).
    std::vector<std::vector<Int>> lifted;
    lifted.reserve(pts.size());
    for (const auto& p : pts) {
        std::vector<Rat> h(p);
        h.push_back(1);
        lifted.push_back(primitive_vector(h));
    }
    DualDescription dd = dual_description(lifted, m + 1);
    if (!dd.lineality.empty()) return 0;  // affinely dependent input

    // Pull from the lexicographically least vertex; facets through it drop out.
    const std::vector<Rat>& base = pts.front();
    Rat vol = 0;
    for (const auto& f : dd.rays) {
        // f = (n, c): n.x + c >= 0 on the hull
        Rat offset = Rat(f[m]);
        for (std::size_t i = 0; i < m; ++i) offset += Rat(f[i]) * base[i];
        if (offset == 0) continue;
        std::size_t j = 0;
        while (j < m && f[j] == 0) ++j;
        std::vector<std::vector<Rat>> proj;
        for (const auto& p : pts) {
            Rat v = Rat(f[m]);
            for (std::size_t i = 0; i < m; ++i) v += Rat(f[i]) * p[i];
            if (v != 0) continue;  // not on this facet
            std::vector<Rat> q;
            q.reserve(m - 1);
            for (std::size_t i = 0; i < m; ++i)
                if (i != j) q.push_back(p[i] - base[i]);
            proj.push_back(std::move(q));
        }
        Rat sub = (m - 1 == 0) ? Rat(1) : polytope_volume(proj);
        vol += abs(offset) * sub / (Rat(m) * Rat(abs(f[j])));
    }
    return vol;
}

}  // namespace detail

bool RationalCone::contains(const LatticePoint& u) const {
    if (u.dim() != d) throw DimensionError("cone membership: dimension mismatch");
    for (const auto& n : equations)
        if (detail::dot_ii(n, u.c) != 0) return false;
    for (const auto& n : facets)
        if (detail::dot_ii(n, u.c) < 0) return false;
    return true;
}

bool RationalCone::contains(const std::vector<Rat>& x) const {
    if (x.size() != d) throw DimensionError("cone membership: dimension mismatch");
    auto eval = [&](const std::vector<Int>& n) {
        Rat s = 0;
        for (std::size_t i = 0; i < d; ++i) s += Rat(n[i]) * x[i];
        return s;
    };
    for (const auto& n : equations)
        if (eval(n) != 0) return false;
    for (const auto& n : facets)
        if (eval(n) < 0) return false;
    return true;
}

RationalCone cone_from_generators(const std::vector<LatticePoint>& gens) {
    if (gens.empty()) throw Error("cone_from_generators: empty generator list");
    const std::size_t d = gens[0].dim();
    if (d < 1 || d > 4)
        throw DimensionError("cone_from_generators supports dimensions 1..4");
    std::vector<std::vector<Int>> rows;
    for (const auto& g : gens) {
        if (g.dim() != d) throw DimensionError("cone generators of mixed dimension");
        if (!g.is_zero()) rows.push_back(g.c);
    }

    RationalCone c;
    c.d = d;
    c.generators = gens;
    detail::DualDescription dual = detail::dual_description(rows, d);
    c.facets = std::move(dual.rays);
    c.equations = std::move(dual.lineality);
    std::sort(c.facets.begin(), c.facets.end());
    std::sort(c.equations.begin(), c.equations.end());
    c.full_dimensional = c.equations.empty();

    std::vector<std::vector<Int>> all = c.facets;
    all.insert(all.end(), c.equations.begin(), c.equations.end());
    c.pointed = detail::int_rank(std::move(all)) == d;
    return c;
}

std::optional<WeightVector> is_pointed_with_witness(const RationalCone& cone) {
    if (!cone.pointed) return std::nullopt;
    auto sum_rays = [&](const std::vector<std::vector<Int>>& rays) {
        std::vector<Rat> w(cone.d, 0);
        for (const auto& r : rays)
            for (std::size_t i = 0; i < cone.d; ++i) w[i] += Rat(r[i]);
        return w;
    };
    std::vector<Rat> w = sum_rays(cone.facets);
    bool positive = !w.empty();
    for (const Rat& x : w) positive = positive && x > 0;
    if (positive) return WeightVector(std::move(w));

    // Search inside the dual intersected with the open orthant instead.
    std::vector<std::vector<Int>> rows;
    for (const auto& g : cone.generators)
        if (!g.is_zero()) rows.push_back(g.c);
    for (std::size_t i = 0; i < cone.d; ++i) {
        std::vector<Int> e(cone.d, 0);
        e[i] = 1;
        rows.push_back(std::move(e));
    }
    detail::DualDescription dual = detail::dual_description(rows, cone.d);
    if (detail::int_rank(dual.rays) != cone.d) return std::nullopt;
    w = sum_rays(dual.rays);
    return WeightVector(std::move(w));
}

Rat truncated_cone_volume(const RationalCone& cone, const TruncatingHalfspace& h) {
    if (!cone.pointed || !cone.full_dimensional)
        throw NotPointedError("truncated volume needs a pointed full-dimensional cone");
    if (h.a.dim() != cone.d) throw DimensionError("halfspace dimension mismatch");
    std::vector<std::vector<Rat>> verts;
    verts.push_back(std::vector<Rat>(cone.d, 0));
    for (const auto& g : cone.generators) {
        if (g.is_zero()) continue;
        const Rat wg = dot(h.a, g);
        if (wg <= 0)
            throw NotTruncatingError("halfspace weight not positive on a generator");
        std::vector<Rat> v(cone.d);
        for (std::size_t i = 0; i < cone.d; ++i) v[i] = Rat(g[i]) / wg;
        verts.push_back(std::move(v));
    }
    Rat unit = detail::polytope_volume(verts);
    Rat scale = 1;
    for (std::size_t i = 0; i < cone.d; ++i) scale *= h.alpha;
    return unit * scale;
}

std::pair<LatticePoint, LatticePoint> truncation_bounding_box(
    const std::vector<LatticePoint>& gens, const WeightVector& a, const Rat& bound) {
    if (gens.empty()) throw Error("truncation_bounding_box: empty generator list");
    const std::size_t d = gens[0].dim();
    std::vector<Rat> lo(d, 0), hi(d, 0);
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        const Rat wg = dot(a, g);
        if (wg <= 0)
            throw NotTruncatingError("halfspace weight not positive on a generator");
        for (std::size_t i = 0; i < d; ++i) {
            const Rat v = bound * Rat(g[i]) / wg;
            lo[i] = std::min(lo[i], v);
            hi[i] = std::max(hi[i], v);
        }
    }
    LatticePoint plo = LatticePoint::zero(d), phi = LatticePoint::zero(d);
    for (std::size_t i = 0; i < d; ++i) {
        plo[i] = ceil_rat(lo[i]);
        phi[i] = floor_rat(hi[i]) + 1;
    }
    return {plo, phi};
}

}  // namespace pbl
