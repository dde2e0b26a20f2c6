#include <random>
#include <set>

#include "doctest.h"
#include "pbl/cone.hpp"
#include "pbl/detail/linalg.hpp"

using namespace pbl;

namespace {

std::set<std::vector<Int>> facet_set(const RationalCone& c) {
    return {c.facets.begin(), c.facets.end()};
}

}  // namespace

TEST_CASE("cone_from_generators: first quadrant") {
    auto c = cone_from_generators({LatticePoint{1, 0}, LatticePoint{0, 1}});
    CHECK(c.full_dimensional);
    CHECK(c.pointed);
    CHECK(facet_set(c) == std::set<std::vector<Int>>{{Int(0), Int(1)}, {Int(1), Int(0)}});
}

TEST_CASE("cone_from_generators: hand Fourier-Motzkin on two rays") {
    auto c = cone_from_generators({LatticePoint{1, 0}, LatticePoint{1, 2}});
    // facets y >= 0 and 2x - y >= 0
    CHECK(facet_set(c) == std::set<std::vector<Int>>{{Int(0), Int(1)}, {Int(2), Int(-1)}});
}

TEST_CASE("cone_from_generators: redundant generator") {
    auto c = cone_from_generators(
        {LatticePoint{1, 0}, LatticePoint{0, 1}, LatticePoint{1, 1}});
    CHECK(facet_set(c) == std::set<std::vector<Int>>{{Int(0), Int(1)}, {Int(1), Int(0)}});
}

TEST_CASE("cone round-trip: generators satisfy facets, facets are tight") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> coord(-3, 3);
    int nontrivial = 0;
    for (int trial = 0; trial < 250; ++trial) {
        int d = 2 + int(rng() % 3);
        int k = 2 + int(rng() % 4);
        std::vector<LatticePoint> gens;
        for (int i = 0; i < k; ++i) {
            std::vector<Int> v(d);
            for (auto& x : v) x = coord(rng);
            gens.push_back(LatticePoint(std::move(v)));
        }
        auto c = cone_from_generators(gens);
        for (const auto& g : gens) CHECK(c.contains(g));
        if (!c.full_dimensional) continue;
        ++nontrivial;
        for (const auto& n : c.facets) {
            std::vector<std::vector<Int>> tight;
            for (const auto& g : gens) {
                Int s = 0;
                for (std::size_t i = 0; i < g.dim(); ++i) s += n[i] * g[i];
                CHECK(s >= 0);
                if (s == 0) tight.push_back(g.c);
            }
            CHECK(detail::int_rank(tight) >= std::size_t(d - 1));
        }
    }
    CHECK(nontrivial > 30);
}

TEST_CASE("pointedness witness") {
    auto quadrant = cone_from_generators({LatticePoint{1, 0}, LatticePoint{0, 1}});
    auto w = is_pointed_with_witness(quadrant);
    REQUIRE(w.has_value());
    CHECK(dot(*w, LatticePoint{1, 0}) > 0);
    CHECK(dot(*w, LatticePoint{0, 1}) > 0);
    CHECK(w->strictly_positive());

    auto line = cone_from_generators({LatticePoint{1, 0}, LatticePoint{-1, 0}});
    CHECK(!line.pointed);
    CHECK(!is_pointed_with_witness(line).has_value());

    auto skew = cone_from_generators({LatticePoint{1, 0}, LatticePoint{1, 2}});
    auto ws = is_pointed_with_witness(skew);
    REQUIRE(ws.has_value());
    CHECK(dot(*ws, LatticePoint{1, 0}) > 0);
    CHECK(dot(*ws, LatticePoint{1, 2}) > 0);
}

TEST_CASE("pointed cone with a negative-coordinate witness direction") {
    // cone over (1,-1) and (0,1) is pointed and admits positive witnesses
    auto c = cone_from_generators({LatticePoint{1, -1}, LatticePoint{0, 1}});
    CHECK(c.pointed);
    auto w = is_pointed_with_witness(c);
    REQUIRE(w.has_value());
    CHECK(w->strictly_positive());
    CHECK(dot(*w, LatticePoint{1, -1}) > 0);
}

TEST_CASE("truncated cone volumes") {
    auto quadrant = cone_from_generators({LatticePoint{1, 0}, LatticePoint{0, 1}});
    WeightVector ones{Rat(1), Rat(1)};
    CHECK(truncated_cone_volume(quadrant, {ones, Rat(1)}) == Rat(1, 2));
    CHECK(truncated_cone_volume(quadrant, {ones, Rat(2)}) == Rat(2));

    // triangle with vertices (0,0),(1,0),(1,2)
    auto skew = cone_from_generators({LatticePoint{1, 0}, LatticePoint{1, 2}});
    WeightVector ex{Rat(1), Rat(0)};
    CHECK(truncated_cone_volume(skew, {ex, Rat(1)}) == Rat(1));

    auto line = cone_from_generators({LatticePoint{1, 0}, LatticePoint{-1, 0}});
    CHECK_THROWS_AS(truncated_cone_volume(line, {ones, Rat(1)}), NotPointedError);
}

TEST_CASE("qH scaling is exact") {
    auto c3 = cone_from_generators(
        {LatticePoint{1, 0, 0}, LatticePoint{1, 2, 0}, LatticePoint{0, 1, 3}});
    WeightVector a{Rat(2), Rat(1), Rat(1)};
    Rat base = truncated_cone_volume(c3, {a, Rat(5, 4)});
    for (int q : {2, 3, 5}) {
        Rat scaled = truncated_cone_volume(c3, {a, Rat(5, 4) * q});
        CHECK(scaled == base * ipow(Int(q), 3));
    }
}

TEST_CASE("polytope volume recursion basics") {
    // unit square and a shifted copy
    std::vector<std::vector<Rat>> square = {
        {Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}};
    CHECK(detail::polytope_volume(square) == Rat(1));
    for (auto& p : square)
        for (auto& x : p) x += Rat(7, 3);
    CHECK(detail::polytope_volume(square) == Rat(1));

    // degenerate: collinear points
    std::vector<std::vector<Rat>> seg = {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(2)}};
    CHECK(detail::polytope_volume(seg) == Rat(0));

    // 3-simplex, volume 1/6, with an interior point thrown in
    std::vector<std::vector<Rat>> simplex = {{Rat(0), Rat(0), Rat(0)},
                                             {Rat(1), Rat(0), Rat(0)},
                                             {Rat(0), Rat(1), Rat(0)},
                                             {Rat(0), Rat(0), Rat(1)},
                                             {Rat(1, 8), Rat(1, 8), Rat(1, 8)}};
    CHECK(detail::polytope_volume(simplex) == Rat(1, 6));
}

TEST_CASE("Monte Carlo cross-check of exact truncation volume") {
    auto c = cone_from_generators({LatticePoint{2, 1}, LatticePoint{1, 3}});
    WeightVector a{Rat(1), Rat(1)};
    Rat alpha(7, 2);
    Rat exact = truncated_cone_volume(c, {a, alpha});

    auto [lo, hi] = truncation_bounding_box(c.generators, a, alpha);
    double blo0 = double(lo[0].convert_to<long>()), bhi0 = double(hi[0].convert_to<long>());
    double blo1 = double(lo[1].convert_to<long>()), bhi1 = double(hi[1].convert_to<long>());
    std::mt19937_64 rng(4242);
    const int n = 100000;
    int in = 0;
    for (int i = 0; i < n; ++i) {
        double u = double((rng() >> 11)) * 0x1p-53;
        double v = double((rng() >> 11)) * 0x1p-53;
        std::vector<Rat> x = {Rat(blo0 + u * (bhi0 - blo0)), Rat(blo1 + v * (bhi1 - blo1))};
        if (c.contains(x) && dot(a, x) < alpha) ++in;
    }
    double box = (bhi0 - blo0) * (bhi1 - blo1);
    double est = box * double(in) / n;
    double se = box * std::sqrt((double(in) / n) * (1.0 - double(in) / n) / n);
    CHECK(std::abs(est - exact.convert_to<double>()) <= 3.0 * se);
}

TEST_CASE("truncation bounding box covers the truncation") {
    auto c = cone_from_generators({LatticePoint{1, 0}, LatticePoint{1, 2}});
    WeightVector a{Rat(1), Rat(1)};
    auto [lo, hi] = truncation_bounding_box(c.generators, a, Rat(6));
    // vertices: (6,0) and 6/3*(1,2) = (2,4)
    CHECK(lo == LatticePoint{0, 0});
    CHECK(hi == LatticePoint{7, 5});
}

TEST_CASE("cone errors") {
    CHECK_THROWS_AS(cone_from_generators({}), Error);
    std::vector<LatticePoint> too_big = {LatticePoint{1, 0, 0, 0, 0}};
    CHECK_THROWS_AS(cone_from_generators(too_big), DimensionError);
}
