#include <cmath>

#include "doctest.h"
#include "pbl/pbody.hpp"

using namespace pbl;

namespace {

SemigroupPtr n2() {
    return make_standard_semigroup({LatticePoint{1, 0}, LatticePoint{0, 1}},
                                   WeightVector{Rat(1), Rat(1)});
}

SemigroupPtr n3() {
    return make_standard_semigroup(
        {LatticePoint{1, 0, 0}, LatticePoint{0, 1, 0}, LatticePoint{0, 0, 1}},
        WeightVector{Rat(1), Rat(1), Rat(1)});
}

SemigroupPtr a1() {
    return make_standard_semigroup(
        {LatticePoint{1, 0}, LatticePoint{1, 1}, LatticePoint{1, 2}},
        WeightVector{Rat(1), Rat(1)});
}

std::shared_ptr<const PSystem> sum_ge_q(SemigroupPtr s) {
    return std::make_shared<const PSystem>(
        s, 2,
        [](int e) {
            Int q = ipow(Int(2), unsigned(e));
            std::vector<LatticePoint> gens;
            for (Int x = 0; x <= q; ++x) gens.push_back(LatticePoint{x, q - x});
            return gens;
        },
        "sum_ge_q");
}

std::shared_ptr<const PSystem> frobenius_of(SemigroupPtr s,
                                            std::vector<LatticePoint> t0,
                                            std::string name = "frobenius") {
    return std::make_shared<const PSystem>(
        s, 2,
        [t0](int e) {
            Int q = ipow(Int(2), unsigned(e));
            std::vector<LatticePoint> gens;
            for (const auto& t : t0) gens.push_back(q * t);
            return gens;
        },
        std::move(name));
}

std::shared_ptr<const PSystem> two_corner(SemigroupPtr s) {
    return std::make_shared<const PSystem>(
        s, 2,
        [](int e) {
            Int q = ipow(Int(2), unsigned(e));
            Int cx = ceil_rat(Rat(q, 3));
            Int cy = ceil_rat(Rat(q, 2));
            return std::vector<LatticePoint>{LatticePoint{cx, Int(0)},
                                             LatticePoint{Int(0), cy}};
        },
        "two_corner");
}

std::shared_ptr<const PSystem> whole_semigroup(SemigroupPtr s) {
    return std::make_shared<const PSystem>(
        s, 2,
        [s](int) { return std::vector<LatticePoint>{LatticePoint::zero(s->dim())}; },
        "whole");
}

// independent oracle for count_scaled: enumerate the box and filter per point
Int direct_count(const SemigroupIdeal& t, const WeightVector& a, const Rat& bound) {
    auto [lo, hi] = truncation_bounding_box(t.parent().generators(), a, bound);
    Int n = 0;
    for (const auto& u : enumerate_box(lo, hi))
        if (dot(a, u) < bound && t.contains(u)) ++n;
    return n;
}

const WeightVector kOnes{Rat(1), Rat(1)};

}  // namespace

TEST_CASE("delta_q_membership") {
    PBody body(sum_ge_q(n2()));
    // q = 2: Delta_2 is {x, y >= 0, x + y >= 1}
    CHECK(delta_q_membership(body, 1, {Rat(1, 2), Rat(3, 5)}));
    CHECK(!delta_q_membership(body, 1, {Rat(1, 5), Rat(1, 5)}));
    // t / q for a generator t of T_q
    CHECK(delta_q_membership(body, 1, {Rat(1), Rat(1)}));
    CHECK(delta_q_membership(body, 1, {Rat(0), Rat(1)}));
}

TEST_CASE("monotone ascending union across levels") {
    for (auto sys : {sum_ge_q(n2()), two_corner(n2()),
                     frobenius_of(n2(), {LatticePoint{2, 0}, LatticePoint{0, 3}})}) {
        PBody body(sys);
        for (int e1 = 0; e1 <= 8; ++e1) {
            const Int q1 = sys->q_of(e1);
            for (int e2 = e1; e2 <= 8; e2 += (e2 < 4 ? 1 : 2)) {
                for (const auto& t : sys->level(e1).generators()) {
                    std::vector<Rat> x(t.dim());
                    for (std::size_t i = 0; i < t.dim(); ++i) x[i] = Rat(t[i], q1);
                    CHECK(delta_q_membership(body, e2, x));
                }
            }
        }
    }
}

TEST_CASE("count_scaled examples") {
    auto s = n2();
    auto sys = sum_ge_q(s);
    // q = 4, alpha = 2: closed form (3q^2 + q)/2 = 26
    CHECK(count_scaled(sys->level(2), 4, {kOnes, Rat(2)}) == 26);
    // q = 1: the two unit points
    CHECK(count_scaled(sys->level(0), 1, {kOnes, Rat(2)}) == 2);
    // T = S, q = 1, alpha = 1: the origin only
    auto whole = whole_semigroup(s);
    CHECK(count_scaled(whole->level(0), 1, {kOnes, Rat(1)}) == 1);
}

TEST_CASE("count_scaled equals the direct box filter") {
    auto s = n2();
    auto sys = sum_ge_q(s);
    for (int e = 0; e <= 4; ++e) {
        Int q = sys->q_of(e);
        TruncatingHalfspace h{kOnes, Rat(2)};
        CHECK(count_scaled(sys->level(e), q, h) ==
              direct_count(sys->level(e), kOnes, Rat(2) * Rat(q)));
    }
    auto a = a1();
    auto fr = frobenius_of(a, {LatticePoint{1, 0}, LatticePoint{1, 1}, LatticePoint{1, 2}});
    for (int e = 0; e <= 3; ++e) {
        Int q = fr->q_of(e);
        WeightVector w{Rat(1), Rat(1, 3)};
        CHECK(count_scaled(fr->level(e), q, {w, Rat(3, 2)}) ==
              direct_count(fr->level(e), w, Rat(3, 2) * Rat(q)));
    }
}

TEST_CASE("count_scaled rejects non-truncating halfspaces") {
    auto a = a1();
    auto sys = whole_semigroup(a);
    // weight (1, -1) is negative on the generator (1, 2)
    std::vector<Rat> w = {Rat(1), Rat(-1)};
    CHECK_THROWS_AS(count_scaled(sys->level(0), 1, {WeightVector{w}, Rat(1)}),
                    NotTruncatingError);
}

TEST_CASE("pbody volumes, exact orthant path") {
    TruncatingHalfspace h{kOnes, Rat(2)};
    // sum >= q: the level body is the staircase union with corners (i/q,
    // (q-i)/q); its truncated volume is (3q-1)/(2q), ascending to 3/2
    PBody body(sum_ge_q(n2()));
    for (int e : {0, 2, 5}) {
        auto v = pbody_truncated_volume(body, h, e);
        REQUIRE(v.is_exact());
        Int q = ipow(Int(2), unsigned(e));
        CHECK(*v.exact == Rat(3 * q - 1) / Rat(2 * q));
    }
    // Frobenius system of m: region {x>=1} union {y>=1} inside sum<2 has area 1
    PBody frob(frobenius_of(n2(), {LatticePoint{1, 0}, LatticePoint{0, 1}}));
    auto v1 = pbody_truncated_volume(frob, h, 3);
    REQUIRE(v1.is_exact());
    CHECK(*v1.exact == Rat(1));
    // T = S: the whole truncation, area 2
    PBody whole(whole_semigroup(n2()));
    auto v2 = pbody_truncated_volume(whole, h, 4);
    REQUIRE(v2.is_exact());
    CHECK(*v2.exact == Rat(2));
}

TEST_CASE("orthant inclusion-exclusion agrees with Monte Carlo in d = 3") {
    auto s3 = n3();
    auto sys = frobenius_of(s3, {LatticePoint{2, 0, 0}, LatticePoint{0, 3, 0},
                                 LatticePoint{0, 0, 1}});
    PBody body(sys);
    WeightVector ones3{Rat(1), Rat(1), Rat(1)};
    auto v = pbody_truncated_volume(body, {ones3, Rat(4)}, 2);
    REQUIRE(v.is_exact());
    auto mc = mc_union_translated_cones(s3->cone(), body.level(2).corners, ones3, Rat(4),
                                        100000, Exec{2, 99});
    CHECK(std::abs(mc.estimate - v.exact->convert_to<double>()) <= 3 * mc.std_error);
}

TEST_CASE("orthant exactness vs seeded Monte Carlo, d = 2") {
    PBody body(sum_ge_q(n2()));
    TruncatingHalfspace h{kOnes, Rat(2)};
    auto exact = pbody_truncated_volume(body, h, 4);
    REQUIRE(exact.is_exact());
    auto mc = mc_union_translated_cones(n2()->cone(), body.level(4).corners, kOnes,
                                        Rat(2), 100000, Exec{1, 4321});
    CHECK(std::abs(mc.estimate - exact.exact->convert_to<double>()) <= 3 * mc.std_error);
}

TEST_CASE("Monte Carlo is deterministic across thread counts") {
    auto a = a1();
    auto fr = frobenius_of(a, {LatticePoint{1, 0}, LatticePoint{1, 1}, LatticePoint{1, 2}});
    PBody body(fr);
    auto one = pbody_truncated_volume(body, {kOnes, Rat(3)}, 2, 50000, Exec{1, 2024});
    auto four = pbody_truncated_volume(body, {kOnes, Rat(3)}, 2, 50000, Exec{4, 2024});
    CHECK(!one.is_exact());
    CHECK(one.estimate == four.estimate);
    CHECK(one.std_error == four.std_error);
}

TEST_CASE("limit_check_3_17 on the sum >= q system") {
    PBody body(sum_ge_q(n2()));
    Limit317Options opt;
    opt.e_max = 10;
    opt.tolerance = Rat(1, 500);
    auto report = limit_check_3_17(body, {kOnes, Rat(2)}, opt);
    REQUIRE(report.rows.size() == 11);
    for (const auto& row : report.rows) {
        // exact per level: (3q^2 + q) / (2 q^2)
        CHECK(row.value == Rat(3 * row.q * row.q + row.q) / Rat(2 * row.q * row.q));
    }
    CHECK(report.extrapolated_limit == Rat(3, 2));
    REQUIRE(report.comparison_target.has_value());
    // the level-1024 body volume; the exact-fit limit is within 1/2048 of it
    CHECK(*report.comparison_target == Rat(3071, 2048));
    CHECK(report.verdict == Verdict::Pass);
}

TEST_CASE("limit_check_3_17 on T = S recovers the cone volume") {
    PBody body(whole_semigroup(n2()));
    Limit317Options opt;
    opt.e_max = 8;
    auto report = limit_check_3_17(body, {kOnes, Rat(2)}, opt);
    for (const auto& row : report.rows)
        CHECK(row.value == Rat(2) + Rat(1) / Rat(row.q));  // (2q)(2q+1)/(2q^2)
    CHECK(report.extrapolated_limit == Rat(2));
    CHECK(report.verdict == Verdict::Pass);
}

TEST_CASE("limit_check_3_17 on a Frobenius system") {
    // T_q = q*{(1,0),(0,1)} + S; counts are q^2 + q, the level bodies are
    // constant and the exact fit recovers the region area 1
    PBody body(frobenius_of(n2(), {LatticePoint{1, 0}, LatticePoint{0, 1}}));
    Limit317Options opt;
    opt.e_max = 8;
    auto report = limit_check_3_17(body, {kOnes, Rat(2)}, opt);
    for (const auto& row : report.rows)
        CHECK(row.value == Rat(row.q * row.q + row.q) / Rat(row.q * row.q));
    CHECK(report.extrapolated_limit == Rat(1));
    CHECK(report.verdict == Verdict::Pass);
}

TEST_CASE("fujita ladder: constant bodies reach q0 = 1, staircases climb") {
    // Frobenius systems have constant level bodies, so the first level clears
    // any positive epsilon
    PBody frob_body(frobenius_of(n2(), {LatticePoint{1, 0}, LatticePoint{0, 1}}));
    auto r2 = fujita_check(frob_body, {kOnes, Rat(2)}, Rat(1, 20), 6);
    REQUIRE(r2.q0.has_value());
    CHECK(*r2.q0 == 1);
    CHECK(r2.monotone_certified);

    // sum >= q: level volumes (3q-1)/(2q); at eps = 1/20 and e_max = 6 the
    // target is 191/128 - 1/20 = 923/640, first cleared at q = 16
    PBody sum_body(sum_ge_q(n2()));
    auto r1 = fujita_check(sum_body, {kOnes, Rat(2)}, Rat(1, 20), 6);
    REQUIRE(r1.q0.has_value());
    CHECK(*r1.q0 == 16);
    CHECK(r1.monotone_certified);
    for (const auto& row : r1.rows) {
        REQUIRE(row.inner_volume.is_exact());
        CHECK(*row.inner_volume.exact == Rat(3 * row.q - 1) / Rat(2 * row.q));
    }
}

TEST_CASE("fujita ladder: two-corner system needs q0 = 8 at eps = 1/20") {
    PBody body(two_corner(n2()));
    auto ladder = fujita_check(body, {kOnes, Rat(2)}, Rat(1, 20), 8);
    REQUIRE(ladder.q0.has_value());
    CHECK(*ladder.q0 == 8);
    CHECK(ladder.monotone_certified);
    for (const auto& row : ladder.rows) {
        REQUIRE(row.inner_volume.is_exact());
        Int cx = ceil_rat(Rat(row.q, 3));
        Int cy = ceil_rat(Rat(row.q, 2));
        Rat expect = Rat(2) - Rat(cx, row.q) * Rat(cy, row.q);
        CHECK(*row.inner_volume.exact == expect);
    }
    // levels ascend toward the p-body volume (continuity from below)
    for (std::size_t i = 1; i < ladder.rows.size(); ++i)
        CHECK(*ladder.rows[i].inner_volume.exact >= *ladder.rows[i - 1].inner_volume.exact);
    REQUIRE(ladder.delta_volume.is_exact());
    CHECK(*ladder.delta_volume.exact >= Rat(11, 6) - Rat(1, 100));
    CHECK(*ladder.delta_volume.exact <= Rat(11, 6));
}

TEST_CASE("fujita rejects nonpositive epsilon") {
    PBody body(sum_ge_q(n2()));
    CHECK_THROWS_AS(fujita_check(body, {kOnes, Rat(2)}, Rat(0), 4), Error);
}
