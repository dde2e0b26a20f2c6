#include "pbl/toric.hpp"

#include <algorithm>
#include <set>

#include "pbl/volume.hpp"

namespace pbl {

RingPtr make_toric_ring(SemigroupPtr s, Int p) {
    if (!s) throw Error("toric ring needs a semigroup");
    if (p < 2 || !is_prime(p)) throw Error("ring characteristic must be prime");
    return RingPtr(new ToricRing(std::move(s), std::move(p)));
}

RingPtr make_regular_ring(std::size_t d, Int p, std::optional<WeightVector> a) {
    if (d < 1) throw DimensionError("ring dimension must be >= 1");
    std::vector<LatticePoint> units;
    for (std::size_t i = 0; i < d; ++i) units.push_back(LatticePoint::unit(d, i));
    return make_toric_ring(make_standard_semigroup(std::move(units), std::move(a)),
                           std::move(p));
}

MonomialIdeal::MonomialIdeal(RingPtr ring, std::vector<LatticePoint> staircase_gens)
    : ring_(std::move(ring)),
      staircase_(ring_ ? SemigroupIdeal(ring_->semigroup_ptr(), std::move(staircase_gens))
                       : throw Error("monomial ideal needs a ring")) {}

MonomialIdeal maximal_ideal(RingPtr ring) {
    if (!ring) throw Error("maximal_ideal: null ring");
    std::vector<LatticePoint> gens;
    for (const auto& g : ring->semigroup().generators())
        if (!g.is_zero()) gens.push_back(g);
    return MonomialIdeal(std::move(ring), std::move(gens));
}

MPrimality m_primality(const MonomialIdeal& ideal, Int multiple_cap) {
    const ToricRing& ring = ideal.ring();
    const StandardSemigroup& s = ring.semigroup();
    MPrimality out;

    if (ring.regular()) {
        out.box.assign(s.dim(), 0);
        for (std::size_t i = 0; i < s.dim(); ++i) {
            Int best = -1;
            for (const auto& t : ideal.generators()) {
                bool pure = true;
                for (std::size_t j = 0; j < s.dim() && pure; ++j)
                    if (j != i && t[j] != 0) pure = false;
                if (pure && (best < 0 || t[i] < best)) best = t[i];
            }
            if (best < 0) {
                out.reason = "no pure-power bound on axis " + std::to_string(i);
                return out;
            }
            out.box[i] = best;
        }
        out.ok = true;
        return out;
    }

    // General model: for every semigroup generator g find the least multiple
    // with nu * g in the staircase. Existence for every generator proves the
    // complement finite; the proved weight bound is
    //   max_g (a,g) * sum_g (nu_g - 1).
    const WeightVector& a = s.witness();
    Rat maxw = 0;
    Int nu_sum = 0;
    for (const auto& g : s.generators()) {
        if (g.is_zero()) continue;
        maxw = std::max(maxw, dot(a, g));
        Int nu = 0;
        LatticePoint mult = LatticePoint::zero(s.dim());
        for (Int k = 1; k <= multiple_cap; ++k) {
            mult = mult + g;
            if (ideal.staircase().contains(mult)) {
                nu = k;
                break;
            }
        }
        if (nu == 0) {
            out.reason = "no staircase bound along a generator within the search cap";
            return out;
        }
        nu_sum += nu - 1;
    }
    out.ok = true;
    out.weight_bound = maxw * Rat(nu_sum) + 1;
    return out;
}

namespace {

ComplementSummary complement_impl(const MonomialIdeal& ideal, bool collect,
                                  const Exec& ex) {
    MPrimality mp = m_primality(ideal);
    if (!mp.ok) throw NotMPrimaryError("ideal is not m-primary: " + mp.reason);
    if (ideal.ring().regular())
        return complement_in_box(ideal.staircase(), mp.box, collect, ex);
    return complement_in_truncation(ideal.staircase(), ideal.ring().weights(),
                                    mp.weight_bound, collect, ex);
}

}  // namespace

Int colength(const MonomialIdeal& ideal, const Exec& ex) {
    return complement_impl(ideal, false, ex).count;
}

ComplementSummary staircase_complement(const MonomialIdeal& ideal, bool collect_points,
                                       const Exec& ex) {
    return complement_impl(ideal, collect_points, ex);
}

namespace {

Int require_p_power(const ToricRing& ring, const Int& q) {
    if (q < 1) throw Error("q must be a positive power of p");
    Int r = q;
    while (r > 1) {
        if (r % ring.prime() != 0) throw Error("q is not a power of p");
        r /= ring.prime();
    }
    return q;
}

}  // namespace

MonomialIdeal frobenius_power(const MonomialIdeal& ideal, const Int& q) {
    require_p_power(ideal.ring(), q);
    std::vector<LatticePoint> gens;
    for (const auto& t : ideal.generators()) gens.push_back(q * t);
    return MonomialIdeal(ideal.ring_ptr(), std::move(gens));
}

MonomialIdeal ordinary_power(const MonomialIdeal& ideal, const Int& n) {
    if (n < 1) throw Error("ordinary power needs n >= 1");
    const auto& gens = ideal.generators();
    std::set<std::vector<Int>> sums;
    constexpr std::size_t kMaxTerms = 1u << 21;

    // multisets of size n over the generators, accumulated as sums
    std::vector<LatticePoint> stack;
    std::function<void(std::size_t, Int, LatticePoint)> rec =
        [&](std::size_t idx, Int remaining, LatticePoint acc) {
            if (remaining == 0) {
                sums.insert(acc.c);
                if (sums.size() > kMaxTerms)
                    throw Error("ordinary power has too many generators");
                return;
            }
            if (idx + 1 == gens.size()) {
                LatticePoint r = acc;
                for (Int i = 0; i < remaining; ++i) r = r + gens[idx];
                sums.insert(r.c);
                if (sums.size() > kMaxTerms)
                    throw Error("ordinary power has too many generators");
                return;
            }
            LatticePoint cur = acc;
            for (Int take = 0; take <= remaining; ++take) {
                rec(idx + 1, remaining - take, cur);
                cur = cur + gens[idx];
            }
        };
    rec(0, n, LatticePoint::zero(ideal.ring().dim()));

    std::vector<LatticePoint> out;
    out.reserve(sums.size());
    for (auto& v : sums) out.push_back(LatticePoint(v));
    return MonomialIdeal(ideal.ring_ptr(), std::move(out));
}

MonomialIdeal cartier_contraction(const MonomialIdeal& ideal, const Int& q) {
    if (!ideal.ring().regular())
        throw Error("cartier contraction implemented for the regular model only");
    require_p_power(ideal.ring(), q);
    // floor(b/q) dominates t exactly when b dominates q t
    std::vector<LatticePoint> gens;
    for (const auto& t : ideal.generators()) gens.push_back(q * t);
    return MonomialIdeal(ideal.ring_ptr(), std::move(gens));
}

bool cartier_floor_member(const MonomialIdeal& ideal, const Int& q,
                          const LatticePoint& b) {
    if (!ideal.ring().regular())
        throw Error("cartier contraction implemented for the regular model only");
    require_p_power(ideal.ring(), q);
    LatticePoint f = b;
    for (std::size_t i = 0; i < f.dim(); ++i) f[i] = floor_div(f[i], q);
    return ideal.staircase().contains(f);
}

Rat e_hk_exact(const MonomialIdeal& ideal) {
    if (!ideal.ring().regular())
        throw Error("exact-mode e_HK needs the regular model; use counting mode");
    MPrimality mp = m_primality(ideal);
    if (!mp.ok) throw NotMPrimaryError("ideal is not m-primary: " + mp.reason);
    return staircase_complement_volume(ideal.generators(), mp.box);
}

ConvergenceReport e_hk_counting(const MonomialIdeal& ideal, int e_max,
                                bool stop_when_stable, const Exec& ex) {
    if (e_max < 0) throw Error("e_hk_counting: e_max must be >= 0");
    const std::size_t d = ideal.ring().dim();
    ConvergenceReport report;
    report.label = "hk-counting";
    for (int e = 0; e <= e_max; ++e) {
        const Int q = ideal.ring().q_of(e);
        const Int len = colength(frobenius_power(ideal, q), ex);
        report.rows.push_back({e, q, Rat(len) / Rat(ipow(q, unsigned(d)))});
        if (stop_when_stable && report.rows.size() >= 2 &&
            report.rows[report.rows.size() - 2].value == report.rows.back().value)
            break;
    }
    finalize_report(report);
    return report;
}

PFamily::PFamily(RingPtr ring, FamilyKind kind, Rule rule, std::string name)
    : ring_(std::move(ring)), kind_(kind), rule_(std::move(rule)), name_(std::move(name)) {
    if (!ring_) throw Error("p-family without a ring");
    if (!rule_) throw Error("p-family without a rule");
}

const MonomialIdeal& PFamily::level(int e) const {
    if (e < 0) throw Error("family level must be nonnegative");
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->levels.find(e);
    if (it == cache_->levels.end()) {
        auto ideal = std::make_shared<const MonomialIdeal>(rule_(e));
        if (ideal->ring_ptr().get() != ring_.get())
            throw Error("family rule produced an ideal over a different ring");
        it = cache_->levels.emplace(e, std::move(ideal)).first;
    }
    return *it->second;
}

std::shared_ptr<const PSystem> PFamily::staircase_system() const {
    PFamily self = *this;  // shares the level cache
    return std::make_shared<const PSystem>(
        ring_->semigroup_ptr(), ring_->prime(),
        [self](int e) { return self.level(e).generators(); }, name_);
}

PFamily make_frobenius_family(const MonomialIdeal& base) {
    RingPtr ring = base.ring_ptr();
    return PFamily(
        ring, FamilyKind::Frobenius,
        [base](int e) { return frobenius_power(base, base.ring().q_of(e)); },
        "frobenius");
}

PFamily make_power_family(const MonomialIdeal& base, const Rat& t) {
    if (t <= 0) throw Error("power family needs t > 0");
    RingPtr ring = base.ring_ptr();
    return PFamily(
        ring, FamilyKind::Power,
        [base, t](int e) {
            Int n = ceil_rat(t * Rat(base.ring().q_of(e)));
            return ordinary_power(base, n);
        },
        "power");
}

PFamily make_cartier_family(const MonomialIdeal& base) {
    if (!base.ring().regular())
        throw Error("cartier family implemented for the regular model only");
    RingPtr ring = base.ring_ptr();
    return PFamily(
        ring, FamilyKind::Cartier,
        [base](int e) { return cartier_contraction(base, base.ring().q_of(e)); },
        "cartier");
}

PFamily make_qpower_family(const MonomialIdeal& base, unsigned k) {
    if (k < 1) throw Error("qpower family needs k >= 1");
    RingPtr ring = base.ring_ptr();
    return PFamily(
        ring, FamilyKind::Custom,
        [base, k](int e) {
            Int q = base.ring().q_of(e);
            return ordinary_power(base, ipow(q, k));
        },
        "qpower" + std::to_string(k));
}

PFamily make_corner_family(RingPtr ring, const std::vector<Rat>& t) {
    if (!ring) throw Error("corner family: null ring");
    if (!ring->regular()) throw Error("corner family needs the regular model");
    if (t.size() != ring->dim()) throw DimensionError("corner family arity mismatch");
    for (const Rat& x : t)
        if (x <= 0) throw Error("corner family needs positive exponents");
    std::vector<Rat> ts = t;
    return PFamily(
        ring, FamilyKind::Custom,
        [ring, ts](int e) {
            const Int q = ring->q_of(e);
            std::vector<LatticePoint> gens;
            for (std::size_t i = 0; i < ts.size(); ++i) {
                LatticePoint g = LatticePoint::zero(ts.size());
                g[i] = ceil_rat(ts[i] * Rat(q));
                gens.push_back(std::move(g));
            }
            return MonomialIdeal(ring, std::move(gens));
        },
        "corner");
}

PFamily make_custom_family(RingPtr ring, PFamily::Rule rule, std::string name) {
    return PFamily(std::move(ring), FamilyKind::Custom, std::move(rule), std::move(name));
}

FamilyValidation validate_family(const PFamily& family, int e_max) {
    if (e_max < 1) throw Error("validate_family: e_max must be >= 1");
    FamilyValidation report;
    const Int p = family.ring().prime();
    for (int e = 0; e < e_max; ++e) {
        const MonomialIdeal& cur = family.level(e);
        const MonomialIdeal& next = family.level(e + 1);
        for (const auto& t : cur.generators()) {
            LatticePoint pt = p * t;
            if (!next.staircase().contains(pt)) {
                report.ok = false;
                report.violation_e = e;
                report.witness = pt;
                report.detail = "Frobenius image of a level-" + std::to_string(e) +
                                " generator escapes level " + std::to_string(e + 1);
                return report;
            }
        }
    }
    return report;
}

FindC find_c(const PFamily& family, int e_max, const Exec& ex) {
    if (e_max < 0) throw Error("find_c: e_max must be >= 0");
    const StandardSemigroup& s = family.ring().semigroup();
    const WeightVector& a = s.witness();

    FindC out;
    Rat best_w = -1;
    for (const auto& g : s.generators()) {
        if (g.is_zero()) continue;
        Rat w = dot(a, g);
        if (w > best_w || (w == best_w && out.v < g)) {
            best_w = w;
            out.v = g;
        }
    }
    if (best_w <= 0) throw Error("find_c: degenerate semigroup");

    Rat max_ratio = 0;
    bool found = false;
    for (int e = 0; e <= e_max; ++e) {
        const Int q = family.q_of(e);
        ComplementSummary cs = staircase_complement(family.level(e), false, ex);
        if (cs.empty) continue;
        Rat ratio = cs.max_weight / (Rat(q) * best_w);
        if (!found || ratio > max_ratio) {
            found = true;
            max_ratio = ratio;
            out.witness_e = e;
            out.witness_q = q;
            out.witness_point = cs.max_point;
        }
    }
    if (!found) {
        // complements are empty at every level; c = 1 works vacuously
        out.c = 1;
        return out;
    }
    out.c = int(floor_rat(max_ratio).convert_to<long>()) + 1;
    return out;
}

}  // namespace pbl
