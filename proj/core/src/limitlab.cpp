#include "pbl/limitlab.hpp"

namespace pbl {

TruncatingHalfspace derive_volmult_halfspace(const PFamily& family, int e_max,
                                             const Exec& ex) {
    const StandardSemigroup& s = family.ring().semigroup();
    FindC fc = find_c(family, e_max, ex);
    const WeightVector& a = s.witness();
    const Rat base = Rat(fc.c) * dot(a, fc.v);
    const Int qmax = family.q_of(e_max);
    const Int p_nudge = next_prime_above(s.denom_scale() * qmax);
    return TruncatingHalfspace(a, base + Rat(1, p_nudge));
}

ConvergenceReport length_sequence(const PFamily& family, int e_max, const Exec& ex) {
    if (e_max < 0) throw Error("length_sequence: e_max must be >= 0");
    const std::size_t d = family.ring().dim();
    ConvergenceReport report;
    report.label = family.name() + ".length";
    for (int e = 0; e <= e_max; ++e) {
        const Int q = family.q_of(e);
        const Int len = colength(family.level(e), ex);
        report.rows.push_back({e, q, Rat(len) / Rat(ipow(q, unsigned(d)))});
    }
    finalize_report(report);
    return report;
}

ConvergenceReport hk_sequence(const PFamily& family, int e_max, int inner_cap,
                              const Exec& ex) {
    if (e_max < 0) throw Error("hk_sequence: e_max must be >= 0");
    const std::size_t d = family.ring().dim();
    const bool exact = family.ring().regular();
    ConvergenceReport report;
    report.label = family.name() + ".hk";
    if (!exact) report.note = "nested counting, inner sequences stabilized exactly";
    for (int e = 0; e <= e_max; ++e) {
        const Int q = family.q_of(e);
        const Rat qd = Rat(ipow(q, unsigned(d)));
        Rat ehk;
        if (exact) {
            ehk = e_hk_exact(family.level(e));
        } else {
            ConvergenceReport inner = e_hk_counting(family.level(e), inner_cap, true, ex);
            ehk = inner.rows.back().value;
        }
        report.rows.push_back({e, q, ehk / qd});
    }
    finalize_report(report);
    return report;
}

VolMultResult vol_mult_check(const PFamily& family, const VolMultOptions& opt,
                             const Exec& ex) {
    if (opt.e_max < 1) throw Error("vol_mult_check: e_max must be >= 1");
    VolMultResult out;
    TruncatingHalfspace h = derive_volmult_halfspace(family, opt.e_max, ex);
    out.alpha = h.alpha;

    out.length = length_sequence(family, opt.e_max, ex);
    out.hk = hk_sequence(family, opt.e_max, opt.inner_cap, ex);

    // Eq 5.9 decomposition with J'_q = R and trivial residue extension:
    // the limit of the length sequence equals Vol(C n H) - Vol(Delta n H).
    const RationalCone& cone = family.ring().semigroup().cone();
    const Rat cone_vol = truncated_cone_volume(cone, h);
    PBody body(family.staircase_system());
    out.pbody.label = family.name() + ".pbody";
    bool mc_used = false;
    double mc_se = 0;
    for (int e = 0; e <= opt.e_max; ++e) {
        VolumeValue level = pbody_truncated_volume(body, h, e, opt.mc_samples, ex);
        Rat value;
        if (level.is_exact()) {
            value = cone_vol - *level.exact;
        } else {
            value = Rat(cone_vol.convert_to<double>() - level.estimate);
            mc_used = true;
            mc_se = std::max(mc_se, level.std_error);
        }
        out.pbody.rows.push_back({e, family.q_of(e), value});
    }
    if (mc_used)
        out.pbody.note = "Monte Carlo levels, max se=" + std::to_string(mc_se);

    const Rat pbody_value = out.pbody.rows.back().value;
    out.length.comparison_target = pbody_value;
    out.length.tolerance = opt.tolerance;
    out.length.compare = CompareMode::Limit;
    finalize_report(out.length);
    out.hk.comparison_target = pbody_value;
    out.hk.tolerance = opt.tolerance;
    out.hk.compare = CompareMode::Limit;
    finalize_report(out.hk);
    out.pbody.comparison_target = out.length.extrapolated_limit;
    out.pbody.tolerance = opt.tolerance;
    out.pbody.compare = CompareMode::Tail;
    finalize_report(out.pbody);

    const Rat l = out.length.extrapolated_limit;
    const Rat k = out.hk.extrapolated_limit;
    out.verdict = (abs(l - k) <= opt.tolerance && abs(l - pbody_value) <= opt.tolerance &&
                   abs(k - pbody_value) <= opt.tolerance)
                      ? Verdict::Pass
                      : Verdict::Fail;
    return out;
}

GrowthBound growth_bound_check(const MonomialIdeal& ideal, int e_max, const Exec& ex) {
    if (e_max < 1) throw Error("growth_bound_check: e_max must be >= 1");
    const std::size_t d = ideal.ring().dim();
    GrowthBound out;
    for (int e = 0; e <= e_max; ++e) {
        const Int q = ideal.ring().q_of(e);
        const Int len = colength(frobenius_power(ideal, q), ex);
        out.ratios.push_back({e, q, Rat(len) / Rat(ipow(q, unsigned(d)))});
    }
    if (ideal.ring().regular()) {
        out.alpha = Rat(colength(ideal, ex));
        out.verdict = Verdict::Pass;
        for (const auto& row : out.ratios)
            if (row.value != out.alpha) out.verdict = Verdict::Fail;
    } else {
        out.alpha = out.ratios.size() > 1 ? out.ratios[1].value : out.ratios[0].value;
        out.verdict = Verdict::Pass;
        for (const auto& row : out.ratios)
            if (row.value > out.alpha) out.verdict = Verdict::Fail;
    }
    return out;
}

}  // namespace pbl
