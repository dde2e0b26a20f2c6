#include "pbl/pbody.hpp"

namespace pbl {

PBody::PBody(std::shared_ptr<const PSystem> system) : system_(std::move(system)) {
    if (!system_) throw Error("p-body without a p-system");
}

const PBody::Level& PBody::level(int e) const {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(e);
    if (it == cache_.end()) {
        const SemigroupIdeal& ideal = system_->level(e);
        Level lv;
        lv.q = system_->q_of(e);
        for (const auto& t : ideal.generators()) {
            std::vector<Rat> c(t.dim());
            for (std::size_t i = 0; i < t.dim(); ++i) c[i] = Rat(t[i], lv.q);
            lv.corners.push_back(std::move(c));
        }
        it = cache_.emplace(e, std::move(lv)).first;
    }
    return it->second;
}

bool delta_q_membership(const PBody& body, int e, const std::vector<Rat>& x) {
    const auto& lv = body.level(e);
    const RationalCone& cone = body.system().parent().cone();
    if (x.size() != cone.d) throw DimensionError("delta membership: dimension mismatch");
    std::vector<Rat> shifted(x.size());
    for (const auto& corner : lv.corners) {
        for (std::size_t i = 0; i < x.size(); ++i) shifted[i] = x[i] - corner[i];
        if (cone.contains(shifted)) return true;
    }
    return false;
}

Int count_scaled(const SemigroupIdeal& t_q, const Int& q, const TruncatingHalfspace& h,
                 const Exec& ex) {
    if (q < 1) throw Error("count_scaled: q must be positive");
    return count_truncated(t_q, h.a, h.alpha * Rat(q), ex).ideal_points;
}

VolumeValue pbody_truncated_volume(const PBody& body, const TruncatingHalfspace& h,
                                   int e_cap, long mc_samples, const Exec& ex) {
    const StandardSemigroup& s = body.system().parent();
    const auto& lv = body.level(e_cap);
    if (s.regular() && orthant_union_exact_feasible(s.dim(), lv.corners.size()))
        return VolumeValue::of(orthant_union_truncated_volume(lv.corners, h.a, h.alpha));
    return mc_union_translated_cones(s.cone(), lv.corners, h.a, h.alpha, mc_samples, ex);
}

ConvergenceReport limit_check_3_17(const PBody& body, const TruncatingHalfspace& h,
                                   const Limit317Options& opt, const Exec& ex) {
    if (opt.e_min < 0 || opt.e_max < opt.e_min) throw Error("bad e range");
    const PSystem& sys = body.system();
    const std::size_t d = sys.parent().dim();

    ConvergenceReport report;
    report.label = sys.name() + ".count317";
    report.tolerance = opt.tolerance;
    report.compare = opt.compare;
    for (int e = opt.e_min; e <= opt.e_max; ++e) {
        const Int q = sys.q_of(e);
        const Int count = count_scaled(sys.level(e), q, h, ex);
        report.rows.push_back({e, q, Rat(count) / Rat(ipow(q, unsigned(d)))});
    }
    VolumeValue vol = pbody_truncated_volume(body, h, opt.e_max, opt.mc_samples, ex);
    if (vol.is_exact()) {
        report.comparison_target = *vol.exact;
    } else {
        report.comparison_target = Rat(vol.estimate);
        report.note = "target from Monte Carlo, se=" + std::to_string(vol.std_error);
    }
    finalize_report(report);
    return report;
}

FujitaLadder fujita_check(const PBody& body, const TruncatingHalfspace& h,
                          const Rat& epsilon, int e_max, long mc_samples,
                          const Exec& ex) {
    if (epsilon <= 0) throw Error("fujita_check: epsilon must be positive");
    if (e_max < 0) throw Error("fujita_check: bad e range");
    FujitaLadder out;
    out.epsilon = epsilon;
    out.delta_volume = pbody_truncated_volume(body, h, e_max, mc_samples, ex);

    const bool exact_path = out.delta_volume.is_exact();
    const Rat target = (exact_path ? *out.delta_volume.exact : Rat(out.delta_volume.estimate)) - epsilon;

    out.monotone_certified = exact_path;
    std::optional<Rat> prev;
    for (int e = 0; e <= e_max; ++e) {
        VolumeValue inner = pbody_truncated_volume(body, h, e, mc_samples, ex);
        const Rat value = inner.is_exact() ? *inner.exact : Rat(inner.estimate);
        if (exact_path && inner.is_exact()) {
            if (prev && *prev > value) out.monotone_certified = false;
            prev = value;
        } else {
            out.monotone_certified = false;
        }
        out.rows.push_back({e, body.system().q_of(e), inner});
        if (!out.q0 && value >= target) {
            out.q0 = body.system().q_of(e);
            out.e0 = e;
        }
    }
    return out;
}

}  // namespace pbl
