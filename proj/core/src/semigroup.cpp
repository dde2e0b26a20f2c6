#include "pbl/semigroup.hpp"

#include <algorithm>

#include "pbl/detail/linalg.hpp"

namespace pbl {
namespace {

bool is_unit_vector(const LatticePoint& g) {
    int ones = 0;
    for (const Int& x : g.c) {
        if (x == 1)
            ++ones;
        else if (x != 0)
            return false;
    }
    return ones == 1;
}

}  // namespace

SemigroupPtr make_standard_semigroup(std::vector<LatticePoint> gens,
                                     std::optional<WeightVector> a) {
    if (gens.empty()) throw Error("semigroup needs at least one generator");
    const std::size_t d = gens[0].dim();
    for (const auto& g : gens)
        if (g.dim() != d) throw DimensionError("semigroup generators of mixed dimension");

    // S - S is the group generated by the generators (s1 - s2 runs over all
    // integer combinations), and it must be all of Z^d.
    std::vector<std::vector<Int>> rows;
    for (const auto& g : gens)
        if (!g.is_zero()) rows.push_back(g.c);
    if (!detail::rows_generate_full_lattice(rows, d))
        throw NotStandardError("not standard: differences do not generate Z^d");

    RationalCone cone = cone_from_generators(gens);
    if (!cone.full_dimensional)
        throw NotStandardError("not standard: cone not full-dimensional");
    if (!cone.pointed) throw NotStandardError("not standard: cone not pointed");

    WeightVector witness;
    if (a) {
        witness = *a;
        if (witness.dim() != d) throw DimensionError("weight vector dimension mismatch");
        if (!witness.strictly_positive())
            throw Error("semigroup weights must be strictly positive");
        for (const auto& g : gens)
            if (!g.is_zero() && dot(witness, g) <= 0)
                throw Error("weight vector is not a pointedness witness");
    } else {
        auto derived = is_pointed_with_witness(cone);
        if (!derived)
            throw Error(
                "no strictly positive witness exists for this cone; pass weights "
                "explicitly");
        witness = *derived;
    }

    auto s = SemigroupPtr(new StandardSemigroup());
    auto* m = const_cast<StandardSemigroup*>(s.get());
    m->d_ = d;
    m->gens_ = std::move(gens);
    std::sort(m->gens_.begin(), m->gens_.end(),
              [&](const LatticePoint& u, const LatticePoint& v) {
                  return a_compare(witness, u, v) == Ordering::Less;
              });
    m->gens_.erase(std::unique(m->gens_.begin(), m->gens_.end()), m->gens_.end());
    m->cone_ = std::move(cone);
    m->a_ = std::move(witness);
    m->a_den_ = common_denominator(m->a_.w);
    m->a_int_.resize(d);
    for (std::size_t i = 0; i < d; ++i)
        m->a_int_[i] = num(m->a_[i]) * (m->a_den_ / den(m->a_[i]));

    // regular means S = N^d on the nose: every generator is a unit vector
    std::size_t units = 0;
    bool only_units = true;
    for (const auto& g : m->gens_) {
        if (g.is_zero()) continue;
        if (is_unit_vector(g))
            ++units;
        else
            only_units = false;
    }
    m->regular_ = only_units && units == d;

    // Extreme rays: generators whose tight facet set has rank d-1.
    std::vector<LatticePoint> dirs;
    for (const auto& g : m->gens_) {
        if (g.is_zero()) continue;
        std::vector<std::vector<Int>> tight;
        for (const auto& n : m->cone_.facets) {
            Int sdot = 0;
            for (std::size_t i = 0; i < d; ++i) sdot += n[i] * g[i];
            if (sdot == 0) tight.push_back(n);
        }
        if (detail::int_rank(tight) + 1 == d) {
            std::vector<Rat> gr(d);
            for (std::size_t i = 0; i < d; ++i) gr[i] = Rat(g[i]);
            dirs.push_back(LatticePoint(primitive_vector(gr)));
        }
    }
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    m->rays_ = std::move(dirs);
    m->ray_gens_.assign(m->rays_.size(), {});
    for (std::size_t r = 0; r < m->rays_.size(); ++r) {
        const LatticePoint& dir = m->rays_[r];
        for (std::size_t i = 0; i < m->gens_.size(); ++i) {
            const LatticePoint& g = m->gens_[i];
            if (g.is_zero()) continue;
            Int k = 0;  // g on the ray iff g = k * dir, k > 0
            bool on = true;
            for (std::size_t j = 0; j < d && on; ++j) {
                if (dir[j] == 0) {
                    on = g[j] == 0;
                } else if (g[j] % dir[j] != 0) {
                    on = false;
                } else if (k == 0) {
                    k = g[j] / dir[j];
                } else {
                    on = g[j] / dir[j] == k;
                }
            }
            if (on && k > 0) m->ray_gens_[r].push_back(i);
        }
    }
    return s;
}

bool StandardSemigroup::contains(const LatticePoint& u) const {
    if (u.dim() != d_) throw DimensionError("semigroup membership: dimension mismatch");
    if (regular_) {
        for (const Int& x : u.c)
            if (x < 0) return false;
        return true;
    }
    if (!cone_.contains(u)) return false;
    if (u.is_zero()) return true;

    std::map<std::vector<Int>, bool> local;
    auto lookup = [&](const std::vector<Int>& key) -> const bool* {
        if (auto it = local.find(key); it != local.end()) return &it->second;
        std::shared_lock lock(memo_mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) return &it->second;
        return nullptr;
    };

    // Iterative DFS through u minus generator sums; witness weights strictly
    // decrease along edges, so the search graph is acyclic.
    struct Frame {
        LatticePoint p;
        std::size_t next = 0;
        std::optional<std::vector<Int>> pending;
    };
    std::vector<Frame> stack;
    stack.push_back({u, 0, std::nullopt});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.pending) {
            if (const bool* r = lookup(*f.pending); r && *r) {
                local[f.p.c] = true;
                stack.pop_back();
                continue;
            }
            f.pending.reset();
        }
        bool resolved_true = false;
        bool descended = false;
        while (f.next < gens_.size()) {
            const LatticePoint& g = gens_[f.next];
            ++f.next;
            if (g.is_zero()) continue;
            LatticePoint child = f.p - g;
            if (child.is_zero()) {
                resolved_true = true;
                break;
            }
            if (!cone_.contains(child)) continue;
            if (const bool* r = lookup(child.c)) {
                if (*r) {
                    resolved_true = true;
                    break;
                }
                continue;
            }
            f.pending = child.c;
            stack.push_back({std::move(child), 0, std::nullopt});
            descended = true;
            break;
        }
        if (resolved_true) {
            local[f.p.c] = true;
            stack.pop_back();
        } else if (!descended) {
            local[f.p.c] = false;
            stack.pop_back();
        }
    }
    bool result = local.at(u.c);
    {
        std::unique_lock lock(memo_mutex_);
        memo_.merge(local);
    }
    return result;
}

std::vector<LatticePoint> minimalize(const StandardSemigroup& s,
                                     std::vector<LatticePoint> gens) {
    for (const auto& t : gens)
        if (!s.contains(t)) throw Error("ideal generator not in the semigroup");
    auto weight_less = [&](const LatticePoint& u, const LatticePoint& v) {
        return a_compare(s.witness(), u, v) == Ordering::Less;
    };
    std::sort(gens.begin(), gens.end(), weight_less);
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    if (s.regular() && s.dim() == 2) {
        // staircase frontier scan, O(n log n)
        std::vector<LatticePoint> byx = gens;
        std::sort(byx.begin(), byx.end());
        std::vector<LatticePoint> kept;
        bool have_min = false;
        Int min_y = 0;
        std::size_t i = 0;
        while (i < byx.size()) {
            std::size_t j = i;
            Int best = byx[i][1];
            while (j < byx.size() && byx[j][0] == byx[i][0]) {
                best = std::min(best, byx[j][1]);
                ++j;
            }
            if (!have_min || best < min_y) {
                kept.push_back(LatticePoint{byx[i][0], best});
                min_y = best;
                have_min = true;
            }
            i = j;
        }
        std::sort(kept.begin(), kept.end(), weight_less);
        return kept;
    }

    std::vector<LatticePoint> kept;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < gens.size() && !dominated; ++j) {
            if (i == j) continue;
            LatticePoint diff = gens[i] - gens[j];
            if (diff.is_zero()) continue;
            dominated = s.regular() ? dominates(gens[i], gens[j]) : s.contains(diff);
        }
        if (!dominated) kept.push_back(gens[i]);
    }
    return kept;
}

SemigroupIdeal::SemigroupIdeal(SemigroupPtr parent, std::vector<LatticePoint> gens)
    : parent_(std::move(parent)) {
    if (!parent_) throw Error("semigroup ideal without a parent semigroup");
    if (gens.empty()) throw Error("semigroup ideal needs at least one generator");
    gens_ = minimalize(*parent_, std::move(gens));
}

bool SemigroupIdeal::contains(const LatticePoint& u) const {
    for (const auto& t : gens_)
        if (parent_->contains(u - t)) return true;
    return false;
}

PSystem::PSystem(SemigroupPtr parent, Int p, Rule rule, std::string name)
    : parent_(std::move(parent)), p_(std::move(p)), rule_(std::move(rule)),
      name_(std::move(name)) {
    if (!parent_) throw Error("p-system without a parent semigroup");
    if (p_ < 2 || !is_prime(p_)) throw Error("p must be prime");
    if (!rule_) throw Error("p-system without a rule");
}

const SemigroupIdeal& PSystem::level(int e) const {
    if (e < 0) throw Error("p-system level must be nonnegative");
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(e);
    if (it == cache_.end()) {
        auto ideal = std::make_shared<const SemigroupIdeal>(parent_, rule_(e));
        it = cache_.emplace(e, std::move(ideal)).first;
    }
    return *it->second;
}

struct PSystemValidationAccess {
    static void bump(const PSystem& s, int e) {
        if (e > s.validated_up_to_) s.validated_up_to_ = e;
    }
};

PSystemValidation validate_p_system(const PSystem& system, int e_max) {
    if (e_max < 1) throw Error("validate_p_system: e_max must be >= 1");
    PSystemValidation report;
    for (int e = 0; e < e_max; ++e) {
        const SemigroupIdeal& cur = system.level(e);
        const SemigroupIdeal& next = system.level(e + 1);
        for (const auto& t : cur.generators()) {
            LatticePoint pt = system.prime() * t;
            if (!next.contains(pt)) {
                report.ok = false;
                report.violation_e = e;
                report.witness = pt;
                report.detail =
                    "p * generator escapes the next level at e = " + std::to_string(e);
                return report;
            }
        }
        PSystemValidationAccess::bump(system, e + 1);
    }
    return report;
}

}  // namespace pbl
