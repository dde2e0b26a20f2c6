// Standard affine semigroups, semigroup ideals and p-systems.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "pbl/cone.hpp"
#include "pbl/lattice.hpp"

namespace pbl {

struct NotStandardError : Error {
    using Error::Error;
};

class StandardSemigroup;
using SemigroupPtr = std::shared_ptr<const StandardSemigroup>;

/// Finitely generated S in Z^d with S - S = Z^d and pointed full-dimensional
/// cone. Immutable after construction; the membership memo admits concurrent
/// readers and serialized writers, so lookups are thread-safe and results do
/// not depend on the thread count.
class StandardSemigroup {
  public:
    std::size_t dim() const { return d_; }
    const std::vector<LatticePoint>& generators() const { return gens_; }
    const RationalCone& cone() const { return cone_; }
    const WeightVector& witness() const { return a_; }
    bool regular() const { return regular_; }

    /// Integer form of the witness: weights_int()[i] = denom_scale() * a[i].
    const std::vector<Int>& weights_int() const { return a_int_; }
    const Int& denom_scale() const { return a_den_; }

    /// Primitive directions of the extreme rays of Cone(S); every direction
    /// carries at least one generator.
    const std::vector<LatticePoint>& extreme_ray_directions() const { return rays_; }
    /// For each extreme ray, the generators lying on it (indices into
    /// generators()).
    const std::vector<std::vector<std::size_t>>& ray_generators() const {
        return ray_gens_;
    }

    /// Exact membership: u is a nonnegative integer combination of the
    /// generators. Memoized bounded search below the query point.
    bool contains(const LatticePoint& u) const;

    friend SemigroupPtr make_standard_semigroup(std::vector<LatticePoint> gens,
                                                std::optional<WeightVector> a);

  private:
    StandardSemigroup() = default;

    std::size_t d_ = 0;
    std::vector<LatticePoint> gens_;
    RationalCone cone_;
    WeightVector a_;
    std::vector<Int> a_int_;
    Int a_den_ = 1;
    bool regular_ = false;
    std::vector<LatticePoint> rays_;
    std::vector<std::vector<std::size_t>> ray_gens_;

    mutable std::map<std::vector<Int>, bool> memo_;
    mutable std::shared_mutex memo_mutex_;
};

/// Validates S - S = Z^d (Hermite form of the generator lattice) and
/// pointedness of the full-dimensional cone, then assembles the semigroup.
/// When no weight vector is supplied a strictly positive witness is derived
/// from the dual cone. Throws NotStandardError / Error with the reason.
SemigroupPtr make_standard_semigroup(std::vector<LatticePoint> gens,
                                     std::optional<WeightVector> a = std::nullopt);

inline bool semigroup_membership(const StandardSemigroup& s, const LatticePoint& u) {
    return s.contains(u);
}

/// Removes every generator lying in another generator's translate t + S.
/// The result generates the same ideal, in deterministic (weight, lex) order.
std::vector<LatticePoint> minimalize(const StandardSemigroup& s,
                                     std::vector<LatticePoint> gens);

/// T = union of t_i + S over a finite minimal generator list. Ideal of S by
/// construction (T + S inside T).
class SemigroupIdeal {
  public:
    SemigroupIdeal(SemigroupPtr parent, std::vector<LatticePoint> gens);

    const StandardSemigroup& parent() const { return *parent_; }
    SemigroupPtr parent_ptr() const { return parent_; }
    const std::vector<LatticePoint>& generators() const { return gens_; }

    bool contains(const LatticePoint& u) const;

  private:
    SemigroupPtr parent_;
    std::vector<LatticePoint> gens_;
};

inline bool ideal_membership(const SemigroupIdeal& t, const LatticePoint& u) {
    return t.contains(u);
}

/// A rule e -> generator list of T_{p^e}, lazily materialized and cached.
class PSystem {
  public:
    using Rule = std::function<std::vector<LatticePoint>(int e)>;

    PSystem(SemigroupPtr parent, Int p, Rule rule, std::string name = "system");

    const StandardSemigroup& parent() const { return *parent_; }
    SemigroupPtr parent_ptr() const { return parent_; }
    const Int& prime() const { return p_; }
    const std::string& name() const { return name_; }
    Int q_of(int e) const { return ipow(p_, unsigned(e)); }

    /// The ideal T_{p^e}; construction validates and minimalizes generators.
    const SemigroupIdeal& level(int e) const;

    int validated_up_to() const { return validated_up_to_; }

  private:
    friend struct PSystemValidationAccess;
    SemigroupPtr parent_;
    Int p_;
    Rule rule_;
    std::string name_;
    mutable std::map<int, std::shared_ptr<const SemigroupIdeal>> cache_;
    mutable std::mutex cache_mutex_;
    mutable int validated_up_to_ = -1;
};

struct PSystemValidation {
    bool ok = true;
    int violation_e = -1;      // p * (generator of T_{p^e}) escapes T_{p^{e+1}}
    LatticePoint witness;      // the escaping point p * t
    std::string detail;
};

/// Checks p * T_{p^e} inside T_{p^{e+1}} on generators for every e < e_max.
/// Violations are reported, not thrown.
PSystemValidation validate_p_system(const PSystem& system, int e_max);

}  // namespace pbl
