// Exact and Monte Carlo volumes of truncated staircase regions.
#pragma once

#include <optional>
#include <vector>

#include "pbl/cone.hpp"
#include "pbl/exec.hpp"

namespace pbl {

/// Volume of a region: exact rational when an exact path exists, otherwise a
/// seeded Monte Carlo estimate with its standard error.
struct VolumeValue {
    std::optional<Rat> exact;
    double estimate = 0.0;
    double std_error = 0.0;
    long samples = 0;

    bool is_exact() const { return exact.has_value(); }
    static VolumeValue of(Rat v) {
        VolumeValue r;
        r.estimate = v.convert_to<double>();
        r.exact = std::move(v);
        return r;
    }
};

/// Subset inclusion-exclusion term cap (2^20 terms).
inline constexpr std::size_t kInclusionExclusionMaxGens = 20;

bool orthant_union_exact_feasible(std::size_t d, std::size_t n_corners);

/// Exact volume of (union of (v + R_{>=0}^d)) n {(a,x) < alpha}. Dimensions 1
/// and 2 use a staircase sweep (a fully pruned inclusion-exclusion); d >= 3
/// uses subset inclusion-exclusion over componentwise joins and throws when
/// the term cap is exceeded.
Rat orthant_union_truncated_volume(const std::vector<std::vector<Rat>>& corners,
                                   const WeightVector& a, const Rat& alpha);

/// Exact volume of [0,k) \ union of (g + R_{>=0}^d): the staircase-complement
/// region of a monomial ideal with pure-power box k.
Rat staircase_complement_volume(const std::vector<LatticePoint>& gens,
                                const std::vector<Int>& k);

/// Seeded Monte Carlo estimate of Vol((union of (v + C)) n {(a,x) < alpha})
/// for a pointed full-dimensional cone C. In dimension 2 samples are drawn
/// uniformly from the exact truncation triangle; in higher dimensions from
/// the truncation's bounding box. Deterministic for fixed seed, independent
/// of the thread count.
VolumeValue mc_union_translated_cones(const RationalCone& cone,
                                      const std::vector<std::vector<Rat>>& translates,
                                      const WeightVector& a, const Rat& alpha,
                                      long samples, const Exec& ex);

}  // namespace pbl
