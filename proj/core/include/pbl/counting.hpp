// Exact bulk lattice counting over bounded regions of a semigroup.
#pragma once

#include <optional>

#include "pbl/exec.hpp"
#include "pbl/semigroup.hpp"

namespace pbl {

struct TruncationCounts {
    Int semigroup_points = 0;  // #(S  n  {(a,u) < bound})
    Int ideal_points = 0;      // #(T  n  {(a,u) < bound})
};

/// Exact counts over Cone(S) n {(a,u) < bound}. Reachability DP over the
/// truncation's bounding box: membership chains only ever decrease the weight,
/// so they never leave the region. The final tally is slab-parallel with an
/// ordered reduction; results are independent of the thread count.
TruncationCounts count_truncated(const SemigroupIdeal& ideal, const WeightVector& a,
                                 const Rat& bound, const Exec& ex = {});

struct ComplementSummary {
    Int count = 0;                     // #(S \ T) within the region
    bool empty = true;
    Rat max_weight = 0;                // largest (a,u) over the complement
    LatticePoint max_point;            // deterministic maximizer (weight, lex)
    std::vector<LatticePoint> points;  // filled only when collect_points
};

/// Complement S \ T inside {(a,u) < bound}. The caller must guarantee that
/// every complement point satisfies the weight bound (m-primality bound).
ComplementSummary complement_in_truncation(const SemigroupIdeal& ideal,
                                           const WeightVector& a, const Rat& bound,
                                           bool collect_points = false,
                                           const Exec& ex = {});

/// Complement N^d \ T inside the half-open box [0, k). Regular model only;
/// the box must be the pure-power box, which is downward closed.
ComplementSummary complement_in_box(const SemigroupIdeal& ideal,
                                    const std::vector<Int>& k,
                                    bool collect_points = false, const Exec& ex = {});

}  // namespace pbl
