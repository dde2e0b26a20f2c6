// Exact rational convex cones: V-to-H conversion, pointedness, truncations.
#pragma once

#include <optional>
#include <vector>

#include "pbl/lattice.hpp"
#include "pbl/numeric.hpp"

namespace pbl {

struct NotPointedError : Error {
    using Error::Error;
};
struct NotTruncatingError : Error {
    using Error::Error;
};

/// Strict halfspace {u : (a,u) < alpha}. Truncating for a pointed cone C when
/// a is a pointedness witness of C; then C intersected with it is bounded.
struct TruncatingHalfspace {
    WeightVector a;
    Rat alpha;

    TruncatingHalfspace(WeightVector weights, Rat bound)
        : a(std::move(weights)), alpha(std::move(bound)) {
        if (alpha <= 0) throw Error("truncating halfspace needs alpha > 0");
    }

    bool contains(const LatticePoint& u) const { return dot(a, u) < alpha; }
    bool contains(const std::vector<Rat>& x) const { return dot(a, x) < alpha; }

    /// Same weights, bound scaled by q (Rem "so is qH" scaling).
    TruncatingHalfspace scaled(const Int& q) const { return {a, alpha * Rat(q)}; }
};

/// Closed convex cone given by generators together with its exact
/// H-representation. Facet normals are primitive integer vectors with the
/// inequality sense n.x >= 0; when the cone is not full-dimensional the
/// additional `equations` pin its linear span (n.x = 0).
struct RationalCone {
    std::size_t d = 0;
    std::vector<LatticePoint> generators;
    std::vector<std::vector<Int>> facets;
    std::vector<std::vector<Int>> equations;
    bool full_dimensional = false;
    bool pointed = false;

    bool contains(const LatticePoint& u) const;
    bool contains(const std::vector<Rat>& x) const;
};

/// Exact dual description of the generated cone, dimensions 1..4.
RationalCone cone_from_generators(const std::vector<LatticePoint>& gens);

/// A witness a with (a,u) > 0 on C minus the origin and all components
/// strictly positive, when such a vector exists; nullopt otherwise (in
/// particular whenever the cone contains a line). Use RationalCone::pointed to
/// distinguish "not pointed" from "pointed but no positive-component witness".
std::optional<WeightVector> is_pointed_with_witness(const RationalCone& cone);

/// Exact Lebesgue volume of C intersected with {(a,u) < alpha}, computed at
/// alpha = 1 by a pulling decomposition of the cross-section polytope from its
/// lexicographically least vertex and rescaled by alpha^d.
Rat truncated_cone_volume(const RationalCone& cone, const TruncatingHalfspace& h);

/// Half-open integer bounding box of the truncation C n {(a,u) < bound}.
/// Every lattice point of the truncation closure lies in [lo, hi).
std::pair<LatticePoint, LatticePoint> truncation_bounding_box(
    const std::vector<LatticePoint>& gens, const WeightVector& a, const Rat& bound);

namespace detail {

/// Extreme rays and lineality basis of {y : c.y >= 0 for all constraint rows}.
struct DualDescription {
    std::vector<std::vector<Int>> rays;
    std::vector<std::vector<Int>> lineality;
};
DualDescription dual_description(const std::vector<std::vector<Int>>& constraints,
                                 std::size_t d);

/// Exact volume of the convex hull of rational points in R^m; 0 when the hull
/// is lower-dimensional.
Rat polytope_volume(const std::vector<std::vector<Rat>>& points);

}  // namespace detail

}  // namespace pbl
