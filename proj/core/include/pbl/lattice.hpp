// Integer lattice points, weight orderings and bounded box enumeration.
#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "pbl/numeric.hpp"

namespace pbl {

/// A point of Z^d with arbitrary-precision coordinates. Immutable value type.
struct LatticePoint {
    std::vector<Int> c;

    LatticePoint() = default;
    explicit LatticePoint(std::vector<Int> coords) : c(std::move(coords)) {}
    LatticePoint(std::initializer_list<Int> coords) : c(coords) {}

    std::size_t dim() const { return c.size(); }
    const Int& operator[](std::size_t i) const { return c[i]; }
    Int& operator[](std::size_t i) { return c[i]; }

    bool operator==(const LatticePoint& o) const = default;
    auto operator<=>(const LatticePoint& o) const = default;  // lexicographic

    static LatticePoint zero(std::size_t d) { return LatticePoint(std::vector<Int>(d, 0)); }
    static LatticePoint unit(std::size_t d, std::size_t i) {
        LatticePoint p = zero(d);
        p[i] = 1;
        return p;
    }
    bool is_zero() const {
        for (const Int& x : c)
            if (x != 0) return false;
        return true;
    }
};

inline void require_same_dim(const LatticePoint& u, const LatticePoint& v) {
    if (u.dim() != v.dim()) throw DimensionError("lattice point dimension mismatch");
}

inline LatticePoint operator+(const LatticePoint& u, const LatticePoint& v) {
    require_same_dim(u, v);
    LatticePoint r = u;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] += v[i];
    return r;
}

inline LatticePoint operator-(const LatticePoint& u, const LatticePoint& v) {
    require_same_dim(u, v);
    LatticePoint r = u;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] -= v[i];
    return r;
}

inline LatticePoint operator*(const Int& k, const LatticePoint& u) {
    LatticePoint r = u;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] *= k;
    return r;
}

/// Componentwise u <= v.
inline bool dominates(const LatticePoint& v, const LatticePoint& u) {
    require_same_dim(u, v);
    for (std::size_t i = 0; i < u.dim(); ++i)
        if (v[i] < u[i]) return false;
    return true;
}

/// Componentwise maximum (the join of two translated orthants).
inline LatticePoint join(const LatticePoint& u, const LatticePoint& v) {
    require_same_dim(u, v);
    LatticePoint r = u;
    for (std::size_t i = 0; i < r.dim(); ++i)
        if (v[i] > r[i]) r[i] = v[i];
    return r;
}

/// The weight vector a defining the embedding u -> (a, u) of Z^d into R.
///
/// The coordinates are exact rationals; the induced preorder is totalized by a
/// lexicographic tie break (see a_compare). Strict positivity of every
/// component is required where the vector plays the valuation-weight role
/// (rings, semigroups); halfspace weights only need positivity on the cone.
struct WeightVector {
    std::vector<Rat> w;

    WeightVector() = default;
    explicit WeightVector(std::vector<Rat> weights) : w(std::move(weights)) {}
    WeightVector(std::initializer_list<Rat> weights) : w(weights) {}

    std::size_t dim() const { return w.size(); }
    const Rat& operator[](std::size_t i) const { return w[i]; }
    bool operator==(const WeightVector& o) const = default;

    bool strictly_positive() const {
        for (const Rat& x : w)
            if (x <= 0) return false;
        return !w.empty();
    }

    /// Checked factory for valuation weights (every component > 0).
    static WeightVector positive(std::vector<Rat> weights) {
        WeightVector a(std::move(weights));
        if (!a.strictly_positive())
            throw Error("weight vector must have strictly positive components");
        return a;
    }
};

inline Rat dot(const WeightVector& a, const LatticePoint& u) {
    if (a.dim() != u.dim()) throw DimensionError("weight/point dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < u.dim(); ++i) s += a[i] * Rat(u[i]);
    return s;
}

inline Rat dot(const WeightVector& a, const std::vector<Rat>& x) {
    if (a.dim() != x.size()) throw DimensionError("weight/point dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += a[i] * x[i];
    return s;
}

enum class Ordering { Less, Equal, Greater };

/// Total order on Z^d: compare (a,u) vs (a,v) exactly, break exact ties
/// lexicographically. Equal only when u = v.
Ordering a_compare(const WeightVector& a, const LatticePoint& u, const LatticePoint& v);

/// Half-open box [lo, hi): forward iteration in ascending lexicographic order.
/// Empty whenever some side is non-positive. Single-consumer stream.
class BoxRange {
  public:
    BoxRange(LatticePoint lo, LatticePoint hi);

    class iterator {
      public:
        iterator() = default;  // end
        iterator(const BoxRange* box, bool at_end);
        const LatticePoint& operator*() const { return cur_; }
        iterator& operator++();
        bool operator==(const iterator& o) const { return done_ == o.done_ && (done_ || cur_ == o.cur_); }

      private:
        const BoxRange* box_ = nullptr;
        LatticePoint cur_;
        bool done_ = true;
    };

    iterator begin() const { return iterator(this, empty_); }
    iterator end() const { return iterator(this, true); }

    /// Exact number of lattice points, the product of positive side lengths.
    Int count() const;

    const LatticePoint& lo() const { return lo_; }
    const LatticePoint& hi() const { return hi_; }

  private:
    LatticePoint lo_, hi_;
    bool empty_;
};

inline BoxRange enumerate_box(LatticePoint lo, LatticePoint hi) {
    return BoxRange(std::move(lo), std::move(hi));
}

}  // namespace pbl
