#include "pbl/lattice.hpp"

namespace pbl {

Ordering a_compare(const WeightVector& a, const LatticePoint& u, const LatticePoint& v) {
    if (u.dim() != v.dim() || a.dim() != u.dim())
        throw DimensionError("a_compare: dimension mismatch");
    const Rat wu = dot(a, u);
    const Rat wv = dot(a, v);
    if (wu < wv) return Ordering::Less;
    if (wu > wv) return Ordering::Greater;
    if (u.c < v.c) return Ordering::Less;
    if (v.c < u.c) return Ordering::Greater;
    return Ordering::Equal;
}

BoxRange::BoxRange(LatticePoint lo, LatticePoint hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    require_same_dim(lo_, hi_);
    if (lo_.dim() == 0) throw DimensionError("box dimension must be >= 1");
    empty_ = false;
    for (std::size_t i = 0; i < lo_.dim(); ++i)
        if (lo_[i] >= hi_[i]) empty_ = true;
}

BoxRange::iterator::iterator(const BoxRange* box, bool at_end) : box_(box), done_(at_end) {
    if (!done_) cur_ = box_->lo();
}

BoxRange::iterator& BoxRange::iterator::operator++() {
    if (done_) return *this;
    // odometer, last coordinate fastest
    for (std::size_t k = cur_.dim(); k-- > 0;) {
        if (++cur_[k] < box_->hi()[k]) return *this;
        cur_[k] = box_->lo()[k];
    }
    done_ = true;
    return *this;
}

Int BoxRange::count() const {
    if (empty_) return 0;
    Int n = 1;
    for (std::size_t i = 0; i < lo_.dim(); ++i) n *= hi_[i] - lo_[i];
    return n;
}

}  // namespace pbl
