// Monomial-ideal model over power-series and semigroup rings: colengths,
// Frobenius powers, p-families and Hilbert-Kunz multiplicities.
#pragma once

#include <functional>
#include <memory>

#include "pbl/counting.hpp"
#include "pbl/report.hpp"
#include "pbl/semigroup.hpp"

namespace pbl {

struct NotMPrimaryError : Error {
    using Error::Error;
};

class ToricRing;
using RingPtr = std::shared_ptr<const ToricRing>;

/// K[[S]] with a prime p and the monomial valuation weights of the parent
/// semigroup. Regular exactly when S = N^d.
class ToricRing {
  public:
    const StandardSemigroup& semigroup() const { return *s_; }
    SemigroupPtr semigroup_ptr() const { return s_; }
    const Int& prime() const { return p_; }
    std::size_t dim() const { return s_->dim(); }
    const WeightVector& weights() const { return s_->witness(); }
    bool regular() const { return s_->regular(); }
    Int q_of(int e) const { return ipow(p_, unsigned(e)); }

    friend RingPtr make_toric_ring(SemigroupPtr s, Int p);

  private:
    ToricRing(SemigroupPtr s, Int p) : s_(std::move(s)), p_(std::move(p)) {}
    SemigroupPtr s_;
    Int p_;
};

RingPtr make_toric_ring(SemigroupPtr s, Int p);

/// Regular model of dimension d: K[[x_1..x_d]] with the unit-vector semigroup.
RingPtr make_regular_ring(std::size_t d, Int p,
                          std::optional<WeightVector> a = std::nullopt);

/// Monomial ideal represented by its staircase (the valuation image),
/// minimalized on construction.
class MonomialIdeal {
  public:
    MonomialIdeal(RingPtr ring, std::vector<LatticePoint> staircase_gens);

    const ToricRing& ring() const { return *ring_; }
    RingPtr ring_ptr() const { return ring_; }
    const SemigroupIdeal& staircase() const { return staircase_; }
    const std::vector<LatticePoint>& generators() const {
        return staircase_.generators();
    }

  private:
    RingPtr ring_;
    SemigroupIdeal staircase_;
};

/// The maximal ideal: staircase generated by the semigroup generators.
MonomialIdeal maximal_ideal(RingPtr ring);

/// m-primality evidence: either the pure-power box (regular model) or an
/// exact weight bound such that every S-point at or above it lies in the
/// staircase (general model, found by bounded multiple search).
struct MPrimality {
    bool ok = false;
    std::string reason;
    std::vector<Int> box;  // regular model
    Rat weight_bound = 0;  // general model: complement weights are < bound
};
MPrimality m_primality(const MonomialIdeal& ideal, Int multiple_cap = Int(1) << 14);

/// Exact colength #(S \ staircase) = length of R/I in the monomial model.
/// Throws NotMPrimaryError when the complement is not certifiably finite.
Int colength(const MonomialIdeal& ideal, const Exec& ex = {});

/// Complement enumeration summary (count, maximal weight, witness points).
ComplementSummary staircase_complement(const MonomialIdeal& ideal,
                                       bool collect_points = false,
                                       const Exec& ex = {});

/// Staircase generated by q * t over the generators; equals the image of the
/// q-th Frobenius power in this model. q must be a power of p.
MonomialIdeal frobenius_power(const MonomialIdeal& ideal, const Int& q);

/// Staircase generated by all n-fold sums of generators.
MonomialIdeal ordinary_power(const MonomialIdeal& ideal, const Int& n);

/// J_q = { b : floor(b/q) in staircase(I) } for the regular model; its
/// generators are q * t, which makes it coincide with the Frobenius power.
MonomialIdeal cartier_contraction(const MonomialIdeal& ideal, const Int& q);

/// Definitional membership route for the contraction, exposed for testing.
bool cartier_floor_member(const MonomialIdeal& ideal, const Int& q,
                          const LatticePoint& b);

/// Exact-mode Hilbert-Kunz multiplicity on the regular model: the continuous
/// staircase-complement volume (independent of all lattice counting).
Rat e_hk_exact(const MonomialIdeal& ideal);

/// Counting-mode sequence colength(I^{[p^e]}) / p^{ed}, optionally stopping
/// once two consecutive values agree exactly.
ConvergenceReport e_hk_counting(const MonomialIdeal& ideal, int e_max,
                                bool stop_when_stable = false, const Exec& ex = {});

enum class FamilyKind { Frobenius, Power, Cartier, Custom };

inline const char* to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::Frobenius: return "frobenius";
        case FamilyKind::Power: return "power";
        case FamilyKind::Cartier: return "cartier";
        default: return "custom";
    }
}

/// A rule e -> I_{p^e} with lazy level cache. The defining axiom
/// I_q^{[p]} inside I_{pq} is checked by validate_family.
class PFamily {
  public:
    using Rule = std::function<MonomialIdeal(int e)>;

    PFamily(RingPtr ring, FamilyKind kind, Rule rule, std::string name);

    const ToricRing& ring() const { return *ring_; }
    RingPtr ring_ptr() const { return ring_; }
    FamilyKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    Int q_of(int e) const { return ring_->q_of(e); }

    const MonomialIdeal& level(int e) const;

    /// The semigroup-side shadow {theta(I_q)} as a p-system.
    std::shared_ptr<const PSystem> staircase_system() const;

  private:
    struct Cache {
        std::map<int, std::shared_ptr<const MonomialIdeal>> levels;
        std::mutex mutex;
    };
    RingPtr ring_;
    FamilyKind kind_;
    Rule rule_;
    std::string name_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

PFamily make_frobenius_family(const MonomialIdeal& base);
/// I_q = base^(ceil(t q)) for a positive rational t.
PFamily make_power_family(const MonomialIdeal& base, const Rat& t);
PFamily make_cartier_family(const MonomialIdeal& base);
/// I_q = base^(q^k); k >= 2 violates the family axiom (used as a crafted
/// counterexample).
PFamily make_qpower_family(const MonomialIdeal& base, unsigned k);
/// Regular model: I_q = (x_i^(ceil(t_i q)) per axis); the two-corner systems.
PFamily make_corner_family(RingPtr ring, const std::vector<Rat>& t);
PFamily make_custom_family(RingPtr ring, PFamily::Rule rule, std::string name);

struct FamilyValidation {
    bool ok = true;
    int violation_e = -1;
    LatticePoint witness;  // p * staircase generator escaping the next level
    std::string detail;
};

/// Checks the p-family axiom on staircase generators for every e < e_max.
FamilyValidation validate_family(const PFamily& family, int e_max);

struct FindC {
    int c = 1;
    LatticePoint v;        // maximal-weight semigroup generator (Ex 3.3 vector)
    int witness_e = 0;     // level where c-1 fails
    Int witness_q = 1;
    LatticePoint witness_point;  // staircase gap at weight >= (c-1) q (a,v)
};

/// Least integer c with: every S-point of weight >= c q (a,v) lies in
/// theta(I_q), for all q = p^e with e <= e_max. Certified on the maximal
/// staircase gaps; also returns a witness gap point for c - 1.
FindC find_c(const PFamily& family, int e_max, const Exec& ex = {});

}  // namespace pbl
