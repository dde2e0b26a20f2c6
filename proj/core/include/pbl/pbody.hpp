// p-bodies: level regions, scaled counting and the two limit experiments.
#pragma once

#include <memory>

#include "pbl/counting.hpp"
#include "pbl/report.hpp"
#include "pbl/semigroup.hpp"
#include "pbl/volume.hpp"

namespace pbl {

/// The p-body of a p-system: the ascending union over e of the level regions
/// Delta_q = (1/q) T_q + Cone(S). Levels are cached as scaled corner lists.
class PBody {
  public:
    explicit PBody(std::shared_ptr<const PSystem> system);

    const PSystem& system() const { return *system_; }
    std::shared_ptr<const PSystem> system_ptr() const { return system_; }

    struct Level {
        Int q;
        std::vector<std::vector<Rat>> corners;  // T_q generators divided by q
    };
    const Level& level(int e) const;

  private:
    std::shared_ptr<const PSystem> system_;
    mutable std::map<int, Level> cache_;
    mutable std::mutex mutex_;
};

/// Exact test x in Delta_{p^e}: q x lands in t + Cone(S) for some generator.
bool delta_q_membership(const PBody& body, int e, const std::vector<Rat>& x);

/// #(T_q n qH) by bounding-box enumeration with the batched membership sweep;
/// the scaled halfspace bound is q * alpha.
Int count_scaled(const SemigroupIdeal& t_q, const Int& q, const TruncatingHalfspace& h,
                 const Exec& ex = {});

/// Volume of Delta_{p^{e_cap}} n H. Exact when Cone(S) is the nonnegative
/// orthant and the exact path is feasible; seeded Monte Carlo otherwise.
VolumeValue pbody_truncated_volume(const PBody& body, const TruncatingHalfspace& h,
                                   int e_cap, long mc_samples = 100000,
                                   const Exec& ex = {});

struct Limit317Options {
    int e_min = 0;
    int e_max = 8;
    Rat tolerance = Rat(1, 1000);
    CompareMode compare = CompareMode::Limit;
    long mc_samples = 100000;
};

/// Tabulates #(T_q n qH)/q^d, extrapolates the limit and compares it with the
/// p-body volume at the largest level.
ConvergenceReport limit_check_3_17(const PBody& body, const TruncatingHalfspace& h,
                                   const Limit317Options& opt, const Exec& ex = {});

struct FujitaRow {
    int e = 0;
    Int q = 1;
    VolumeValue inner_volume;  // Vol((1/q) T_q + C n H), the inner e-limit
};

struct FujitaLadder {
    std::optional<Int> q0;  // least q' with inner volume >= Vol(Delta n H) - eps
    std::optional<int> e0;
    VolumeValue delta_volume;  // level e_max approximation of Vol(Delta n H)
    Rat epsilon;
    std::vector<FujitaRow> rows;
    bool monotone_certified = false;  // exact level volumes were nondecreasing
};

/// The approximation ladder: for ascending q' the auxiliary system
/// {p^e T_q' + S} has inner limit Vol((1/q') T_q' + C n H); returns the least
/// q' clearing Vol(Delta n H) - epsilon together with the full table.
FujitaLadder fujita_check(const PBody& body, const TruncatingHalfspace& h,
                          const Rat& epsilon, int e_max, long mc_samples = 100000,
                          const Exec& ex = {});

}  // namespace pbl
