// Experiment drivers: length sequences, the Volume = Multiplicity check and
// the growth-bound diagnostic.
#pragma once

#include "pbl/pbody.hpp"
#include "pbl/report.hpp"
#include "pbl/toric.hpp"

namespace pbl {

/// The halfspace the Volume = Multiplicity run uses: weights from the ring,
/// bound c * (a, v) from find_c, nudged up by 1/P for a prime P > D * p^e_max
/// so that no lattice weight lands on any tested scaled boundary. The nudge
/// leaves every count equal to its strict-inequality value at the un-nudged
/// bound, and boundary points above it are certified staircase members.
TruncatingHalfspace derive_volmult_halfspace(const PFamily& family, int e_max,
                                             const Exec& ex = {});

/// colength(I_q)/q^d per level; the limit extrapolates Vol_R(I_bullet).
ConvergenceReport length_sequence(const PFamily& family, int e_max, const Exec& ex = {});

/// e_HK(I_q)/q^d per level via the independent path: exact complement volume
/// on the regular model, nested stabilized counting otherwise.
ConvergenceReport hk_sequence(const PFamily& family, int e_max, int inner_cap = 6,
                              const Exec& ex = {});

struct VolMultOptions {
    int e_max = 8;
    Rat tolerance = Rat(1, 1000);
    int inner_cap = 6;
    long mc_samples = 100000;
};

struct VolMultResult {
    ConvergenceReport length;  // label <family>.length
    ConvergenceReport hk;      // label <family>.hk
    ConvergenceReport pbody;   // label <family>.pbody
    Rat alpha;                 // the derived halfspace bound
    Verdict verdict = Verdict::Inconclusive;
};

/// Runs the three independent paths of the Volume = Multiplicity statement:
/// lengths, Hilbert-Kunz values, and the p-body decomposition
/// Vol(C n H) - Vol(Delta n H). Passes when all three agree within tolerance.
VolMultResult vol_mult_check(const PFamily& family, const VolMultOptions& opt,
                             const Exec& ex = {});

struct GrowthBound {
    Rat alpha;  // the realized constant
    std::vector<ReportRow> ratios;
    Verdict verdict = Verdict::Inconclusive;
};

/// Realized constants for the bound colength(I^{[q]}) <= alpha q^d: equality
/// with alpha = colength(I) on the regular model, the e = 1 ratio otherwise.
GrowthBound growth_bound_check(const MonomialIdeal& ideal, int e_max,
                               const Exec& ex = {});

}  // namespace pbl
