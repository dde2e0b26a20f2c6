// Convergence reports: exact tabulated sequences with an affine 1/q fit.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pbl/numeric.hpp"

namespace pbl {

enum class Verdict { Pass, Fail, Inconclusive };
enum class CompareMode { Limit, Tail };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "inconclusive";
    }
}

struct ReportRow {
    int e = 0;
    Int q = 1;
    Rat value;
};

/// Tabulated sequence values (exact rationals), the extrapolated limit of the
/// affine model L + c/q fitted to the tail, and the pass/fail comparison
/// against a target value at a fixed tolerance.
struct ConvergenceReport {
    std::string label;
    std::vector<ReportRow> rows;
    Rat extrapolated_limit = 0;
    Rat fit_residual = 0;
    std::optional<Rat> comparison_target;
    Rat tolerance = 0;
    CompareMode compare = CompareMode::Limit;
    Verdict verdict = Verdict::Inconclusive;
    std::string note;

    const Rat& tail_value() const;
};

/// Exact least-squares fit of value ~ L + c/q over the last three rows
/// (fewer when the sequence is shorter). Returns the limit L and the maximum
/// absolute residual over the fitted rows.
std::pair<Rat, Rat> affine_fit_in_inverse_q(const std::vector<ReportRow>& rows);

/// Fills extrapolated_limit / fit_residual and evaluates the verdict.
void finalize_report(ConvergenceReport& report);

}  // namespace pbl
