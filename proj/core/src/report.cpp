#include "pbl/report.hpp"

namespace pbl {

const Rat& ConvergenceReport::tail_value() const {
    if (rows.empty()) throw Error("empty report has no tail value");
    return rows.back().value;
}

std::pair<Rat, Rat> affine_fit_in_inverse_q(const std::vector<ReportRow>& rows) {
    if (rows.empty()) throw Error("cannot fit an empty sequence");
    const std::size_t n = std::min<std::size_t>(3, rows.size());
    const std::size_t first = rows.size() - n;
    if (n == 1) return {rows.back().value, Rat(0)};

    Rat sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (std::size_t i = first; i < rows.size(); ++i) {
        const Rat x = Rat(1) / Rat(rows[i].q);
        const Rat& y = rows[i].value;
        sx += x;
        sxx += x * x;
        sy += y;
        sxy += x * y;
    }
    const Rat nn = Rat(Int(n));
    const Rat denom = nn * sxx - sx * sx;
    Rat slope = denom == 0 ? Rat(0) : (nn * sxy - sx * sy) / denom;
    Rat limit = (sy - slope * sx) / nn;

    Rat residual = 0;
    for (std::size_t i = first; i < rows.size(); ++i) {
        Rat r = rows[i].value - (limit + slope / Rat(rows[i].q));
        if (r < 0) r = -r;
        residual = std::max(residual, r);
    }
    return {limit, residual};
}

void finalize_report(ConvergenceReport& report) {
    if (report.rows.empty()) {
        report.verdict = Verdict::Inconclusive;
        return;
    }
    auto [limit, residual] = affine_fit_in_inverse_q(report.rows);
    report.extrapolated_limit = limit;
    report.fit_residual = residual;
    if (!report.comparison_target) {
        report.verdict = Verdict::Inconclusive;
        return;
    }
    const Rat& probe = report.compare == CompareMode::Limit ? report.extrapolated_limit
                                                            : report.rows.back().value;
    report.verdict = abs(probe - *report.comparison_target) <= report.tolerance
                         ? Verdict::Pass
                         : Verdict::Fail;
}

}  // namespace pbl
