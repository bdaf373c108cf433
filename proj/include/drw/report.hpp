#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace drw {

/// Pass/fail record for one inequality instance. All reports are normalized
/// to the orientation "lhs <= rhs": satisfied iff lhs <= rhs + 1e-9, and
/// margin = rhs - lhs. The bound_id names which theorem/lemma instance the
/// sides came from.
struct BoundReport {
    std::string bound_id;
    std::vector<std::pair<std::string, double>> inputs;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
    double margin = 0.0;
    std::string note;
};

inline constexpr double kBoundSlack = 1e-9;

BoundReport make_report(std::string bound_id,
                        std::vector<std::pair<std::string, double>> inputs, double lhs,
                        double rhs, std::string note = {});

/// CSV columns: bound_id, inputs as "k=v;..." (note folded in), lhs, rhs,
/// margin, satisfied.
void write_reports_csv(std::ostream& out, const std::vector<BoundReport>& reports);

std::string format_double(double x);

} // namespace drw
