#include "drw/report.hpp"

#include <cstdio>
#include <ostream>

namespace drw {

BoundReport make_report(std::string bound_id,
                        std::vector<std::pair<std::string, double>> inputs, double lhs,
                        double rhs, std::string note) {
    BoundReport r;
    r.bound_id = std::move(bound_id);
    r.inputs = std::move(inputs);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.satisfied = lhs <= rhs + kBoundSlack;
    r.note = std::move(note);
    return r;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_reports_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
    out << "bound_id,inputs,lhs,rhs,margin,satisfied\n";
    for (const auto& r : reports) {
        out << r.bound_id << ',';
        bool first = true;
        for (const auto& [key, value] : r.inputs) {
            if (!first) out << ';';
            out << key << '=' << format_double(value);
            first = false;
        }
        if (!r.note.empty()) {
            if (!first) out << ';';
            out << "note=" << r.note;
        }
        out << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
            << format_double(r.margin) << ',' << (r.satisfied ? "true" : "false") << '\n';
    }
}

} // namespace drw
