#include "rsmax/report.hpp"

#include <ostream>

namespace rsmax {

namespace {

void print_set(std::ostream& out, const ItemSet& s) {
    out << "{";
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
    out << "}";
}

}  // namespace

void print_report(std::ostream& out, const VerificationReport& r) {
    out << "property: " << r.property << "\n"
        << "  checked: " << r.instances_checked;
    if (r.skipped > 0) out << "  skipped: " << r.skipped;
    out << "\n  result: " << (r.passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& n : r.notices) out << "  notice: " << n << "\n";
    for (const auto& v : r.violations) {
        out << "  violation: seed=" << v.seed << " A=";
        print_set(out, v.witness_a);
        out << " B=";
        print_set(out, v.witness_b);
        out << " lhs=" << v.lhs << " rhs=" << v.rhs;
        if (!v.note.empty()) out << " (" << v.note << ")";
        out << "\n";
    }
}

void write_report_csv(std::ostream& out, const std::vector<VerificationReport>& reports) {
    out << "property,seed,pass,lhs,rhs\n";
    out.precision(17);
    for (const auto& r : reports) {
        if (r.passed()) {
            out << r.property << ",,1,,\n";
        } else {
            for (const auto& v : r.violations)
                out << r.property << "," << v.seed << ",0," << v.lhs << "," << v.rhs << "\n";
        }
    }
}

}  // namespace rsmax
