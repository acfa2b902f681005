#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rsmax/core.hpp"

namespace rsmax {

// One failed check, with enough context to replay it from the seed.
struct Violation {
    std::uint64_t seed = 0;
    ItemSet witness_a;
    ItemSet witness_b;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string note;
};

struct VerificationReport {
    std::string property;
    long long instances_checked = 0;
    long long skipped = 0;
    std::vector<Violation> violations;
    std::vector<std::string> notices;

    bool passed() const { return violations.empty(); }
    void add_violation(Violation v) { violations.push_back(std::move(v)); }
};

void print_report(std::ostream& out, const VerificationReport& r);
void write_report_csv(std::ostream& out, const std::vector<VerificationReport>& reports);

}  // namespace rsmax
