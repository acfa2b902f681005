#pragma once

#include <cstdint>
#include <iosfwd>

#include "rsmax/optimizer.hpp"

namespace rsmax {

// Uniformly samples unselected items, admitting each while rho~(S + x) stays
// within the original budget; stops at the first rejection.
Solution rand_baseline(const Instance& instance, std::uint64_t seed,
                       std::ostream* trace = nullptr);

// Benefit-cost greedy: repeatedly adds argmax f+_X(x) / rho~+_X(x) over items
// still fitting the budget; stops when nothing fits or the best ratio's
// marginal gain is nonpositive. The denominator is clamped at c_min.
Solution rmax_baseline(const Instance& instance, std::ostream* trace = nullptr);

}  // namespace rsmax
