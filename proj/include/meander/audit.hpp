#pragma once

#include <limits>
#include <string>
#include <vector>

namespace meander {

// One audited inequality. For inequalities with explicit constants, margin is
// the worst (bound - achieved) over the audited range and pass means it stayed
// non-negative. For bounds that only assert existence of a constant, the
// smallest empirical constant is reported in fitted_c (and mirrored into
// margin), with its stability across the range as a coefficient of variation.
struct AuditCheck {
    std::string id;
    std::string range;
    double margin = 0.0;
    bool pass = false;
    double fitted_c = std::numeric_limits<double>::quiet_NaN();
    double cv = std::numeric_limits<double>::quiet_NaN();
};

using AuditReport = std::vector<AuditCheck>;

} // namespace meander
