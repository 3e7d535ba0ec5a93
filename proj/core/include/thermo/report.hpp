#pragma once

#include <string>
#include <vector>

namespace thermo {

/// Outcome of a finite-level check of an identity or inequality.
///
/// `slack` is the smallest margin observed (rhs - lhs for inequalities,
/// minus the absolute residual for identities); negative means violated.
struct CheckReport {
    std::string name;
    bool passed = true;
    double slack = 0.0;
    std::vector<std::string> details;

    void record(bool ok, double margin, std::string line)
    {
        if (details.empty() || margin < slack)
            slack = margin;
        passed = passed && ok;
        details.push_back(std::move(line));
    }
};

} // namespace thermo
