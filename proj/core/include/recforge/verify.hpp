#pragma once
// Independent certificate checker: re-derives every claim of a certificate
// from raw data with its own arithmetic (no construction code involved).
#include <string>
#include <vector>

#include "recforge/certificate.hpp"

namespace recforge {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed = false;
};

VerifyReport verify_certificate(const Certificate& c);

}  // namespace recforge
