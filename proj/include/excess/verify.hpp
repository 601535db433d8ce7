#pragma once

#include <string>
#include <vector>

namespace excess {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;  // witness on failure, short summary on success
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
};

// Suites: series, patchworks, identities, asymptotics, appendix.
// `deep` enables the long-running checks (large-n asymptotic convergence).
VerifyReport verify_suite(const std::string& name, bool deep = false);
std::vector<VerifyReport> verify_all(bool deep = false);
std::vector<std::string> verify_suite_names();

}  // namespace excess
