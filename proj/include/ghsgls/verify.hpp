#pragma once

#include <string>
#include <vector>

#include "ghsgls/instance.hpp"

namespace ghsgls {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // both sides on failure
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool ok() const;
    std::string format() const;
};

/// Runs, in order: field and curve invariants, subgroup-order facts,
/// [dlog]P = P' on E, [dlog]D = D' on the Jacobian, endomorphism
/// consistency, and the decimal restatement of dlog. Sections absent from
/// the instance are skipped. Never modifies the instance.
VerifyReport verify_instance(const InstanceFile& inst);
VerifyReport verify_fixture(const std::string& path);

}  // namespace ghsgls
