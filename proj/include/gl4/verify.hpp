// Named verification checks, grouped into suites that mirror the library
// modules.  Each check emits one report line `<module>/<anchor> PASS|FAIL
// <detail>`; precision exhaustion propagates as precision_error so callers
// can map it to a distinct exit code.

#pragma once

#include <string>
#include <vector>

#include "gl4/ring.hpp"

namespace gl4 {

struct VerifyConfig {
    long p = 3;
    int m = 2;
    int N = 12;
    int radius = 2;
};

struct CheckResult {
    std::string name;  // <module>/<anchor>
    bool pass = false;
    std::string detail;
};

/// Suite names in fixed execution order (excluding "all").
const std::vector<std::string>& verify_suites();

/// Runs one suite; throws domain_error for an unknown suite name.
/// Individual check failures become FAIL results; precision_error escapes.
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const VerifyConfig& cfg);

/// One formatted report line.
std::string format_check(const CheckResult& r);

}  // namespace gl4
