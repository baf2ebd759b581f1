#pragma once

// Named invariant suites behind `qdh verify`. Each check reruns one of the
// library's structural identities over its full parameter range (or a single
// d when requested) and reports the worst observed error.

#include <optional>
#include <string>
#include <vector>

namespace qdh {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CheckResult> verify_algebra(std::optional<int> only_d = {});
std::vector<CheckResult> verify_dense(std::optional<int> only_d = {});
std::vector<CheckResult> verify_bounds(std::optional<int> only_d = {});
std::vector<CheckResult> verify_lp(std::optional<int> only_d = {});

/// suite in {algebra, dense, bounds, all}; "all" also runs the LP checks.
std::vector<CheckResult> verify_suite(const std::string& suite, std::optional<int> only_d = {});

/// Independent Tikhonov oracle: solves the normal equations (A^T A + I) x =
/// A^T b by Gaussian elimination and evaluates ||x||^2 + ||b - A x||^2.
double tikhonov_normal_oracle(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace qdh
