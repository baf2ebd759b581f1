#pragma once

// Closed-form quantities behind the parity upper bound: the decay rate mu_d
// with its spectral ingredients (s, singular vectors of W_d, the c
// coefficients), the Tikhonov closed form, the three-letter Sanov-type tail
// bound with its brute-force oracle, and the dimension optimiser.

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qdh/commutant.hpp"
#include "qdh/errors.hpp"

namespace qdh {

/// Decay rate mu_d in (sqrt(3/8), 1]; mu_2 = 1, monotonically decreasing,
/// asymptote sqrt(3/8). The radicand is clamped at zero before the square
/// root to absorb rounding at d = 2.
double mu(Dim d);

/// Closed-form singular structure of W_d: singular values (1, 1, sqrt(s),
/// 1/sqrt(s)) with right vectors v = (u1, u2, u4, u3).
struct SpectralData {
    int d = 0;
    double s = 0.0;
    std::array<double, 4> singular_values{};
    std::array<std::array<double, 4>, 4> u{};
    std::array<std::array<double, 4>, 4> v{};
};

SpectralData spectral(Dim d);

/// c2 = (rbar.u1)^2 + (rbar.u2)^2, c3 = (rbar.u3)^2, c4 = (rbar.u4)^2;
/// they satisfy c2+c3+c4 = ||rbar||^2, s = c3/c4 and mu^2 = 4(c2+2 sqrt(c3 c4)).
struct CCoeffs {
    double c2 = 0.0, c3 = 0.0, c4 = 0.0;
};

CCoeffs c_coeffs(Dim d);

/// inf_x ||x||^2 + ||b - A x||^2 = sum_i (u_i . b)^2 / (1 + sigma_i^2),
/// evaluated through the eigendecomposition of A A^T.
double tikhonov_value(const std::vector<double>& a, const std::vector<double>& b);

/// (q1 + 2 sqrt(q2 q3))^k; requires q to be a probability vector with q2 < q3.
double sanov_bound(const std::array<double, 3>& q, int k);

/// Exact Pr[#2's >= #3's among k draws] by enumerating all 3^k strings
/// (k <= 12). Never exceeds sanov_bound when q2 < q3.
double empirical_tail_oracle(const std::array<double, 3>& q, int k);

/// 2 mu_d^k, the parity upper bound on the discrimination bias.
double parity_upper_bound(Dim d, int k);

/// Per-(d,k) summary combining the exact LP value with the analytic bounds.
struct BoundReport {
    int d = 0, k = 0;
    std::optional<double> ppt_value;
    double mu = 0.0;
    double upper = 0.0;                  // 2 mu^k
    std::optional<double> locc_lower;    // 1/2 - 1/d, k = 1 only
    std::optional<double> witness;       // 1/2 + 1/d, k = 1 only
};

BoundReport bound_report(Dim d, int k, std::optional<double> ppt_value);

/// Output of the dimension search for a target error eps.
struct DimResult {
    double eps = 0.0;
    int d_star = 0;
    int k_star = 0;
    mpz_class D;           // d_star^k_star
    double closed_bound = 0.0;  // 40 (2/eps)^10
    double converse = 0.0;      // 1/2 + 1/(2 eps)
};

/// Minimises the achievable local dimension d^k with 2 mu_d^k <= eps. The
/// base is chosen by minimising the eps-free exponent log d / log(1/mu_d)
/// over d in [3, d_max] (d = 2 is excluded since mu_2 = 1); the attained
/// minimum is d = 40 with exponent below 10.
DimResult dim_for_eps(double eps, int d_max = 200);

/// Rows (d, mu_d) for d in [d_min, d_max].
std::vector<std::pair<int, double>> fig1_data(int d_min, int d_max);

/// Indices d (if any) where the emitted table fails to strictly decrease.
std::vector<int> mu_monotonicity_violations(const std::vector<std::pair<int, double>>& table);

/// CSV with header "d,mu", one row per d, 17 significant digits, LF endings.
void write_mu_csv(const std::vector<std::pair<int, double>>& table, std::ostream& os);

}  // namespace qdh
