#include "qdh/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "qdh/bounds.hpp"
#include "qdh/commutant.hpp"
#include "qdh/dense.hpp"
#include "qdh/lp.hpp"

namespace qdh {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

std::vector<int> d_range(int lo, int hi, std::optional<int> only_d) {
    std::vector<int> out;
    if (only_d) {
        if (*only_d >= lo && *only_d <= hi) out.push_back(*only_d);
        return out;
    }
    for (int d = lo; d <= hi; ++d) out.push_back(d);
    return out;
}

std::vector<double> random_coeffs(std::mt19937_64& rng, std::size_t len) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> c(len);
    for (double& v : c) v = uni(rng);
    return c;
}

double trace_product_raw(const std::vector<double>& x, const std::vector<double>& y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc += x[i * n + j] * y[j * n + i];
    return acc;
}

}  // namespace

std::vector<CheckResult> verify_algebra(std::optional<int> only_d) {
    std::vector<CheckResult> out;

    {
        double worst = 0.0;
        for (int d : d_range(2, 200, only_d)) {
            const auto w = pt_matrix<double>(Dim(d));
            for (int i = 0; i < 4; ++i) {
                double colsum = 0.0;
                for (int j = 0; j < 4; ++j) {
                    double e = 0.0;
                    for (int l = 0; l < 4; ++l) e += w(i, l) * w(l, j);
                    worst = std::max(worst, std::fabs(e - (i == j ? 1.0 : 0.0)));
                    colsum += w(j, i);
                }
                worst = std::max(worst, std::fabs(colsum - 1.0));
            }
        }
        out.push_back({"algebra/pt-matrix-involution-column-sums", worst <= 1e-12,
                       fmt("max error %.3g (tol 1e-12)", worst)});
    }

    {
        // Unit-scale coordinates up to the dense cutoff; trace-normalised
        // operators over the full range (||W_d||_inf^k reaches 3e8 at d=50,
        // k=5, which no double round trip survives at unit scale).
        std::mt19937_64 rng(7001);
        double worst = 0.0;
        for (int d : d_range(2, 50, only_d))
            for (int k = 1; k <= 5; ++k) {
                std::vector<std::vector<double>> ops;
                if (d <= 12) ops.push_back(random_coeffs(rng, kernels::pow4(k)));
                std::vector<double> state = random_coeffs(rng, kernels::pow4(k));
                for (double& v : state) v = std::fabs(v);
                CommutantOp<double> tmp(Dim(d), k, state);
                const double tr = trace_of(tmp);
                for (double& v : state) v /= tr;
                ops.push_back(std::move(state));
                for (auto& coeffs : ops) {
                    CommutantOp<double> x(Dim(d), k, std::move(coeffs));
                    const CommutantOp<double> y = apply_pt(apply_pt(x));
                    for (std::size_t i = 0; i < x.coeffs.size(); ++i)
                        worst = std::max(worst, std::fabs(y.coeffs[i] - x.coeffs[i]));
                }
            }
        out.push_back({"algebra/apply-pt-involution", worst <= 1e-10,
                       fmt("max error %.3g (tol 1e-10)", worst)});
    }

    {
        double worst = 0.0, worst_neg = 0.0;
        for (int d : d_range(2, 50, only_d)) {
            if (!only_d && d != 2 && d != 3 && d != 5 && d != 10 && d != 50) continue;
            for (int k = 1; k <= 5; ++k) {
                const auto [rho0, rho1] = even_odd<double>(Dim(d), k);
                const auto [s0, s1] = sigma_pair<double>(Dim(d));
                std::array<double, 4> half_diff;
                for (int i = 0; i < 4; ++i)
                    half_diff[std::size_t(i)] =
                        (s0.coeffs[std::size_t(i)] - s1.coeffs[std::size_t(i)]) / 2.0;
                const std::vector<double> expect = kernels::tensor_pow(half_diff, k);
                for (std::size_t i = 0; i < expect.size(); ++i) {
                    const double got = (rho0.coeffs[i] - rho1.coeffs[i]) / 2.0;
                    worst = std::max(worst, std::fabs(got - expect[i]));
                    worst_neg = std::max(worst_neg, -std::min(rho0.coeffs[i], rho1.coeffs[i]));
                }
                worst = std::max(worst, std::fabs(trace_of(rho0) - 1.0));
                worst = std::max(worst, std::fabs(trace_of(rho1) - 1.0));
            }
        }
        out.push_back({"algebra/even-odd-identities", worst <= 1e-12 && worst_neg <= 1e-15,
                       fmt("max error %.3g, worst negative coeff %.3g", worst, worst_neg)});
    }

    {
        std::mt19937_64 rng(7002);
        double worst = 0.0;
        for (int d : d_range(2, 5, only_d))
            for (int k = 1; k <= 2; ++k)
                for (int rep = 0; rep < 3; ++rep) {
                    CommutantOp<double> x(Dim(d), k, random_coeffs(rng, kernels::pow4(k)));
                    CommutantOp<double> y(Dim(d), k, random_coeffs(rng, kernels::pow4(k)));
                    const auto dx = dense_from_coeffs(Dim(d), k, x.coeffs);
                    const auto dy = dense_from_coeffs(Dim(d), k, y.coeffs);
                    std::size_t n = 1;
                    for (int j = 0; j < k; ++j) n *= std::size_t(d) * std::size_t(d);
                    const double dense_tr = trace_product_raw(dx, dy, n);
                    worst = std::max(worst, std::fabs(trace_pair(x, y) - dense_tr));
                }
        out.push_back({"algebra/trace-pair-dense-oracle", worst <= 1e-9,
                       fmt("max error %.3g (tol 1e-9)", worst)});
    }

    {
        double worst = 0.0;
        bool exact_ok = true;
        for (int d : d_range(2, 50, only_d)) {
            const auto [s0, s1] = sigma_pair<double>(Dim(d));
            worst = std::max(worst, std::fabs(trace_pair(s0, s1)));
            if (d <= 20) {
                const auto [r0, r1] = sigma_pair<Rational>(Dim(d));
                if (trace_pair(r0, r1) != 0) exact_ok = false;
            }
        }
        out.push_back({"algebra/sigma-orthogonality", worst <= 1e-14 && exact_ok,
                       fmt("float residue %.3g, rational exact: %g", worst, exact_ok ? 1 : 0)});
    }

    return out;
}

std::vector<CheckResult> verify_dense(std::optional<int> only_d) {
    std::vector<CheckResult> out;

    {
        std::mt19937_64 rng(7101);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        double worst = 0.0;
        for (int d : d_range(2, kGroupCutoff, only_d))
            for (int rep = 0; rep < 20; ++rep) {
                DenseOp x = dense_zero(d);
                for (int i = 0; i < x.side; ++i)
                    for (int j = i; j < x.side; ++j) x.at(i, j) = x.at(j, i) = uni(rng);
                const DenseOp a = twirl_exact(x);
                const DenseOp b = twirl_closed_form(x);
                for (std::size_t i = 0; i < a.a.size(); ++i)
                    worst = std::max(worst, std::fabs(a.a[i] - b.a[i]));
            }
        out.push_back({"dense/twirl-matches-closed-form", worst <= 1e-10,
                       fmt("max error %.3g (tol 1e-10)", worst)});
    }

    {
        double worst = 0.0;
        for (int d : d_range(2, 8, only_d)) {
            const auto th = build_projectors(Dim(d));
            const auto ranks = theta_ranks(Dim(d));
            DenseOp sum = dense_zero(d);
            for (int i = 0; i < 4; ++i) {
                const DenseOp sq = dense_matmul(th[std::size_t(i)], th[std::size_t(i)]);
                for (std::size_t e = 0; e < sq.a.size(); ++e)
                    worst = std::max(worst, std::fabs(sq.a[e] - th[std::size_t(i)].a[e]));
                worst = std::max(worst,
                                 std::fabs(dense_trace(th[std::size_t(i)]) - double(ranks[std::size_t(i)])));
                for (int j = i + 1; j < 4; ++j)
                    worst = std::max(worst, dense_max_abs(dense_matmul(th[std::size_t(i)],
                                                                       th[std::size_t(j)])));
                sum = dense_add(sum, th[std::size_t(i)]);
            }
            const DenseOp id = dense_identity(d);
            for (std::size_t e = 0; e < sum.a.size(); ++e)
                worst = std::max(worst, std::fabs(sum.a[e] - id.a[e]));
        }
        out.push_back({"dense/projector-algebra", worst <= 1e-12,
                       fmt("max error %.3g (tol 1e-12)", worst)});
    }

    {
        std::mt19937_64 rng(7102);
        double worst = 0.0;
        for (int d : d_range(2, 8, only_d)) {
            for (int rep = 0; rep < 5; ++rep) {
                CommutantOp<double> c(Dim(d), 1, random_coeffs(rng, 4));
                const DenseOp lhs = dense_from_commutant(apply_pt(c));
                const DenseOp rhs = partial_transpose(dense_from_commutant(c));
                for (std::size_t e = 0; e < lhs.a.size(); ++e)
                    worst = std::max(worst, std::fabs(lhs.a[e] - rhs.a[e]));
            }
            const auto [s0, s1] = build_states(Dim(d));
            for (const DenseOp& s : {s0, s1}) {
                const DenseOp pt = partial_transpose(s);
                for (std::size_t e = 0; e < s.a.size(); ++e)
                    worst = std::max(worst, std::fabs(pt.a[e] - s.a[e]));
            }
        }
        out.push_back({"dense/pt-coordinate-action", worst <= 1e-10,
                       fmt("max error %.3g (tol 1e-10)", worst)});
    }

    {
        bool ok = true;
        std::string detail;
        for (int d : d_range(2, 4, only_d)) {
            const std::int64_t num = character_sum_numerator(Dim(d));
            const std::int64_t ord = group_order(Dim(d));
            if (num != 4 * ord) ok = false;
            detail += fmt("d=%g:%g ", double(d), double(num) / double(ord));
        }
        out.push_back({"dense/character-sum-4", ok, detail.empty() ? "no d in range" : detail});
    }

    {
        double worst = 0.0;
        bool psd = true;
        for (int d : d_range(2, 8, only_d)) {
            const auto [value, ok] = witness_value(Dim(d));
            psd = psd && ok;
            worst = std::max(worst, std::fabs(value - (0.5 + 1.0 / d)));
            worst = std::max(worst, std::fabs(basis_measurement_bias(Dim(d)) - (0.5 - 1.0 / d)));
        }
        out.push_back({"dense/witness-and-basis-bias", psd && worst <= 1e-12,
                       fmt("max value error %.3g, psd_ok %g", worst, psd ? 1 : 0)});
    }

    {
        double worst = 0.0;
        for (int d : d_range(2, kGroupCutoff, only_d)) {
            const auto [s0, s1] = build_states(Dim(d));
            DenseOp ee = dense_zero(d);
            for (int i = 0; i < ee.side; ++i)
                for (int j = 0; j < ee.side; ++j) ee.at(i, j) = 1.0 / double(d * d);
            DenseOp pm = dense_zero(d);
            std::vector<double> vp(std::size_t(d), 0.0), vm(std::size_t(d), 0.0);
            vp[0] = vp[1] = 1.0 / std::sqrt(2.0);
            vm[0] = 1.0 / std::sqrt(2.0);
            vm[1] = -vm[0];
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    for (int p = 0; p < d; ++p)
                        for (int q = 0; q < d; ++q)
                            pm.at(i * d + j, p * d + q) =
                                vp[std::size_t(i)] * vm[std::size_t(j)] * vp[std::size_t(p)] *
                                vm[std::size_t(q)];
            const DenseOp t0 = twirl_exact(ee);
            const DenseOp t1 = twirl_exact(pm);
            for (std::size_t e = 0; e < t0.a.size(); ++e) {
                worst = std::max(worst, std::fabs(t0.a[e] - s0.a[e]));
                worst = std::max(worst, std::fabs(t1.a[e] - s1.a[e]));
            }
        }
        out.push_back({"dense/twirl-product-states", worst <= 1e-10,
                       fmt("max error %.3g (tol 1e-10)", worst)});
    }

    return out;
}

double tikhonov_normal_oracle(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = b.size();
    // M = A^T A + I, rhs = A^T b
    std::vector<double> m(n * n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < n; ++l) acc += a[l * n + i] * a[l * n + j];
            m[i * n + j] = acc + (i == j ? 1.0 : 0.0);
        }
        double acc = 0.0;
        for (std::size_t l = 0; l < n; ++l) acc += a[l * n + i] * b[l];
        rhs[i] = acc;
    }
    // Gaussian elimination with partial pivoting
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(m[r * n + col]) > std::fabs(m[piv * n + col])) piv = r;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[col * n + j]);
            std::swap(rhs[piv], rhs[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = m[r * n + col] / m[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) m[r * n + j] -= f * m[col * n + j];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= m[i * n + j] * x[j];
        x[i] = acc / m[i * n + i];
    }
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) value += x[i] * x[i];
    for (std::size_t i = 0; i < n; ++i) {
        double res = b[i];
        for (std::size_t j = 0; j < n; ++j) res -= a[i * n + j] * x[j];
        value += res * res;
    }
    return value;
}

std::vector<CheckResult> verify_bounds(std::optional<int> only_d) {
    std::vector<CheckResult> out;

    {
        double worst_recon = 0.0, worst_gram = 0.0;
        for (int d : d_range(2, 100, only_d)) {
            const SpectralData sp = spectral(Dim(d));
            const auto w = pt_matrix<double>(Dim(d));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double e = 0.0;
                    for (int l = 0; l < 4; ++l)
                        e += sp.singular_values[std::size_t(l)] * sp.u[std::size_t(l)][std::size_t(i)] *
                             sp.v[std::size_t(l)][std::size_t(j)];
                    worst_recon = std::max(worst_recon, std::fabs(e - w(i, j)));
                    double g = 0.0;
                    for (int l = 0; l < 4; ++l)
                        g += sp.u[std::size_t(i)][std::size_t(l)] * sp.u[std::size_t(j)][std::size_t(l)];
                    worst_gram = std::max(worst_gram, std::fabs(g - (i == j ? 1.0 : 0.0)));
                }
        }
        out.push_back({"bounds/svd-reconstruction", worst_recon <= 1e-10 && worst_gram <= 1e-12,
                       fmt("recon %.3g (tol 1e-10), gram %.3g (tol 1e-12)", worst_recon, worst_gram)});
    }

    {
        double worst_s = 0.0, worst_mu = 0.0;
        for (int d : d_range(2, 100, only_d)) {
            const SpectralData sp = spectral(Dim(d));
            const CCoeffs c = c_coeffs(Dim(d));
            worst_s = std::max(worst_s, std::fabs(sp.s - c.c3 / c.c4) / sp.s);
            const double m = mu(Dim(d));
            worst_mu = std::max(worst_mu,
                                std::fabs(m * m - 4.0 * (c.c2 + 2.0 * std::sqrt(c.c3 * c.c4))));
        }
        out.push_back({"bounds/identity-chain", worst_s <= 1e-10 && worst_mu <= 1e-10,
                       fmt("rel s error %.3g, mu^2 error %.3g (tol 1e-10)", worst_s, worst_mu)});
    }

    {
        double worst = 0.0;
        for (int d : d_range(2, 100, only_d)) {
            const auto w = pt_matrix<double>(Dim(d));
            const auto [r, rbar] = r_vectors<double>(Dim(d));
            for (int i = 0; i < 4; ++i) {
                double e = 0.0;
                for (int j = 0; j < 4; ++j) e += w(i, j) * rbar[std::size_t(j)];
                worst = std::max(worst, std::fabs(e - rbar[std::size_t(i)]));
            }
        }
        out.push_back({"bounds/rbar-fixed-point", worst <= 1e-12,
                       fmt("max error %.3g (tol 1e-12)", worst)});
    }

    {
        std::mt19937_64 rng(7201);
        std::uniform_real_distribution<double> uni(-2.0, 2.0);
        std::uniform_int_distribution<int> dim(2, 6);
        double worst = 0.0;
        for (int rep = 0; rep < 100; ++rep) {
            const std::size_t n = std::size_t(dim(rng));
            std::vector<double> a(n * n), b(n);
            for (double& v : a) v = uni(rng);
            for (double& v : b) v = uni(rng);
            const double closed = tikhonov_value(a, b);
            const double oracle = tikhonov_normal_oracle(a, b);
            worst = std::max(worst, std::fabs(closed - oracle) / std::max(1.0, std::fabs(oracle)));
        }
        out.push_back({"bounds/tikhonov-closed-form", worst <= 1e-9,
                       fmt("max rel error %.3g (tol 1e-9)", worst)});
    }

    {
        std::mt19937_64 rng(7202);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::uniform_int_distribution<int> kk(1, 10);
        bool ok = true;
        double margin = 1e300;
        for (int rep = 0; rep < 50; ++rep) {
            double q1 = uni(rng), q2 = uni(rng), q3 = uni(rng);
            const double s = q1 + q2 + q3;
            q1 /= s;
            q2 /= s;
            q3 /= s;
            if (!(q2 < q3)) std::swap(q2, q3);
            if (q2 == q3) continue;
            const int k = kk(rng);
            const double bound = sanov_bound({q1, q2, q3}, k);
            const double oracle = empirical_tail_oracle({q1, q2, q3}, k);
            if (oracle > bound + 1e-12) ok = false;
            margin = std::min(margin, bound - oracle);
        }
        out.push_back({"bounds/sanov-domination", ok, fmt("min margin %.3g", margin)});
    }

    {
        const auto table = fig1_data(2, 1000);
        const auto bad = mu_monotonicity_violations(table);
        const double m2 = mu(Dim(2));
        const double m3 = mu(Dim(3));
        const double tail = std::fabs(mu(Dim(1000000)) - std::sqrt(3.0 / 8.0));
        const bool ok = bad.empty() && m2 == 1.0 && std::fabs(m3 - 0.993) <= 1e-3 && tail <= 1e-3;
        out.push_back({"bounds/mu-profile", ok,
                       fmt("monotone violations %g, asymptote gap %.3g", double(bad.size()), tail)});
    }

    return out;
}

std::vector<CheckResult> verify_lp(std::optional<int> only_d) {
    std::vector<CheckResult> out;

    {
        double worst = 0.0;
        for (int d : d_range(2, 10, only_d)) {
            if (d != 2 && d != 3 && d != 5 && d != 10) continue;
            for (int k = 1; k <= 3; ++k)
                worst = std::max(worst, ScalarTraits<double>::to_double(
                                            ppt_norm<double>(Dim(d), k).gap));
        }
        out.push_back({"lp/strong-duality", worst <= 1e-7, fmt("max gap %.3g (tol 1e-7)", worst)});
    }

    {
        double worst = 0.0;
        bool exact_ok = true;
        for (int d : d_range(2, 30, only_d)) {
            const auto res = ppt_norm<double>(Dim(d), 1);
            worst = std::max(worst, std::fabs(res.value - (0.5 + 1.0 / d)));
            if (d <= 10) {
                const auto rres = ppt_norm<Rational>(Dim(d), 1);
                Rational expect(d + 2, 2 * d);
                expect.canonicalize();
                if (rres.value != expect || rres.gap != 0) exact_ok = false;
            }
        }
        out.push_back({"lp/k1-exactness", worst <= 1e-9 && exact_ok,
                       fmt("max error %.3g (tol 1e-9), rational exact: %g", worst, exact_ok ? 1 : 0)});
    }

    {
        double worst = -1e300;
        bool ok = true;
        for (int d : d_range(3, 12, only_d))
            for (int k = 1; k <= 4; ++k) {
                const auto res = ppt_norm<double>(Dim(d), k);
                const double slack = res.value - parity_upper_bound(Dim(d), k);
                worst = std::max(worst, slack);
                if (slack > 1e-9) ok = false;
            }
        out.push_back({"lp/parity-bound-consistency", ok, fmt("max (value - bound) %.3g", worst)});
    }

    {
        bool ok = true;
        std::string detail;
        for (int d : d_range(3, 10, only_d)) {
            if (d != 3 && d != 5 && d != 10) continue;
            const double v1 = ppt_norm<double>(Dim(d), 1).value;
            const double v3 = ppt_norm<double>(Dim(d), 3).value;
            if (!(v3 < v1)) ok = false;
            detail += fmt("d=%g:%.4f ", double(d), v3);
        }
        out.push_back({"lp/parity-decay", ok, detail.empty() ? "no d in range" : detail});
    }

    {
        double worst = 0.0;
        for (int d : d_range(2, 30, only_d)) {
            const auto x0 = dual_ansatz_x0<double>(Dim(d));
            const double obj = l1_objective(std::vector<double>(x0.begin(), x0.end()), Dim(d), 1);
            const double opt = ppt_norm<double>(Dim(d), 1).value;
            worst = std::max(worst, std::fabs(obj - opt));
        }
        out.push_back({"lp/ansatz-optimality", worst <= 1e-9, fmt("max error %.3g (tol 1e-9)", worst)});
    }

    return out;
}

std::vector<CheckResult> verify_suite(const std::string& suite, std::optional<int> only_d) {
    if (suite == "algebra") return verify_algebra(only_d);
    if (suite == "dense") return verify_dense(only_d);
    if (suite == "bounds") return verify_bounds(only_d);
    if (suite == "all") {
        std::vector<CheckResult> out = verify_algebra(only_d);
        for (auto& c : verify_dense(only_d)) out.push_back(std::move(c));
        for (auto& c : verify_bounds(only_d)) out.push_back(std::move(c));
        for (auto& c : verify_lp(only_d)) out.push_back(std::move(c));
        return out;
    }
    throw ArgumentError("unknown suite '" + suite + "' (expected algebra, dense, bounds or all)");
}

}  // namespace qdh
