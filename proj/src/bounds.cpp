#include "qdh/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qdh/dense.hpp"
#include "qdh/kernels.hpp"

namespace qdh {

double mu(Dim d) {
    const double dd = d.value;
    const double inner = 0.25 + 2.0 / dd + 9.0 / (dd * dd) - 6.0 / (dd * dd * dd) -
                         std::sqrt(2.0) * (2.25 + 3.0 / dd + 1.0 / (dd * dd)) *
                             std::sqrt(1.0 - 2.0 / (dd + 4.0 / dd));
    const double rad = 1.0 - (0.625 + inner / dd) / (1.0 + 2.0 / dd + 4.0 / (dd * dd));
    return std::sqrt(std::max(rad, 0.0));
}

namespace {

double dot4(const std::array<double, 4>& x, const std::array<double, 4>& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

std::array<double, 4> unit_positive_lead(std::array<double, 4> w) {
    const double norm = std::sqrt(dot4(w, w));
    double lead = 0.0;
    for (double v : w)
        if (v != 0.0) {
            lead = v;
            break;
        }
    const double scale = (lead < 0.0 ? -1.0 : 1.0) / norm;
    for (double& v : w) v *= scale;
    return w;
}

}  // namespace

SpectralData spectral(Dim d) {
    const double dd = d.value;
    const double disc = std::sqrt(64.0 + 32.0 * dd * dd + 8.0 * std::pow(dd, 4) + std::pow(dd, 6));
    const double a = 8.0 + 4.0 * dd + 4.0 * dd * dd + std::pow(dd, 3) + std::pow(dd, 4);
    const double c = 8.0 + 4.0 * dd + std::pow(dd, 3);
    const double p = (((dd - 2.0) * dd + 4.0) * dd - 8.0) * dd + 16.0;
    SpectralData out;
    out.d = d.value;
    // s = (p - (d-2) disc)/(4 d^2) rationalised against the cancellation of
    // the two ~d^4 terms: p^2 - (d-2)^2 disc^2 = 16 d^4.
    out.s = 4.0 * dd * dd / (p + (dd - 2.0) * disc);
    const double rs = std::sqrt(out.s);
    out.singular_values = {1.0, 1.0, rs, 1.0 / rs};
    // u1 and u2 span the fixed singular space of W_d W_d^T
    out.u[0] = unit_positive_lead({0.0, 0.0, 1.0, 1.0});
    out.u[1] = unit_positive_lead({1.0, dd + 1.0, -1.0, 1.0});
    out.u[2] = unit_positive_lead({a + (dd + 1.0) * disc, -(c + disc), -4.0 * dd, 4.0 * dd});
    // the same vector with disc negated, rationalised component-wise:
    // a - (d+1) disc = -16d(d^2+d+4)/(a + (d+1) disc), disc - c =
    // -16d(d^2-d+4)/(disc + c); scaled by -1/(4d) for a positive lead.
    out.u[3] = unit_positive_lead({4.0 * (dd * dd + dd + 4.0) / (a + (dd + 1.0) * disc),
                                   4.0 * (dd * dd - dd + 4.0) / (c + disc), 1.0, -1.0});
    out.v = {out.u[0], out.u[1], out.u[3], out.u[2]};
    return out;
}

CCoeffs c_coeffs(Dim d) {
    const SpectralData sp = spectral(d);
    const auto [r, rbar] = r_vectors<double>(d);
    CCoeffs c;
    const double p1 = dot4(rbar, sp.u[0]);
    const double p2 = dot4(rbar, sp.u[1]);
    c.c2 = p1 * p1 + p2 * p2;
    const double p3 = dot4(rbar, sp.u[2]);
    const double p4 = dot4(rbar, sp.u[3]);
    c.c3 = p3 * p3;
    c.c4 = p4 * p4;
    return c;
}

double tikhonov_value(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = b.size();
    if (a.size() != n * n) throw ArgumentError("tikhonov_value: A must be n x n");
    // AA^T = sum_i sigma_i^2 u_i u_i^T; the value only needs (u_i . b)^2.
    std::vector<double> aat(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < n; ++l) acc += a[i * n + l] * a[j * n + l];
            aat[i * n + j] = acc;
        }
    std::vector<double> vecs;
    const std::vector<double> evals = jacobi_eigenvalues(std::move(aat), int(n), &vecs);
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ub = 0.0;
        for (std::size_t r = 0; r < n; ++r) ub += vecs[r * n + i] * b[r];
        value += ub * ub / (1.0 + std::max(evals[i], 0.0));
    }
    return value;
}

namespace {

void check_probability(const std::array<double, 3>& q) {
    double sum = 0.0;
    for (double v : q) {
        if (v < 0.0) throw ArgumentError("probability vector has a negative entry");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw ArgumentError("probability vector must sum to 1");
}

}  // namespace

double sanov_bound(const std::array<double, 3>& q, int k) {
    check_probability(q);
    if (k < 1) throw ArgumentError("sanov_bound: k must be >= 1");
    if (!(q[1] < q[2])) throw ArgumentError("sanov_bound requires q2 < q3");
    return std::pow(q[0] + 2.0 * std::sqrt(q[1] * q[2]), k);
}

double empirical_tail_oracle(const std::array<double, 3>& q, int k) {
    check_probability(q);
    if (k < 1) throw ArgumentError("empirical_tail_oracle: k must be >= 1");
    if (k > 12) throw ResourceLimitError("empirical_tail_oracle enumerates 3^k strings; k <= 12");
    // blocked by the leading digits so the summation tree is fixed
    const int prefix = std::min(k, 4);
    std::size_t nblocks = 1, tail = 1;
    for (int i = 0; i < prefix; ++i) nblocks *= 3;
    for (int i = 0; i < k - prefix; ++i) tail *= 3;
    return kernels::blocked_sum<double>(
        nblocks,
        [&](std::size_t blk) {
            double acc = 0.0;
            for (std::size_t t = 0; t < tail; ++t) {
                std::size_t code = blk * tail + t;
                double p = 1.0;
                int n2 = 0, n3 = 0;
                for (int j = 0; j < k; ++j) {
                    const int digit = int(code % 3);
                    code /= 3;
                    p *= q[std::size_t(digit)];
                    n2 += digit == 1;
                    n3 += digit == 2;
                }
                if (n2 >= n3) acc += p;
            }
            return acc;
        },
        [](double x, double y) { return x + y; }, nblocks * tail >= kernels::kParallelGrain);
}

double parity_upper_bound(Dim d, int k) {
    if (k < 1) throw ArgumentError("parity_upper_bound: k must be >= 1");
    return 2.0 * std::pow(mu(d), k);
}

BoundReport bound_report(Dim d, int k, std::optional<double> ppt_value) {
    BoundReport r;
    r.d = d.value;
    r.k = k;
    r.ppt_value = ppt_value;
    r.mu = mu(d);
    r.upper = parity_upper_bound(d, k);
    if (k == 1) {
        r.locc_lower = 0.5 - 1.0 / d.value;
        r.witness = 0.5 + 1.0 / d.value;
    }
    return r;
}

DimResult dim_for_eps(double eps, int d_max) {
    if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("dim_for_eps: eps must lie in (0,1)");
    if (d_max < 3) throw ArgumentError("dim_for_eps: d_max must be >= 3");
    int d_star = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int d = 3; d <= d_max; ++d) {
        const double m = mu(Dim(d));
        if (!(m < 1.0)) continue;
        const double expo = std::log(double(d)) / std::log(1.0 / m);
        if (expo < best) {
            best = expo;
            d_star = d;
        }
    }
    if (d_star == 0) throw Error("dim_for_eps: no admissible base found");

    const double mu_star = mu(Dim(d_star));
    const int k_star = std::max(1, int(std::ceil(std::log(2.0 / eps) / std::log(1.0 / mu_star))));

    DimResult out;
    out.eps = eps;
    out.d_star = d_star;
    out.k_star = k_star;
    mpz_ui_pow_ui(out.D.get_mpz_t(), static_cast<unsigned long>(d_star),
                  static_cast<unsigned long>(k_star));
    out.closed_bound = 40.0 * std::pow(2.0 / eps, 10);
    out.converse = 0.5 + 0.5 / eps;

    if (2.0 * std::pow(mu_star, k_star) > eps * (1.0 + 1e-12))
        throw Error("dim_for_eps: 2 mu^k <= eps failed");
    const double log_d = double(k_star) * std::log(double(d_star));
    const double log_bound = std::log(40.0) + 10.0 * std::log(2.0 / eps);
    if (log_d > log_bound + 1e-9) throw Error("dim_for_eps: closed-form bound failed");
    if (cmp(out.D, out.converse) < 0) throw Error("dim_for_eps: converse bound failed");
    return out;
}

std::vector<std::pair<int, double>> fig1_data(int d_min, int d_max) {
    if (d_min < 2 || d_min > d_max) throw ArgumentError("fig1_data: need 2 <= d_min <= d_max");
    std::vector<std::pair<int, double>> table(std::size_t(d_max - d_min + 1));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long i = 0; i < long(table.size()); ++i) {
        const int d = d_min + int(i);
        table[std::size_t(i)] = {d, mu(Dim(d))};
    }
    return table;
}

std::vector<int> mu_monotonicity_violations(const std::vector<std::pair<int, double>>& table) {
    std::vector<int> bad;
    for (std::size_t i = 1; i < table.size(); ++i)
        if (!(table[i].second < table[i - 1].second)) bad.push_back(table[i].first);
    return bad;
}

void write_mu_csv(const std::vector<std::pair<int, double>>& table, std::ostream& os) {
    os << "d,mu\n";
    char buf[64];
    for (const auto& [d, m] : table) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", d, m);
        os << buf;
    }
}

}  // namespace qdh
