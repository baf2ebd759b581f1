#include "qdh/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qdh/kernels.hpp"

namespace qdh {

namespace {

void require_dense(Dim d) {
    if (d.value > kDenseCutoff)
        throw ResourceLimitError("dense constructions are limited to d <= " +
                                 std::to_string(kDenseCutoff));
}

void require_group(Dim d) {
    if (d.value > kGroupCutoff)
        throw ResourceLimitError("group enumeration (d! 2^d elements) is limited to d <= " +
                                 std::to_string(kGroupCutoff));
}

}  // namespace

DenseOp::DenseOp(int dd, std::vector<double> entries) : d(dd), side(dd * dd), a(std::move(entries)) {
    if (a.size() != std::size_t(side) * std::size_t(side))
        throw ArgumentError("DenseOp: entry count must be d^2 x d^2");
}

DenseOp dense_zero(int d) {
    return DenseOp(d, std::vector<double>(std::size_t(d) * d * d * d, 0.0));
}

DenseOp dense_identity(int d) {
    DenseOp x = dense_zero(d);
    for (int i = 0; i < x.side; ++i) x.at(i, i) = 1.0;
    return x;
}

DenseOp dense_add(const DenseOp& x, const DenseOp& y, double cx, double cy) {
    if (x.d != y.d) throw ArgumentError("dense_add: dimension mismatch");
    DenseOp out = x;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = cx * x.a[i] + cy * y.a[i];
    return out;
}

DenseOp dense_matmul(const DenseOp& x, const DenseOp& y) {
    if (x.d != y.d) throw ArgumentError("dense_matmul: dimension mismatch");
    const int n = x.side;
    DenseOp out = dense_zero(x.d);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            const double v = x.at(i, l);
            if (v == 0.0) continue;
            for (int j = 0; j < n; ++j) out.at(i, j) += v * y.at(l, j);
        }
    return out;
}

double dense_trace(const DenseOp& x) {
    double t = 0.0;
    for (int i = 0; i < x.side; ++i) t += x.at(i, i);
    return t;
}

double dense_trace_product(const DenseOp& x, const DenseOp& y) {
    if (x.d != y.d) throw ArgumentError("dense_trace_product: dimension mismatch");
    double t = 0.0;
    for (int i = 0; i < x.side; ++i)
        for (int j = 0; j < x.side; ++j) t += x.at(i, j) * y.at(j, i);
    return t;
}

double dense_max_abs(const DenseOp& x) {
    double m = 0.0;
    for (double v : x.a) m = std::max(m, std::fabs(v));
    return m;
}

std::array<DenseOp, 4> build_projectors(Dim d) {
    require_dense(d);
    const int dd = d.value;
    DenseOp phi = dense_zero(dd), p = dense_zero(dd), f = dense_zero(dd);
    for (int i = 0; i < dd; ++i) {
        p.at(i * dd + i, i * dd + i) = 1.0;
        for (int j = 0; j < dd; ++j) {
            phi.at(i * dd + i, j * dd + j) = 1.0 / dd;
            f.at(i * dd + j, j * dd + i) = 1.0;
        }
    }
    const DenseOp id = dense_identity(dd);
    DenseOp theta1 = dense_add(p, phi, 1.0, -1.0);
    // Q+ = (1 + F)/2 - P, Q- = (1 - F)/2
    DenseOp qp = dense_add(dense_add(id, f, 0.5, 0.5), p, 1.0, -1.0);
    DenseOp qm = dense_add(id, f, 0.5, -0.5);
    return {std::move(phi), std::move(theta1), std::move(qp), std::move(qm)};
}

std::pair<DenseOp, DenseOp> build_states(Dim d) {
    auto th = build_projectors(d);
    const double dd = d.value;
    DenseOp s0 = dense_add(th[0], th[2], 1.0 / dd, 2.0 / (dd * dd));
    DenseOp s1 = dense_add(th[1], th[3], 1.0 / (2.0 * (dd - 1.0)), 1.0 / (dd * (dd - 1.0)));
    return {std::move(s0), std::move(s1)};
}

DenseOp partial_transpose(const DenseOp& x) {
    const int d = x.d;
    DenseOp out = dense_zero(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int ip = 0; ip < d; ++ip)
                for (int jp = 0; jp < d; ++jp)
                    out.at(i * d + jp, ip * d + j) = x.at(i * d + j, ip * d + jp);
    return out;
}

std::vector<GroupElement> enumerate_group(Dim d) {
    require_group(d);
    const int dd = d.value;
    std::vector<int> perm(static_cast<std::size_t>(dd));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<GroupElement> out;
    out.reserve(std::size_t(group_order(d)));
    do {
        for (std::uint32_t mask = 0; mask < (1u << dd); ++mask) {
            GroupElement g;
            g.perm = perm;
            g.signs.resize(std::size_t(dd));
            for (int i = 0; i < dd; ++i) g.signs[std::size_t(i)] = (mask >> i) & 1u ? -1 : 1;
            out.push_back(std::move(g));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::int64_t group_order(Dim d) {
    std::int64_t fact = 1;
    for (int i = 2; i <= d.value; ++i) fact *= i;
    return fact << d.value;
}

DenseOp group_conjugate(const DenseOp& x, const GroupElement& g) {
    const int d = x.d;
    DenseOp out = dense_zero(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const int r = g.perm[std::size_t(i)] * d + g.perm[std::size_t(j)];
            const int sij = g.signs[std::size_t(i)] * g.signs[std::size_t(j)];
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    const int c = g.perm[std::size_t(k)] * d + g.perm[std::size_t(l)];
                    const int s = sij * g.signs[std::size_t(k)] * g.signs[std::size_t(l)];
                    out.at(r, c) = s * x.at(i * d + j, k * d + l);
                }
        }
    return out;
}

DenseOp twirl_exact(const DenseOp& x) {
    const Dim d(x.d);
    require_group(d);
    const auto group = enumerate_group(d);
    const std::size_t block = 32;
    const std::size_t nblocks = (group.size() + block - 1) / block;
    const bool parallel = group.size() * x.a.size() >= kernels::kParallelGrain;
    std::vector<double> total = kernels::blocked_sum<std::vector<double>>(
        nblocks,
        [&](std::size_t b) {
            std::vector<double> acc(x.a.size(), 0.0);
            const std::size_t lo = b * block;
            const std::size_t hi = std::min(group.size(), lo + block);
            for (std::size_t e = lo; e < hi; ++e) {
                const DenseOp y = group_conjugate(x, group[e]);
                for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += y.a[i];
            }
            return acc;
        },
        [](std::vector<double> lhs, std::vector<double> rhs) {
            for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] += rhs[i];
            return lhs;
        },
        parallel);
    const double scale = 1.0 / double(group.size());
    for (double& v : total) v *= scale;
    return DenseOp(x.d, std::move(total));
}

DenseOp twirl_closed_form(const DenseOp& x) {
    const auto th = build_projectors(Dim(x.d));
    const auto ranks = theta_ranks(Dim(x.d));
    DenseOp out = dense_zero(x.d);
    for (int i = 0; i < 4; ++i) {
        const double w = dense_trace_product(x, th[std::size_t(i)]) / double(ranks[std::size_t(i)]);
        out = dense_add(out, th[std::size_t(i)], 1.0, w);
    }
    return out;
}

std::int64_t character_sum_numerator(Dim d) {
    require_group(d);
    std::int64_t sum = 0;
    for (const GroupElement& g : enumerate_group(d)) {
        std::int64_t tr = 0;
        for (int i = 0; i < d.value; ++i)
            if (g.perm[std::size_t(i)] == i) tr += g.signs[std::size_t(i)];
        sum += tr * tr * tr * tr;
    }
    return sum;
}

double character_sum(Dim d) {
    return double(character_sum_numerator(d)) / double(group_order(d));
}

std::pair<double, bool> witness_value(Dim d) {
    require_dense(d);
    const auto th = build_projectors(d);
    auto [s0, s1] = build_states(d);
    // E = P - Phi + (2/d) Q- = Theta1 + (2/d) Theta3
    DenseOp e = dense_add(th[1], th[3], 1.0, 2.0 / d.value);
    const double value = dense_trace_product(e, dense_add(s1, s0, 1.0, -1.0));
    const DenseOp one_minus_e = dense_add(dense_identity(d.value), e, 1.0, -1.0);
    bool ok = true;
    for (const DenseOp& m : {e, one_minus_e, partial_transpose(e), partial_transpose(one_minus_e)}) {
        const double floor = -1e-8 * std::max(dense_max_abs(m), 1e-300);
        if (min_eigenvalue(m) < floor) ok = false;
    }
    return {value, ok};
}

double basis_measurement_bias(Dim d) {
    require_dense(d);
    auto [s0, s1] = build_states(d);
    double bias = 0.0;
    for (int i = 0; i < d.value; ++i) {
        const int idx = i * d.value + i;
        bias += s1.at(idx, idx) - s0.at(idx, idx);
    }
    return bias;
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n, std::vector<double>* vectors) {
    if (a.size() != std::size_t(n) * std::size_t(n)) throw ArgumentError("jacobi: matrix must be n x n");
    auto at = [&](int i, int j) -> double& { return a[std::size_t(i) * std::size_t(n) + std::size_t(j)]; };
    if (vectors) {
        vectors->assign(std::size_t(n) * std::size_t(n), 0.0);
        for (int i = 0; i < n; ++i) (*vectors)[std::size_t(i) * std::size_t(n) + std::size_t(i)] = 1.0;
    }
    auto vat = [&](int i, int j) -> double& {
        return (*vectors)[std::size_t(i) * std::size_t(n) + std::size_t(j)];
    };
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::fabs(v));
    std::vector<double> evals(static_cast<std::size_t>(n));
    if (scale == 0.0) return evals;
    const double stop = 1e-13 * scale;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::fabs(at(p, q)));
        if (off <= stop) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::fabs(apq) <= stop * 1e-2) continue;
                const double tau = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                at(p, p) -= t * apq;
                at(q, q) += t * apq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = at(i, p);
                    const double aiq = at(i, q);
                    at(i, p) = c * aip - s * aiq;
                    at(p, i) = at(i, p);
                    at(i, q) = s * aip + c * aiq;
                    at(q, i) = at(i, q);
                }
                if (vectors) {
                    for (int i = 0; i < n; ++i) {
                        const double vip = vat(i, p);
                        const double viq = vat(i, q);
                        vat(i, p) = c * vip - s * viq;
                        vat(i, q) = s * vip + c * viq;
                    }
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) evals[std::size_t(i)] = at(i, i);
    return evals;
}

double min_eigenvalue_raw(std::vector<double> a, int n) {
    const std::vector<double> ev = jacobi_eigenvalues(std::move(a), n);
    double mn = ev.empty() ? 0.0 : ev[0];
    for (double v : ev) mn = std::min(mn, v);
    return mn;
}

double min_eigenvalue(const DenseOp& x) {
    return min_eigenvalue_raw(x.a, x.side);
}

std::vector<double> dense_kron(const std::vector<double>& x, int nx, const std::vector<double>& y,
                               int ny) {
    const int n = nx * ny;
    std::vector<double> out(std::size_t(n) * std::size_t(n), 0.0);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nx; ++j) {
            const double v = x[std::size_t(i) * std::size_t(nx) + std::size_t(j)];
            if (v == 0.0) continue;
            for (int p = 0; p < ny; ++p)
                for (int q = 0; q < ny; ++q)
                    out[std::size_t(i * ny + p) * std::size_t(n) + std::size_t(j * ny + q)] =
                        v * y[std::size_t(p) * std::size_t(ny) + std::size_t(q)];
        }
    return out;
}

std::vector<double> dense_from_coeffs(Dim d, int k, const std::vector<double>& coeffs) {
    if (coeffs.size() != kernels::pow4(k)) throw ArgumentError("dense_from_coeffs: length mismatch");
    const auto th = build_projectors(d);
    const int n1 = d.value * d.value;
    if (k == 1) {
        std::vector<double> out(std::size_t(n1) * std::size_t(n1), 0.0);
        for (int i = 0; i < 4; ++i)
            for (std::size_t e = 0; e < out.size(); ++e) out[e] += coeffs[std::size_t(i)] * th[std::size_t(i)].a[e];
        return out;
    }
    const std::size_t sub = kernels::pow4(k - 1);
    const int nsub = [&] {
        int n = n1;
        for (int j = 1; j < k - 1; ++j) n *= n1;
        return n;
    }();
    const int n = nsub * n1;
    std::vector<double> out(std::size_t(n) * std::size_t(n), 0.0);
    for (int lead = 0; lead < 4; ++lead) {
        std::vector<double> block(coeffs.begin() + long(lead) * long(sub),
                                  coeffs.begin() + long(lead + 1) * long(sub));
        const std::vector<double> inner = dense_from_coeffs(d, k - 1, block);
        const std::vector<double> term = dense_kron(th[std::size_t(lead)].a, n1, inner, nsub);
        for (std::size_t e = 0; e < out.size(); ++e) out[e] += term[e];
    }
    return out;
}

DenseOp dense_from_commutant(const CommutantOp<double>& op) {
    if (op.k != 1) throw ArgumentError("dense_from_commutant: DenseOp reconstruction is k=1 only");
    return DenseOp(op.d.value, dense_from_coeffs(op.d, 1, op.coeffs));
}

}  // namespace qdh
