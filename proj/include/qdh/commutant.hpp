#pragma once

// Coordinate arithmetic in the commutant of the k-fold tensor power of the
// signed-permutation twirl. An invariant operator is stored as its 4^k real
// coefficients over Theta_{i1} (x) ... (x) Theta_{ik}; the index is big-endian
// base 4, i = i1*4^{k-1} + ... + ik. Since the Theta_i are mutually orthogonal
// projectors, an operator is PSD iff all coefficients are nonnegative.

#include <array>
#include <cstdint>
#include <type_traits>
#include <utility>
#include <vector>

#include "qdh/errors.hpp"
#include "qdh/kernels.hpp"
#include "qdh/rational.hpp"

namespace qdh {

/// Local dimension of one tensor factor; validated on construction.
struct Dim {
    explicit Dim(int dd) : value(dd) { require_dimension(dd); }
    int value;
    operator int() const { return value; }
};

/// Default cap on coordinate-vector length 4^k (2^26 coefficients).
inline constexpr std::size_t kDefaultCoeffBudget = std::size_t(1) << 26;

inline void require_coeff_budget(int k, std::size_t budget = kDefaultCoeffBudget) {
    if (k < 1) throw ArgumentError("tensor factor count k must be >= 1");
    if (k > 31 || kernels::pow4(k) > budget)
        throw ResourceLimitError("4^" + std::to_string(k) + " coordinates exceed the memory budget");
}

template <class S = double>
struct CommutantOp {
    Dim d;
    int k;
    std::vector<S> coeffs;  // length 4^k

    CommutantOp(Dim dd, int kk, std::vector<S> cc) : d(dd), k(kk), coeffs(std::move(cc)) {
        require_coeff_budget(k);
        if (coeffs.size() != kernels::pow4(k))
            throw ArgumentError("coefficient vector must have length 4^k");
    }
};

/// Partial-transpose action on the coordinates of a single factor.
template <class S = double>
struct PtMatrix {
    std::array<S, 16> entries;  // row-major 4x4
    const S& operator()(int i, int j) const { return entries[std::size_t(4 * i + j)]; }
};

/// Ranks of the four projectors: (1, d-1, d(d-1)/2, d(d-1)/2); they sum to d^2.
inline std::array<std::int64_t, 4> theta_ranks(Dim d) {
    const std::int64_t dd = d.value;
    return {1, dd - 1, dd * (dd - 1) / 2, dd * (dd - 1) / 2};
}

/// The 4x4 involution W_d mapping projector coordinates through the partial
/// transpose; every column sums to 1.
template <class S = double>
PtMatrix<S> pt_matrix(Dim d) {
    using T = ScalarTraits<S>;
    const long dd = d.value;
    PtMatrix<S> w;
    // row 0
    w.entries[0] = T::fraction(1, dd);
    w.entries[1] = T::fraction(1, dd);
    w.entries[2] = T::fraction(1, dd);
    w.entries[3] = T::fraction(-1, dd);
    // row 1
    w.entries[4] = T::fraction(dd - 1, dd);
    w.entries[5] = T::fraction(dd - 1, dd);
    w.entries[6] = T::fraction(-1, dd);
    w.entries[7] = T::fraction(1, dd);
    // row 2
    w.entries[8] = T::fraction(dd - 1, 2);
    w.entries[9] = T::fraction(-1, 2);
    w.entries[10] = T::fraction(1, 2);
    w.entries[11] = T::fraction(1, 2);
    // row 3
    w.entries[12] = T::fraction(-(dd - 1), 2);
    w.entries[13] = T::fraction(1, 2);
    w.entries[14] = T::fraction(1, 2);
    w.entries[15] = T::fraction(1, 2);
    return w;
}

/// r_d = (1/d, -1/2, 1-1/d, -1/2) and rbar_d = r_d / 2. rbar_d sums to zero
/// and is a fixed point of W_d.
template <class S = double>
std::pair<std::array<S, 4>, std::array<S, 4>> r_vectors(Dim d) {
    using T = ScalarTraits<S>;
    const long dd = d.value;
    std::array<S, 4> r = {T::fraction(1, dd), T::fraction(-1, 2), T::fraction(dd - 1, dd),
                          T::fraction(-1, 2)};
    std::array<S, 4> rbar = {T::fraction(1, 2 * dd), T::fraction(-1, 4),
                             T::fraction(dd - 1, 2 * dd), T::fraction(-1, 4)};
    return {r, rbar};
}

/// The orthogonal separable pair: sigma0 = Theta0/d + 2 Theta2/d^2,
/// sigma1 = Theta1/(2(d-1)) + Theta3/(d(d-1)).
template <class S = double>
std::pair<CommutantOp<S>, CommutantOp<S>> sigma_pair(Dim d) {
    using T = ScalarTraits<S>;
    const long dd = d.value;
    std::vector<S> s0 = {T::fraction(1, dd), S(0), T::fraction(2, dd * dd), S(0)};
    std::vector<S> s1 = {S(0), T::fraction(1, 2 * (dd - 1)), S(0), T::fraction(1, dd * (dd - 1))};
    return {CommutantOp<S>(d, 1, std::move(s0)), CommutantOp<S>(d, 1, std::move(s1))};
}

/// Big-endian Kronecker power of a 4-vector.
template <class S>
std::vector<S> tensor_pow(const std::array<S, 4>& v, int k,
                          std::size_t budget = kDefaultCoeffBudget) {
    require_coeff_budget(k, budget);
    return kernels::tensor_pow(v, k);
}

/// Even and odd parity states (rho0, rho1) over k factors, via the parity
/// identity rho_{0/1} = [(s0+s1)^{(x)k} +/- (s0-s1)^{(x)k}] / 2^k.
template <class S = double>
std::pair<CommutantOp<S>, CommutantOp<S>> even_odd(Dim d, int k,
                                                   std::size_t budget = kDefaultCoeffBudget) {
    require_coeff_budget(k, budget);
    auto [s0, s1] = sigma_pair<S>(d);
    std::array<S, 4> sum, diff;
    for (int i = 0; i < 4; ++i) {
        sum[std::size_t(i)] = s0.coeffs[std::size_t(i)] + s1.coeffs[std::size_t(i)];
        diff[std::size_t(i)] = s0.coeffs[std::size_t(i)] - s1.coeffs[std::size_t(i)];
    }
    std::vector<S> p = kernels::tensor_pow(sum, k);
    std::vector<S> q = kernels::tensor_pow(diff, k);
    const S scale = ScalarTraits<S>::fraction(1, long(1) << k);
    std::vector<S> even(p.size()), odd(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        even[i] = (p[i] + q[i]) * scale;
        odd[i] = (p[i] - q[i]) * scale;
    }
    return {CommutantOp<S>(d, k, std::move(even)), CommutantOp<S>(d, k, std::move(odd))};
}

/// Partial transpose: coords' = (W_d^T)^{(x)k} coords via k mode products,
/// never forming the 4^k x 4^k matrix. Involution. The double instantiation
/// runs the whole pipeline in extended precision: rounding the large
/// intermediate coordinates between modes would otherwise dominate the
/// round-trip residual at large d.
template <class S>
CommutantOp<S> apply_pt(const CommutantOp<S>& x) {
    if constexpr (std::is_same_v<S, double>) {
        const long double dd = x.d.value;
        const std::array<long double, 16> wt = {
            // columns of W_d (rows of W_d^T)
            1.0L / dd, (dd - 1.0L) / dd, (dd - 1.0L) / 2.0L, -(dd - 1.0L) / 2.0L,
            1.0L / dd, (dd - 1.0L) / dd, -0.5L, 0.5L,
            1.0L / dd, -1.0L / dd, 0.5L, 0.5L,
            -1.0L / dd, 1.0L / dd, 0.5L, 0.5L};
        std::vector<long double> buf(x.coeffs.begin(), x.coeffs.end());
        buf = kernels::kron_apply(wt, std::move(buf), x.k);
        std::vector<double> out(buf.begin(), buf.end());
        return CommutantOp<S>(x.d, x.k, std::move(out));
    } else {
        const PtMatrix<S> w = pt_matrix<S>(x.d);
        std::array<S, 16> wt;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) wt[std::size_t(4 * i + j)] = w(j, i);
        return CommutantOp<S>(x.d, x.k, kernels::kron_apply(wt, x.coeffs, x.k));
    }
}

/// Tr[XY] = sum_i x_i y_i prod_j rank(i_j), using that the Theta products are
/// orthogonal projectors.
template <class S>
S trace_pair(const CommutantOp<S>& x, const CommutantOp<S>& y) {
    if (x.d.value != y.d.value || x.k != y.k)
        throw ArgumentError("trace_pair: operands must share (d, k)");
    const auto ranks = theta_ranks(x.d);
    std::array<S, 4> rv = {S(ranks[0]), S(ranks[1]), S(ranks[2]), S(ranks[3])};
    const std::vector<S> w = kernels::tensor_pow(rv, x.k);
    S acc(0);
    for (std::size_t i = 0; i < w.size(); ++i) acc += x.coeffs[i] * y.coeffs[i] * w[i];
    return acc;
}

/// Tr[X] = sum_i x_i prod_j rank(i_j).
template <class S>
S trace_of(const CommutantOp<S>& x) {
    const auto ranks = theta_ranks(x.d);
    std::array<S, 4> rv = {S(ranks[0]), S(ranks[1]), S(ranks[2]), S(ranks[3])};
    const std::vector<S> w = kernels::tensor_pow(rv, x.k);
    S acc(0);
    for (std::size_t i = 0; i < w.size(); ++i) acc += x.coeffs[i] * w[i];
    return acc;
}

}  // namespace qdh
