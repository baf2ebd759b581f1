#pragma once

// Data-parallel inner loops shared by the coordinate algebra, the LP solver
// and the verification suites. Every kernel exists twice: a plain serial
// reference under kernels::serial, and a parallel variant in kernels:: that
// OpenMP-parallelises over independent elements (or fixed blocks combined by
// a fixed pairwise tree). Both variants produce bitwise-identical results
// for any thread count, so tests compare them with operator==.

#include <array>
#include <cstddef>
#include <vector>

#include "qdh/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qdh::kernels {

/// Work size below which the parallel variants fall back to the serial code.
inline constexpr std::size_t kParallelGrain = std::size_t(1) << 14;

inline bool parallel_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

inline std::size_t pow4(int k) {
    return std::size_t(1) << (2 * k);
}

/// Accumulator type for the 4-term mode-product dots. W_d has entries of
/// size (d-1)/2, so k-fold round trips amplify rounding; extended precision
/// keeps the involution residual below 1e-12 across the tested (d, k) range.
template <class S>
struct ModeAccum {
    using type = S;
};
template <>
struct ModeAccum<double> {
    using type = long double;
};

namespace serial {

/// Big-endian Kronecker power of a 4-vector: out[i1..ik] = prod_j v[i_j].
template <class S>
std::vector<S> tensor_pow(const std::array<S, 4>& v, int k) {
    if (k < 1) throw ArgumentError("tensor_pow: k must be >= 1");
    std::vector<S> out;
    out.reserve(pow4(k));
    out.assign(1, S(1));
    for (int j = 0; j < k; ++j) {
        std::vector<S> next(out.size() * 4, S(0));
        for (std::size_t i = 0; i < out.size(); ++i)
            for (int q = 0; q < 4; ++q) next[4 * i + q] = out[i] * v[q];
        out.swap(next);
    }
    return out;
}

/// Applies a 4x4 matrix along tensor mode `mode` (0-based from the left) of
/// a length-4^k vector, in place: x[.., i_mode=p, ..] = sum_q M[p][q] x[.., q, ..].
template <class S>
void mode_apply(const std::array<S, 16>& m, std::vector<S>& x, int k, int mode) {
    const std::size_t stride = std::size_t(1) << (2 * (k - 1 - mode));
    const std::size_t groups = x.size() / 4;
    using A = typename ModeAccum<S>::type;
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t base = (g / stride) * 4 * stride + g % stride;
        const A a0(x[base]);
        const A a1(x[base + stride]);
        const A a2(x[base + 2 * stride]);
        const A a3(x[base + 3 * stride]);
        x[base] = S(A(m[0]) * a0 + A(m[1]) * a1 + A(m[2]) * a2 + A(m[3]) * a3);
        x[base + stride] = S(A(m[4]) * a0 + A(m[5]) * a1 + A(m[6]) * a2 + A(m[7]) * a3);
        x[base + 2 * stride] = S(A(m[8]) * a0 + A(m[9]) * a1 + A(m[10]) * a2 + A(m[11]) * a3);
        x[base + 3 * stride] = S(A(m[12]) * a0 + A(m[13]) * a1 + A(m[14]) * a2 + A(m[15]) * a3);
    }
}

/// y = M^{(x) k} x by k successive mode products, cost O(k 4^k).
template <class S>
std::vector<S> kron_apply(const std::array<S, 16>& m, std::vector<S> x, int k) {
    if (x.size() != pow4(k)) throw ArgumentError("kron_apply: length mismatch");
    for (int mode = 0; mode < k; ++mode) mode_apply(m, x, k, mode);
    return x;
}

/// Simplex pivot on a row-major m x n tableau: normalises row r so that
/// column e becomes 1 there, then eliminates column e from every other row.
template <class S>
void pivot(S* tab, std::size_t m, std::size_t n, std::size_t r, std::size_t e) {
    S* row_r = tab + r * n;
    const S inv = S(1) / row_r[e];
    for (std::size_t j = 0; j < n; ++j) row_r[j] = row_r[j] * inv;
    row_r[e] = S(1);
    for (std::size_t i = 0; i < m; ++i) {
        if (i == r) continue;
        S* row = tab + i * n;
        const S f = row[e];
        if (f == S(0)) continue;
        for (std::size_t j = 0; j < n; ++j) row[j] = row[j] - f * row_r[j];
        row[e] = S(0);
    }
}

}  // namespace serial

/// Combines block partials with a fixed binary tree, independent of how the
/// partials were produced. Shared by the serial and parallel reductions so
/// that both sum in exactly the same order.
template <class T, class Add>
T pairwise_combine(std::vector<T>& parts, std::size_t lo, std::size_t hi, Add&& add) {
    if (hi - lo == 1) return std::move(parts[lo]);
    const std::size_t mid = lo + (hi - lo) / 2;
    T left = pairwise_combine(parts, lo, mid, add);
    T right = pairwise_combine(parts, mid, hi, add);
    return add(std::move(left), std::move(right));
}

/// Deterministic blocked reduction: eval(b) yields the partial sum of block b.
template <class T, class Eval, class Add>
T blocked_sum(std::size_t nblocks, Eval&& eval, Add&& add, bool parallel) {
    if (nblocks == 0) throw ArgumentError("blocked_sum: empty range");
    std::vector<T> parts(nblocks);
#ifdef _OPENMP
    if (parallel && nblocks > 1) {
#pragma omp parallel for schedule(static)
        for (long b = 0; b < long(nblocks); ++b) parts[std::size_t(b)] = eval(std::size_t(b));
    } else
#endif
    {
        (void)parallel;
        for (std::size_t b = 0; b < nblocks; ++b) parts[b] = eval(b);
    }
    return pairwise_combine(parts, 0, nblocks, add);
}

template <class S>
std::vector<S> tensor_pow(const std::array<S, 4>& v, int k) {
    if (k < 1) throw ArgumentError("tensor_pow: k must be >= 1");
    const std::size_t total = pow4(k);
    if (total < kParallelGrain) return serial::tensor_pow(v, k);
    std::vector<S> out(total);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long i = 0; i < long(total); ++i) {
        std::size_t idx = std::size_t(i);
        S p = v[(idx >> (2 * (k - 1))) & 3];
        for (int j = 1; j < k; ++j) p = p * v[(idx >> (2 * (k - 1 - j))) & 3];
        out[std::size_t(i)] = p;
    }
    return out;
}

template <class S>
void mode_apply(const std::array<S, 16>& m, std::vector<S>& x, int k, int mode) {
    const std::size_t groups = x.size() / 4;
    if (groups < kParallelGrain) {
        serial::mode_apply(m, x, k, mode);
        return;
    }
    const std::size_t stride = std::size_t(1) << (2 * (k - 1 - mode));
    using A = typename ModeAccum<S>::type;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long g = 0; g < long(groups); ++g) {
        const std::size_t base = (std::size_t(g) / stride) * 4 * stride + std::size_t(g) % stride;
        const A a0(x[base]);
        const A a1(x[base + stride]);
        const A a2(x[base + 2 * stride]);
        const A a3(x[base + 3 * stride]);
        x[base] = S(A(m[0]) * a0 + A(m[1]) * a1 + A(m[2]) * a2 + A(m[3]) * a3);
        x[base + stride] = S(A(m[4]) * a0 + A(m[5]) * a1 + A(m[6]) * a2 + A(m[7]) * a3);
        x[base + 2 * stride] = S(A(m[8]) * a0 + A(m[9]) * a1 + A(m[10]) * a2 + A(m[11]) * a3);
        x[base + 3 * stride] = S(A(m[12]) * a0 + A(m[13]) * a1 + A(m[14]) * a2 + A(m[15]) * a3);
    }
}

template <class S>
std::vector<S> kron_apply(const std::array<S, 16>& m, std::vector<S> x, int k) {
    if (x.size() != pow4(k)) throw ArgumentError("kron_apply: length mismatch");
    for (int mode = 0; mode < k; ++mode) mode_apply(m, x, k, mode);
    return x;
}

template <class S>
void pivot(S* tab, std::size_t m, std::size_t n, std::size_t r, std::size_t e) {
    if (m * n < kParallelGrain) {
        serial::pivot(tab, m, n, r, e);
        return;
    }
    S* row_r = tab + r * n;
    const S inv = S(1) / row_r[e];
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long j = 0; j < long(n); ++j) row_r[j] = row_r[j] * inv;
    row_r[e] = S(1);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long i = 0; i < long(m); ++i) {
        if (std::size_t(i) == r) continue;
        S* row = tab + std::size_t(i) * n;
        const S f = row[e];
        if (f == S(0)) continue;
        for (std::size_t j = 0; j < n; ++j) row[j] = row[j] - f * row_r[j];
        row[e] = S(0);
    }
}

}  // namespace qdh::kernels
