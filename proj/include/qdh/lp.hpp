#pragma once

// The PPT-norm linear programs and a self-contained bounded-variable primal
// simplex. Both sides of the norm are built and solved independently: the
// box-constrained maximisation over twirled POVM coordinates, and the l1
// minimisation it dualises to. The solver uses Bland's anti-cycling rule and
// runs over double or exact rational scalars.

#include <array>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "qdh/commutant.hpp"
#include "qdh/errors.hpp"
#include "qdh/kernels.hpp"
#include "qdh/rational.hpp"

namespace qdh {

enum class LpSense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration-limit";
    }
    return "unknown";
}

/// Constraint matrix, either dense or given implicitly by its generating
/// structure. Structured kinds stream single rows on demand and evaluate
/// activities by k-mode products, never materialising the Kronecker power.
template <class S = double>
class LpMatrix {
  public:
    enum class Kind { Dense, KronRows, L1Dual };

    static LpMatrix dense(std::size_t rows, std::size_t cols, std::vector<S> data) {
        LpMatrix m;
        m.kind_ = Kind::Dense;
        m.rows_ = rows;
        m.cols_ = cols;
        m.data_ = std::move(data);
        if (m.data_.size() != rows * cols) throw ArgumentError("LpMatrix: dense size mismatch");
        return m;
    }

    /// Rows of factor^{(x)k} (a 4^k x 4^k operator).
    static LpMatrix kron_rows(const std::array<S, 16>& factor, int k) {
        LpMatrix m;
        m.kind_ = Kind::KronRows;
        m.factor_ = factor;
        m.k_ = k;
        m.rows_ = m.cols_ = kernels::pow4(k);
        return m;
    }

    /// Block matrix of the l1 reformulation over variables [x t u] with
    /// n0 = 4^k of each: rows are x+t, t-x, W^{(x)k}x + u, W^{(x)k}x - u.
    static LpMatrix l1_dual(const std::array<S, 16>& w, int k) {
        LpMatrix m;
        m.kind_ = Kind::L1Dual;
        m.factor_ = w;
        m.k_ = k;
        m.rows_ = 4 * kernels::pow4(k);
        m.cols_ = 3 * kernels::pow4(k);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    /// Writes row i (all cols() coefficients) into out.
    void fill_row(std::size_t i, S* out) const {
        for (std::size_t j = 0; j < cols_; ++j) out[j] = S(0);
        switch (kind_) {
            case Kind::Dense:
                for (std::size_t j = 0; j < cols_; ++j) out[j] = data_[i * cols_ + j];
                return;
            case Kind::KronRows:
                kron_row(i, out);
                return;
            case Kind::L1Dual: {
                const std::size_t n0 = kernels::pow4(k_);
                const std::size_t block = i / n0;
                const std::size_t r = i % n0;
                if (block == 0) {
                    out[r] = S(1);
                    out[n0 + r] = S(1);
                } else if (block == 1) {
                    out[r] = S(-1);
                    out[n0 + r] = S(1);
                } else {
                    kron_row(r, out);
                    out[2 * n0 + r] = block == 2 ? S(1) : S(-1);
                }
                return;
            }
        }
    }

    /// Row activities A x.
    std::vector<S> activities(const std::vector<S>& x) const {
        if (x.size() != cols_) throw ArgumentError("LpMatrix: activity vector length mismatch");
        switch (kind_) {
            case Kind::Dense: {
                std::vector<S> y(rows_, S(0));
                for (std::size_t i = 0; i < rows_; ++i) {
                    S acc(0);
                    for (std::size_t j = 0; j < cols_; ++j) acc += data_[i * cols_ + j] * x[j];
                    y[i] = acc;
                }
                return y;
            }
            case Kind::KronRows:
                return kernels::kron_apply(factor_, x, k_);
            case Kind::L1Dual: {
                const std::size_t n0 = kernels::pow4(k_);
                std::vector<S> xb(x.begin(), x.begin() + long(n0));
                const std::vector<S> wx = kernels::kron_apply(factor_, xb, k_);
                std::vector<S> y(rows_, S(0));
                for (std::size_t r = 0; r < n0; ++r) {
                    y[r] = x[r] + x[n0 + r];
                    y[n0 + r] = x[n0 + r] - x[r];
                    y[2 * n0 + r] = wx[r] + x[2 * n0 + r];
                    y[3 * n0 + r] = wx[r] - x[2 * n0 + r];
                }
                return y;
            }
        }
        throw Error("LpMatrix: bad kind");
    }

  private:
    void kron_row(std::size_t i, S* out) const {
        // out[j] = prod_f factor(digit_f(i), digit_f(j)), expanded digit by digit
        out[0] = S(1);
        std::size_t len = 1;
        for (int f = 0; f < k_; ++f) {
            const int di = int((i >> (2 * (k_ - 1 - f))) & 3);
            for (std::size_t p = len; p-- > 0;) {
                const S base = out[p];
                for (int q = 3; q >= 0; --q)
                    out[4 * p + std::size_t(q)] = base * factor_[std::size_t(4 * di + q)];
            }
            len *= 4;
        }
    }

    Kind kind_ = Kind::Dense;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<S> data_;
    std::array<S, 16> factor_{};
    int k_ = 0;
};

/// Bounded-variable linear program: optimise objective . x subject to
/// var_lo <= x <= var_hi and row_lo <= A x <= row_hi. All bounds finite.
template <class S = double>
struct StandardLp {
    LpSense sense = LpSense::Maximize;
    std::vector<S> objective;
    LpMatrix<S> matrix;
    std::vector<S> var_lo, var_hi;
    std::vector<S> row_lo, row_hi;

    void validate() const {
        const std::size_t n = matrix.cols(), m = matrix.rows();
        if (objective.size() != n || var_lo.size() != n || var_hi.size() != n ||
            row_lo.size() != m || row_hi.size() != m)
            throw ArgumentError("StandardLp: inconsistent dimensions");
        for (std::size_t j = 0; j < n; ++j)
            if (var_lo[j] > var_hi[j]) throw ArgumentError("StandardLp: variable bounds crossed");
        for (std::size_t i = 0; i < m; ++i)
            if (row_lo[i] > row_hi[i]) throw ArgumentError("StandardLp: row bounds crossed");
    }
};

template <class S>
struct SolverOptions {
    S feas_tol;
    S opt_tol;
    S pivot_tol;
    long max_pivots = 1000000;
    long refresh_every = 512;  // recompute reduced costs/basics from scratch (0 = never)

    static SolverOptions defaults();
};

template <>
inline SolverOptions<double> SolverOptions<double>::defaults() {
    return {1e-9, 1e-9, 1e-11, 1000000, 512};
}

template <>
inline SolverOptions<Rational> SolverOptions<Rational>::defaults() {
    return {Rational(0), Rational(0), Rational(0), 1000000, 0};
}

template <class S = double>
struct LpSolution {
    S value{};
    std::vector<S> point;
    LpStatus status = LpStatus::Optimal;
    long iterations = 0;
    S max_infeasibility{};
};

template <class S>
LpSolution<S> solve_lp(const StandardLp<S>& lp, SolverOptions<S> opts = SolverOptions<S>::defaults());

/// The box-constrained maximisation: variables c in [0,1]^{4^k}, rows
/// (W_d^T)^{(x)k} c in [0,1]^{4^k}, objective (1/2^{k-1}) (r_d^{(x)k}) . c.
/// c = (1/2, ..., 1/2) is strictly interior.
template <class S = double>
StandardLp<S> build_primal(Dim d, int k, std::size_t budget = kDefaultCoeffBudget);

/// The l1 reformulation: minimise sum(t) + sum(u) over -t <= x <= t and
/// -u <= rbar^{(x)k} - W^{(x)k} x <= u. Since any optimum has objective at
/// most ||rbar^{(x)k}||_1 = 1, the variables carry the non-cutting box
/// x in [-2,2], t,u in [0,2].
template <class S = double>
StandardLp<S> build_dual_l1(Dim d, int k, std::size_t budget = kDefaultCoeffBudget);

/// ||x||_1 + ||rbar^{(x)k} - W^{(x)k} x||_1 for any candidate x; every value
/// is a certified upper bound on the PPT-norm bias.
template <class S = double>
S l1_objective(const std::vector<S>& x, Dim d, int k);

/// The closed-form optimiser of the k=1 l1 program:
/// x0 = ((3d-2)/(4d(d-1)), 0, (d-2)/(4d), 0).
template <class S = double>
std::array<S, 4> dual_ansatz_x0(Dim d);

template <class S = double>
struct PptNormResult {
    S value{};        // primal optimum = (1/2)||rho1 - rho0||_PPT
    S dual_value{};
    S gap{};          // |primal - dual|
    LpStatus status = LpStatus::Optimal;
    long iterations = 0;
};

/// Solves both programs independently and reports the certified value and
/// duality gap.
template <class S = double>
PptNormResult<S> ppt_norm(Dim d, int k, SolverOptions<S> opts = SolverOptions<S>::defaults(),
                          std::size_t budget = kDefaultCoeffBudget);

/// Plain-text export, one line per row with bounds and all coefficients,
/// 17 significant digits, LF line endings; byte-reproducible.
void write_lp(const StandardLp<double>& lp, std::ostream& os);

}  // namespace qdh
