#include "qdh/lp.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

namespace qdh {

namespace {

template <class S>
S scalar_abs(const S& x) {
    return ScalarTraits<S>::abs(x);
}

// Bounded-variable primal simplex on the equality system A x - s (+ a) = 0,
// with structural variables, one slack per row and, when the all-lower-bound
// start is row-infeasible, one artificial per violated row. Entering variable
// by Bland's rule (smallest eligible index); leaving variable by minimum
// ratio with smallest-variable-index tie break.
template <class S>
class SimplexSolver {
  public:
    SimplexSolver(const StandardLp<S>& lp, SolverOptions<S> opts) : lp_(lp), opt_(opts) {
        lp_.validate();
    }

    LpSolution<S> solve() {
        init();
        LpStatus status = LpStatus::Optimal;
        if (art_count_ > 0) status = phase_one();
        if (status == LpStatus::Optimal) status = phase_two();
        return finish(status);
    }

  private:
    std::size_t n() const { return lp_.matrix.cols(); }
    std::size_t m() const { return lp_.matrix.rows(); }

    S bound_value(std::size_t j) const { return at_upper_[j] ? hi_[j] : lo_[j]; }

    void init() {
        const std::size_t nn = n(), mm = m();
        // structural start: everything at its lower bound
        std::vector<S> x0(lp_.var_lo);
        const std::vector<S> act = lp_.matrix.activities(x0);

        std::vector<int> art_dir(mm, 0);  // 0: feasible row, else sign of the artificial column
        std::vector<S> art_val(mm, S(0));
        art_count_ = 0;
        for (std::size_t i = 0; i < mm; ++i) {
            if (act[i] > lp_.row_hi[i]) {
                art_dir[i] = -1;  // a_i = act_i - hi_i with column -e_i
                art_val[i] = act[i] - lp_.row_hi[i];
                ++art_count_;
            } else if (act[i] < lp_.row_lo[i]) {
                art_dir[i] = 1;  // a_i = lo_i - act_i with column +e_i
                art_val[i] = lp_.row_lo[i] - act[i];
                ++art_count_;
            }
        }

        ncols_ = nn + mm + art_count_;
        art_begin_ = nn + mm;
        lo_.assign(ncols_, S(0));
        hi_.assign(ncols_, S(0));
        at_upper_.assign(ncols_, 0);
        for (std::size_t j = 0; j < nn; ++j) {
            lo_[j] = lp_.var_lo[j];
            hi_[j] = lp_.var_hi[j];
        }
        for (std::size_t i = 0; i < mm; ++i) {
            lo_[nn + i] = lp_.row_lo[i];
            hi_[nn + i] = lp_.row_hi[i];
        }

        tab_.assign(mm * ncols_, S(0));
        basis_.assign(mm, -1);
        pos_in_basis_.assign(ncols_, -1);
        beta_.assign(mm, S(0));

        std::size_t art = art_begin_;
        std::vector<S> rowbuf(nn, S(0));
        for (std::size_t i = 0; i < mm; ++i) {
            S* row = tab_.data() + i * ncols_;
            lp_.matrix.fill_row(i, rowbuf.data());
            for (std::size_t j = 0; j < nn; ++j) row[j] = rowbuf[j];
            row[nn + i] = S(-1);
            S diag;  // basic column entry in this row
            if (art_dir[i] != 0) {
                row[art] = S(art_dir[i]);
                lo_[art] = S(0);
                hi_[art] = art_val[i];
                basis_[i] = int(art);
                beta_[i] = art_val[i];
                diag = S(art_dir[i]);
                // slack rests at the violated bound
                at_upper_[nn + i] = act[i] > lp_.row_hi[i] ? 1 : 0;
                ++art;
            } else {
                basis_[i] = int(nn + i);
                beta_[i] = act[i];
                diag = S(-1);
            }
            if (diag < S(0))
                for (std::size_t j = 0; j < ncols_; ++j) row[j] = -row[j];
            pos_in_basis_[std::size_t(basis_[i])] = int(i);
        }
        pivots_ = 0;
    }

    void set_costs_phase_one() {
        cost_.assign(ncols_, S(0));
        for (std::size_t j = art_begin_; j < ncols_; ++j) cost_[j] = S(-1);
    }

    void set_costs_phase_two() {
        cost_.assign(ncols_, S(0));
        const bool maximize = lp_.sense == LpSense::Maximize;
        for (std::size_t j = 0; j < n(); ++j)
            cost_[j] = maximize ? lp_.objective[j] : S(-lp_.objective[j]);
    }

    void refresh_reduced_costs() {
        z_ = cost_;
        for (std::size_t i = 0; i < m(); ++i) {
            const S cb = cost_[std::size_t(basis_[i])];
            if (cb == S(0)) continue;
            const S* row = tab_.data() + i * ncols_;
            for (std::size_t j = 0; j < ncols_; ++j) z_[j] -= cb * row[j];
        }
        for (std::size_t i = 0; i < m(); ++i) z_[std::size_t(basis_[i])] = S(0);
    }

    void refresh_basics() {
        for (std::size_t i = 0; i < m(); ++i) beta_[i] = S(0);
        for (std::size_t j = 0; j < ncols_; ++j) {
            if (pos_in_basis_[j] >= 0) continue;
            const S v = bound_value(j);
            if (v == S(0)) continue;
            for (std::size_t i = 0; i < m(); ++i) beta_[i] -= tab_[i * ncols_ + j] * v;
        }
    }

    // One simplex phase over the current cost vector. Returns Optimal when no
    // eligible entering column remains.
    LpStatus run() {
        refresh_reduced_costs();
        std::vector<S> h(m(), S(0));
        while (true) {
            if (pivots_ >= opt_.max_pivots) return LpStatus::IterationLimit;
            if (opt_.refresh_every > 0 && pivots_ > 0 && pivots_ % opt_.refresh_every == 0) {
                refresh_reduced_costs();
                refresh_basics();
            }

            // Bland: smallest-index eligible nonbasic column
            std::size_t enter = ncols_;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (pos_in_basis_[j] >= 0 || !(lo_[j] < hi_[j])) continue;
                if (!at_upper_[j] ? z_[j] > opt_.opt_tol : z_[j] < -opt_.opt_tol) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols_) return LpStatus::Optimal;

            const int dir = at_upper_[enter] ? -1 : 1;
            for (std::size_t i = 0; i < m(); ++i) h[i] = tab_[i * ncols_ + enter];

            // ratio test: own bound flip vs blocking basic rows
            S best = hi_[enter] - lo_[enter];
            long leave = -1;
            for (std::size_t i = 0; i < m(); ++i) {
                if (scalar_abs(h[i]) <= opt_.pivot_tol) continue;
                const S hd = dir > 0 ? h[i] : S(-h[i]);
                const std::size_t b = std::size_t(basis_[i]);
                S ratio;
                if (hd > S(0))
                    ratio = (beta_[i] - lo_[b]) / hd;
                else
                    ratio = (hi_[b] - beta_[i]) / S(-hd);
                if (ratio < S(0)) ratio = S(0);
                if (ratio < best) {
                    best = ratio;
                    leave = long(i);
                } else if (leave >= 0 && ratio == best && basis_[i] < basis_[std::size_t(leave)]) {
                    leave = long(i);
                }
            }

            ++pivots_;
            if (leave < 0) {
                // bound flip: entering runs to its opposite bound
                const S delta = best;
                for (std::size_t i = 0; i < m(); ++i)
                    beta_[i] -= S(dir) * delta * h[i];
                at_upper_[enter] = at_upper_[enter] ? 0 : 1;
                continue;
            }

            const std::size_t r = std::size_t(leave);
            const S delta = best;
            const S enter_val = bound_value(enter) + S(dir) * delta;
            for (std::size_t i = 0; i < m(); ++i) {
                if (i == r) continue;
                beta_[i] -= S(dir) * delta * h[i];
            }
            const std::size_t lv = std::size_t(basis_[r]);
            at_upper_[lv] = (S(dir) * h[r] > S(0)) ? 0 : 1;

            kernels::pivot(tab_.data(), m(), ncols_, r, enter);
            const S ze = z_[enter];
            if (ze != S(0)) {
                const S* row = tab_.data() + r * ncols_;
                for (std::size_t j = 0; j < ncols_; ++j) z_[j] -= ze * row[j];
            }
            z_[enter] = S(0);

            pos_in_basis_[lv] = -1;
            pos_in_basis_[enter] = int(r);
            basis_[r] = int(enter);
            beta_[r] = enter_val;
        }
    }

    LpStatus phase_one() {
        set_costs_phase_one();
        const LpStatus st = run();
        if (st != LpStatus::Optimal) return st;
        S infeas(0);
        for (std::size_t j = art_begin_; j < ncols_; ++j) {
            const int p = pos_in_basis_[j];
            infeas += p >= 0 ? beta_[std::size_t(p)] : bound_value(j);
        }
        if (infeas > opt_.feas_tol) return LpStatus::Infeasible;
        drive_out_artificials();
        for (std::size_t j = art_begin_; j < ncols_; ++j) {
            lo_[j] = S(0);
            hi_[j] = S(0);
            at_upper_[j] = 0;
        }
        return LpStatus::Optimal;
    }

    // Degenerate pivots replacing any artificial still basic (at value ~0) by
    // a real column. A usable column always exists: [A | -I] has full row
    // rank, and the basic real columns are unit vectors in other rows.
    void drive_out_artificials() {
        for (std::size_t r = 0; r < m(); ++r) {
            if (std::size_t(basis_[r]) < art_begin_) continue;
            std::size_t enter = ncols_;
            const S* row = tab_.data() + r * ncols_;
            for (std::size_t j = 0; j < art_begin_; ++j) {
                if (pos_in_basis_[j] >= 0) continue;
                if (scalar_abs(row[j]) > opt_.pivot_tol) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols_) throw Error("simplex: dependent row while removing artificials");
            const std::size_t lv = std::size_t(basis_[r]);
            kernels::pivot(tab_.data(), m(), ncols_, r, enter);
            pos_in_basis_[lv] = -1;
            at_upper_[lv] = 0;
            pos_in_basis_[enter] = int(r);
            basis_[r] = int(enter);
            beta_[r] = bound_value(enter);
        }
    }

    LpStatus phase_two() {
        set_costs_phase_two();
        return run();
    }

    LpSolution<S> finish(LpStatus status) {
        LpSolution<S> sol;
        sol.status = status;
        sol.iterations = pivots_;
        sol.point.assign(n(), S(0));
        for (std::size_t j = 0; j < n(); ++j) {
            const int p = pos_in_basis_[j];
            sol.point[j] = p >= 0 ? beta_[std::size_t(p)] : bound_value(j);
        }
        S value(0);
        for (std::size_t j = 0; j < n(); ++j) value += lp_.objective[j] * sol.point[j];
        sol.value = value;

        S viol(0);
        for (std::size_t j = 0; j < n(); ++j) {
            if (sol.point[j] < lp_.var_lo[j]) viol = std::max(viol, S(lp_.var_lo[j] - sol.point[j]));
            if (sol.point[j] > lp_.var_hi[j]) viol = std::max(viol, S(sol.point[j] - lp_.var_hi[j]));
        }
        const std::vector<S> act = lp_.matrix.activities(sol.point);
        for (std::size_t i = 0; i < m(); ++i) {
            if (act[i] < lp_.row_lo[i]) viol = std::max(viol, S(lp_.row_lo[i] - act[i]));
            if (act[i] > lp_.row_hi[i]) viol = std::max(viol, S(act[i] - lp_.row_hi[i]));
        }
        sol.max_infeasibility = viol;
        if (status == LpStatus::Optimal && viol > opt_.feas_tol)
            throw Error("simplex: reported optimum violates feasibility tolerance");
        return sol;
    }

    StandardLp<S> lp_;
    SolverOptions<S> opt_;
    std::size_t ncols_ = 0, art_begin_ = 0, art_count_ = 0;
    std::vector<S> tab_, cost_, z_, beta_, lo_, hi_;
    std::vector<int> basis_, pos_in_basis_;
    std::vector<char> at_upper_;
    long pivots_ = 0;
};

}  // namespace

template <class S>
LpSolution<S> solve_lp(const StandardLp<S>& lp, SolverOptions<S> opts) {
    return SimplexSolver<S>(lp, opts).solve();
}

template <class S>
StandardLp<S> build_primal(Dim d, int k, std::size_t budget) {
    require_coeff_budget(k, budget);
    using T = ScalarTraits<S>;
    const PtMatrix<S> w = pt_matrix<S>(d);
    std::array<S, 16> wt;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) wt[std::size_t(4 * i + j)] = w(j, i);

    const auto [r, rbar] = r_vectors<S>(d);
    std::vector<S> obj = kernels::tensor_pow(r, k);
    const S scale = T::fraction(1, long(1) << (k - 1));
    for (S& v : obj) v = v * scale;

    const std::size_t nn = kernels::pow4(k);
    StandardLp<S> lp{LpSense::Maximize,
                     std::move(obj),
                     LpMatrix<S>::kron_rows(wt, k),
                     std::vector<S>(nn, S(0)),
                     std::vector<S>(nn, S(1)),
                     std::vector<S>(nn, S(0)),
                     std::vector<S>(nn, S(1))};
    return lp;
}

template <class S>
StandardLp<S> build_dual_l1(Dim d, int k, std::size_t budget) {
    require_coeff_budget(k, budget);
    using T = ScalarTraits<S>;
    const PtMatrix<S> w = pt_matrix<S>(d);
    const auto [r, rbar] = r_vectors<S>(d);
    const std::vector<S> target = kernels::tensor_pow(rbar, k);

    const std::size_t n0 = kernels::pow4(k);
    const S box = S(2);
    // ||W^{(x)k} x||_inf <= ((d+2)/2)^k ||x||_inf over the box, so these row
    // caps can never bind.
    S reach = box;
    for (int j = 0; j < k; ++j) reach = reach * T::fraction(d.value + 2, 2);
    const S big = reach + box + S(1);

    std::vector<S> obj(3 * n0, S(0));
    std::vector<S> vlo(3 * n0), vhi(3 * n0);
    for (std::size_t i = 0; i < n0; ++i) {
        obj[n0 + i] = S(1);
        obj[2 * n0 + i] = S(1);
        vlo[i] = S(-box);
        vhi[i] = box;
        vlo[n0 + i] = S(0);
        vhi[n0 + i] = box;
        vlo[2 * n0 + i] = S(0);
        vhi[2 * n0 + i] = box;
    }
    std::vector<S> rlo(4 * n0), rhi(4 * n0);
    for (std::size_t i = 0; i < n0; ++i) {
        rlo[i] = S(0);
        rhi[i] = box + box;
        rlo[n0 + i] = S(0);
        rhi[n0 + i] = box + box;
        rlo[2 * n0 + i] = target[i];
        rhi[2 * n0 + i] = big;
        rlo[3 * n0 + i] = S(-big);
        rhi[3 * n0 + i] = target[i];
    }
    StandardLp<S> lp{LpSense::Minimize,
                     std::move(obj),
                     LpMatrix<S>::l1_dual(w.entries, k),
                     std::move(vlo),
                     std::move(vhi),
                     std::move(rlo),
                     std::move(rhi)};
    return lp;
}

template <class S>
S l1_objective(const std::vector<S>& x, Dim d, int k) {
    require_coeff_budget(k);
    if (x.size() != kernels::pow4(k)) throw ArgumentError("l1_objective: x must have length 4^k");
    const PtMatrix<S> w = pt_matrix<S>(d);
    const auto [r, rbar] = r_vectors<S>(d);
    const std::vector<S> target = kernels::tensor_pow(rbar, k);
    const std::vector<S> wx = kernels::kron_apply(w.entries, x, k);
    S acc(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += ScalarTraits<S>::abs(x[i]);
        acc += ScalarTraits<S>::abs(S(target[i] - wx[i]));
    }
    return acc;
}

template <class S>
std::array<S, 4> dual_ansatz_x0(Dim d) {
    using T = ScalarTraits<S>;
    const long dd = d.value;
    return {T::fraction(3 * dd - 2, 4 * dd * (dd - 1)), S(0), T::fraction(dd - 2, 4 * dd), S(0)};
}

template <class S>
PptNormResult<S> ppt_norm(Dim d, int k, SolverOptions<S> opts, std::size_t budget) {
    const LpSolution<S> primal = solve_lp(build_primal<S>(d, k, budget), opts);
    const LpSolution<S> dual = solve_lp(build_dual_l1<S>(d, k, budget), opts);
    PptNormResult<S> out;
    out.value = primal.value;
    out.dual_value = dual.value;
    out.gap = ScalarTraits<S>::abs(S(primal.value - dual.value));
    out.status = primal.status == LpStatus::Optimal ? dual.status : primal.status;
    out.iterations = primal.iterations + dual.iterations;
    return out;
}

void write_lp(const StandardLp<double>& lp, std::ostream& os) {
    lp.validate();
    char buf[64];
    const auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, " %.17g", v);
        os << buf;
    };
    const std::size_t nn = lp.matrix.cols(), mm = lp.matrix.rows();
    os << "qdh-lp 1 " << (lp.sense == LpSense::Maximize ? "maximize" : "minimize") << ' ' << nn
       << ' ' << mm << '\n';
    os << "obj";
    for (double v : lp.objective) put(v);
    os << '\n';
    for (std::size_t j = 0; j < nn; ++j) {
        os << "var";
        put(lp.var_lo[j]);
        put(lp.var_hi[j]);
        os << '\n';
    }
    std::vector<double> row(nn, 0.0);
    for (std::size_t i = 0; i < mm; ++i) {
        lp.matrix.fill_row(i, row.data());
        os << "row";
        put(lp.row_lo[i]);
        put(lp.row_hi[i]);
        for (double v : row) put(v);
        os << '\n';
    }
}

template LpSolution<double> solve_lp(const StandardLp<double>&, SolverOptions<double>);
template LpSolution<Rational> solve_lp(const StandardLp<Rational>&, SolverOptions<Rational>);
template StandardLp<double> build_primal<double>(Dim, int, std::size_t);
template StandardLp<Rational> build_primal<Rational>(Dim, int, std::size_t);
template StandardLp<double> build_dual_l1<double>(Dim, int, std::size_t);
template StandardLp<Rational> build_dual_l1<Rational>(Dim, int, std::size_t);
template double l1_objective<double>(const std::vector<double>&, Dim, int);
template Rational l1_objective<Rational>(const std::vector<Rational>&, Dim, int);
template std::array<double, 4> dual_ansatz_x0<double>(Dim);
template std::array<Rational, 4> dual_ansatz_x0<Rational>(Dim);
template PptNormResult<double> ppt_norm<double>(Dim, int, SolverOptions<double>, std::size_t);
template PptNormResult<Rational> ppt_norm<Rational>(Dim, int, SolverOptions<Rational>, std::size_t);

}  // namespace qdh
