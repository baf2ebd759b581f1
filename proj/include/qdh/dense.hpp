#pragma once

// Explicit dense constructions on C^d (x) C^d for small d: the projector
// family Theta_0..Theta_3, the two special states, exact signed-permutation
// twirling by group enumeration, the discrimination witness and the
// computational-basis measurement, and a cyclic Jacobi eigensolver used for
// PSD certification. Everything in scope is real symmetric.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "qdh/commutant.hpp"
#include "qdh/errors.hpp"

namespace qdh {

/// Largest d for which dense d^2 x d^2 matrices are constructed.
inline constexpr int kDenseCutoff = 12;
/// Largest d for which the full group (d! 2^d elements) is enumerated.
inline constexpr int kGroupCutoff = 5;

/// Real symmetric operator on C^d (x) C^d, row-major d^2 x d^2, product basis
/// |i>|j> ordered as i*d + j.
struct DenseOp {
    int d = 0;
    int side = 0;  // = d^2
    std::vector<double> a;

    DenseOp() = default;
    DenseOp(int dd, std::vector<double> entries);

    double& at(int r, int c) { return a[std::size_t(r) * std::size_t(side) + std::size_t(c)]; }
    double at(int r, int c) const { return a[std::size_t(r) * std::size_t(side) + std::size_t(c)]; }
};

/// One signed permutation U_pi V_eps: x |i> -> eps_i |pi(i)>.
struct GroupElement {
    std::vector<int> perm;
    std::vector<int> signs;  // entries in {-1, +1}
};

DenseOp dense_zero(int d);
DenseOp dense_identity(int d);

DenseOp dense_add(const DenseOp& x, const DenseOp& y, double cx = 1.0, double cy = 1.0);
DenseOp dense_matmul(const DenseOp& x, const DenseOp& y);
double dense_trace(const DenseOp& x);
double dense_trace_product(const DenseOp& x, const DenseOp& y);
double dense_max_abs(const DenseOp& x);

/// The four mutually orthogonal projectors (Phi, P-Phi, Q+, Q-); they resolve
/// the identity and have ranks theta_ranks(d).
std::array<DenseOp, 4> build_projectors(Dim d);

/// (sigma0, sigma1): PSD, trace one, mutually orthogonal, PT-invariant.
std::pair<DenseOp, DenseOp> build_states(Dim d);

/// Transposition of the second tensor factor: ((i,j),(i',j')) -> ((i,j'),(i',j)).
DenseOp partial_transpose(const DenseOp& x);

/// All d! 2^d signed permutations, permutations in lexicographic order and
/// sign masks in increasing binary order.
std::vector<GroupElement> enumerate_group(Dim d);

/// (U (x) U) X (U (x) U)^T for one group element, computed by index
/// relabelling in O(d^4).
DenseOp group_conjugate(const DenseOp& x, const GroupElement& g);

/// Exact group average of (U (x) U) X (U (x) U)^T, accumulated blockwise with
/// a fixed pairwise tree so the result is reproducible under any thread count.
DenseOp twirl_exact(const DenseOp& x);

/// The closed-form projection sum_i Tr[X Theta_i]/Tr[Theta_i] Theta_i.
DenseOp twirl_closed_form(const DenseOp& x);

/// sum_{U in G} (Tr U)^4, an exact integer.
std::int64_t character_sum_numerator(Dim d);

/// Group average of (Tr U)^4; equals 4 for every d >= 2.
double character_sum(Dim d);

/// Number of group elements d! 2^d.
std::int64_t group_order(Dim d);

/// Witness E = P - Phi + (2/d) Q-. Returns Tr[E (sigma1 - sigma0)] = 1/2+1/d
/// and whether 0 <= E <= 1 and 0 <= E^Gamma <= 1 hold (eigenvalue floor
/// -1e-8 relative to the max-abs entry).
std::pair<double, bool> witness_value(Dim d);

/// Bias of measuring both sides in the computational basis and checking
/// agreement: Tr[sum_i |ii><ii| (sigma1 - sigma0)] = 1/2 - 1/d. This is a
/// certified lower bound on the LOCC discrimination bias.
double basis_measurement_bias(Dim d);

/// All eigenvalues of a symmetric n x n matrix by cyclic Jacobi rotations,
/// accurate to ~1e-10 relative to the max-abs entry; unordered. When vectors
/// is non-null it receives the accumulated rotation matrix (columns are the
/// eigenvectors, matching the returned order).
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n,
                                       std::vector<double>* vectors = nullptr);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const DenseOp& x);
double min_eigenvalue_raw(std::vector<double> a, int n);

/// Dense reconstruction sum_i c_i Theta_{i1} (x) ... (x) Theta_{ik}. The k=1
/// case is a DenseOp; for k >= 2 the raw matrix (side d^{2k}) is returned.
DenseOp dense_from_commutant(const CommutantOp<double>& op);
std::vector<double> dense_from_coeffs(Dim d, int k, const std::vector<double>& coeffs);

/// Kronecker product of two square matrices.
std::vector<double> dense_kron(const std::vector<double>& x, int nx, const std::vector<double>& y,
                               int ny);

}  // namespace qdh
