#pragma once

#include <array>
#include <vector>

#include "nslab/dyadic.hpp"
#include "nslab/multipliers.hpp"

namespace nslab {

using Tensor33 = std::array<std::array<double, 3>, 3>;
using Tensor333 = std::array<Tensor33, 3>;          // [i][i1][j]
using Tensor3333 = std::array<Tensor333, 3>;        // [i1][i2][j1][j0]

double max_abs(const Tensor33& t);
double max_abs(const Tensor333& t);
double max_abs(const Tensor3333& t);

// All nonzero lattice frequencies inside supp h (|eps k| <= L0/2), in a fixed
// lexicographic order so reductions are bit-reproducible.
std::vector<Wavevector> retained_modes(double eps, const MultiplierSet& ms);

// P(k) itself: sum_{i1} P^{i i1} P^{j i1} collapses because P is a symmetric
// idempotent projector.
Tensor33 projector_trace(const Wavevector& k);

// Variance constants of the stochastic convolution (zeroth order):
//   C0^{ij}     = (2pi)^-3 sum_k h^2/(2|k|^2 f) P^{ij}(k)
//   C0_bar^{ij} = same with f = 1
std::pair<Tensor33, Tensor33> compute_C0(double eps, const MultiplierSet& ms);

// First-order drift constants C(t), C_tilde(t) as closed lattice sums; both
// vanish identically when a = b (the cosine difference cancels).
std::pair<Tensor333, Tensor333> compute_C(double eps, double t, const MultiplierSet& ms);

enum class LambdaKind { Lambda, Lambda1 };

struct QuadratureResult {
    Tensor333 value{};
    double error_estimate = 0.0;
    bool converged = false;
};

// Continuum limits of C / C_tilde by adaptive spherical product quadrature
// over the ball |x| <= L0/2 (the x -> 0 singularity is removable in spherical
// coordinates).
QuadratureResult compute_Lambda(const MultiplierSet& ms, LambdaKind which, double abs_tol);

// Resonant-pair constants; the dyadic weight sum_{|i-j|<=1} theta theta
// telescopes to 1 on the lattice, giving sum_{j0} C3 = 2 C exactly.
//   C3[i1][i2][j1][j0], C3_tilde[i1][j0][j1][i2]
std::pair<Tensor3333, Tensor3333> compute_C3(double eps, double t, const MultiplierSet& ms,
                                             const DyadicPartition& dp);

// Second-order double lattice sums (O(modes^2); N <= 12 recommended) plus the
// time-dependent residuals that measure how fast the approximate and exact
// kernels agree.
struct SecondOrderTable {
    Tensor33 C2{}, C2_bar{}, C11{}, C11_bar{};
    Tensor33 phi2_residual{}, phi11_residual{};
    // Exact zeroth-chaos means at the table's (eps, t): E[u2^i u2^j] for both
    // semigroups, and the u31 resonant-pair mean E[pi_0(u31^i, u1^j)] (the one
    // the C11 family controls).  These are what Monte-Carlo runs see.
    Tensor33 mean_u2u2{}, mean_u2u2_bar{};
    Tensor33 mean_pi0_u31{}, mean_pi0_u31_bar{};
    double imag_defect = 0.0;  // largest imaginary residue before taking real parts
};

SecondOrderTable compute_second_order(double eps, double t, const MultiplierSet& ms,
                                      const DyadicPartition& dp);

// Every constant at one (eps, t), plus the quadrature limits when requested.
struct RenormTable {
    double eps = 0.0;
    double t = 0.0;
    Tensor33 C0{}, C0_bar{};
    Tensor333 C{}, C_tilde{};
    Tensor333 Lambda{}, Lambda1{};
    bool has_lambda = false;
    Tensor3333 C3{}, C3_tilde{};
    SecondOrderTable second{};
    bool has_second = false;
};

RenormTable compute_renorm_table(double eps, double t, const MultiplierSet& ms,
                                 const DyadicPartition& dp, bool with_lambda, double quad_tol,
                                 bool with_second_order);

// max_{i1,i2,j1} |sum_{j0} C3 - 2 C| and the C_tilde twin.
double c3_identity_defect(const Tensor3333& c3, const Tensor333& c);
double c3_tilde_identity_defect(const Tensor3333& c3t, const Tensor333& ct);

}  // namespace nslab
