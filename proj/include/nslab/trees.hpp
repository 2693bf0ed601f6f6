#pragma once

#include <optional>

#include "nslab/besov.hpp"
#include "nslab/ou.hpp"
#include "nslab/renorm.hpp"
#include "nslab/spectral_ops.hpp"

namespace nslab {

// Exponential Euler step for d v = -Lambda_rate v + F with the source frozen
// at the left endpoint: v <- e^{-lam dt} v + dt phi1(lam dt) F.  Exact for
// constant-in-time sources; blocked modes stay 0.
void etd1_step(SpectralField& v, const SpectralField& drift, double dt, double eps,
               const MultiplierSet& ms, bool continuum_heat);

// u1^i <> u1^j: dealiased product minus the constant C0^{ij} (which only
// touches the zero mode of each entry).
std::array<std::array<SpectralField, 3>, 3> wick_pair(const SpectralField& u1, const Tensor33& c0);

// u2^p <> u1^q = u2^p u1^q + sum_m S[p][m][q] u1^m with S = C + C_tilde at the
// current time.  First index is the u2 component, second the u1 component;
// pass S = 0 for the exact-semigroup variant (plain product).
std::array<std::array<SpectralField, 3>, 3> wick_u1u2(const SpectralField& u1, const SpectralField& u2,
                                                      const Tensor333& S);

// Quadratic drift shared by the u2/u3 equations:
//   drift^i = -1/2 sum_{i1,j} P^{i i1} D_j W[term(i1,j)]
// where W is a 3x3 matrix of scalar fields and term selects the pairing.
SpectralField tree_drift(const std::array<std::array<SpectralField, 3>, 3>& W, bool symmetrize,
                         double eps, const MultiplierSet& ms, bool continuum_D);

// Joint evolution of the explicit trees (u2, u3, K) on a dt grid, for either
// the approximate operators driven by X or the exact ones driven by Xbar.
// Step order per dt: step_trees() on every side (left-endpoint sources), then
// one advance_trees() which moves the shared noise and the exact K kernels.
class TreeEvolution {
  public:
    // evolve_u3 = false skips the third tree (cheaper; Monte-Carlo checks of
    // u1 <> u2 and the K diagnostics only need u2 and K).
    TreeEvolution(OUState* noise, bool exact_side, bool evolve_u3 = true);

    // Quadratic trees only: sources at the current time, exponential update.
    // Does not advance the noise (the caller owns it so both sides share it).
    void step_trees(double dt);

    const SpectralField& u2() const { return u2_; }
    const SpectralField& u3() const { return u3_; }
    const SpectralField& K() const { return K_; }
    SpectralField& K_mut() { return K_; }
    bool exact_side() const { return exact_side_; }
    const SpectralField& u1() const;
    double time() const { return t_; }

  private:
    OUState* noise_;
    bool exact_side_;
    bool evolve_u3_ = true;
    double t_ = 0.0;
    SpectralField u2_, u3_, K_;
    Tensor33 c0_{};
};

// One full tree step: quadratic trees on both sides from the current noise,
// then the exact joint advance of (X, Xbar, K, K_bar).
void advance_trees(OUState& noise, double dt, TreeEvolution* approx, TreeEvolution* exact);

// pi_{0,<>}(P^{i i1} D_j K^j, u1^{j1}): resonant product minus C3, which is
// exactly its zeroth-chaos part.  Pass c3 = 0 for the exact-semigroup side.
SpectralField pi0_diamond_pdk(const SpectralField& K, const SpectralField& u1, int i, int i1, int j,
                              int j1, double c3, double eps, const MultiplierSet& ms,
                              const DyadicPartition& dp, bool continuum_D);

struct Pi0DiamondResult {
    SpectralField field;
    bool partial_counterterm = false;  // the C12 family has no closed form
};

// pi_{0,<>}(u3^i, u1^j) = pi_0(u3^i, u1^j) - phi1^{ij}(t) - C1^{ij}
//                          + sum_{i1} S[i][i1][j] u2^{i1}
// Only the C11 half of C1 = C11 + C12 is computable; the C12 family is
// unspecified and the call fails unless allow_partial is set.
Pi0DiamondResult pi0_diamond_u3(const SpectralField& u3, const SpectralField& u1,
                                const SpectralField& u2, int i, int j, const Tensor333& S,
                                const SecondOrderTable& so, const DyadicPartition& dp,
                                bool exact_side, bool allow_partial);

}  // namespace nslab
