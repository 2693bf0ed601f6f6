#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "nslab/besov.hpp"
#include "nslab/ou.hpp"
#include "nslab/renorm.hpp"

namespace nslab {

struct SimConfig {
    int N = 16;
    double eps = 0.2;
    double dt = 1e-3;
    double T = 0.25;
    double z = 0.6;      // blow-up norm exponent, z in (1/2, 1)
    double delta = 0.1;
    Preset preset = Preset::finite_difference;
    double a = 1.0;
    double b = 0.0;
    double L0 = 2.0;
    std::uint64_t seed = 1;
    double L = 50.0;     // blow-up threshold; tau_L is capped at L as well
    bool counterterms = true;
    bool nonlinearity = true;  // off: pure stochastic convolution (testing)

    MultiplierSet multipliers() const { return MultiplierSet::make(preset, a, b, L0); }
};

enum class StopReason { horizon, blowup };

struct Trajectory {
    std::vector<double> times;
    std::vector<double> norms;  // ||u(t)||_{C^{-z}} at every recorded time
    StopReason stop = StopReason::horizon;
    double tau = 0.0;  // min(first time the norm reaches L, L)
};

// Drift of (1.3): -1/2 sum_{i,j} P^{i0 i} D_j^eps (u^i u^j + sum_{i1} S^{i,i1,j} u^{i1}).
// S is the symmetrized counterterm tensor C + C_tilde + (i<->j swap); pass
// zeros to disable.  continuum_ops selects the reference equation's exact
// Laplacian rates and derivative D_j.
SpectralField nonlinear_drift(const SpectralField& u, const Tensor333& S, double eps,
                              const MultiplierSet& ms, bool continuum_ops);

// Deterministic low-mode divergence-free initial datum with C^{-z} norm 1.
SpectralField default_initial_field(int N, double z, const DyadicPartition& dp);

// Evolves the approximating equation and its reference (exact heat semigroup,
// exact derivative, no counterterms) on one shared noise.  Both runs consume
// identical per-mode draws, so a standalone run() with the same seed is
// coupled bitwise to a standalone run_reference().
class CoupledSolver {
  public:
    CoupledSolver(const SimConfig& cfg, const SpectralField& u0, const DyadicPartition& dp);

    void step();
    double time() const { return t_; }
    const SpectralField& u() const { return u_; }
    const SpectralField& u_ref() const { return ubar_; }
    const OUState& noise() const { return noise_; }

  private:
    SimConfig cfg_;
    MultiplierSet ms_;
    const DyadicPartition* dp_;
    OUState noise_;
    SpectralField u_, ubar_, xi_, xib_;
    double t_ = 0.0;
};

struct CoupledResult {
    Trajectory approx;     // the approximating run
    Trajectory reference;  // the exact-semigroup run (norm series only filled
                           // when it is the tracked field, i.e. run_reference)
    std::vector<double> diff_norms;  // ||u - u_ref||_{C^{-z}} per recorded time
    double sup_diff = 0.0;           // over t <= min(horizon, tau)
    double terminal_diff = 0.0;
};

Trajectory run(const SimConfig& cfg);
Trajectory run_reference(const SimConfig& cfg);
CoupledResult run_coupled(const SimConfig& cfg);

}  // namespace nslab
