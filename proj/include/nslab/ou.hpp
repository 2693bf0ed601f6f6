#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "nslab/discrete_ops.hpp"
#include "nslab/field.hpp"
#include "nslab/multipliers.hpp"

namespace nslab {

enum class CovarianceKind { approx_approx, exact_exact, cross };

// Closed-form covariance E[Xhat^i_t(k) Xhat^j_s(k')] with k' = -k for the
// coupled pair (X = approximate semigroup, Xbar = exact semigroup) driven by
// one cylindrical Wiener process.
//   approx_approx: e^{-|k|^2 f(eps k)|t-s|} h^2 / (2|k|^2 f(eps k)) P^{ij}(k)
//   exact_exact:   e^{-|k|^2|t-s|}          h^2 / (2|k|^2)          P^{ij}(k)
//   cross:         rate 1 for t <= s, rate f(eps k) for t > s, with the
//                  shared-noise factor h^2 / (|k|^2 (f(eps k)+1)) P^{ij}(k)
cplx covariance_oracle(const Wavevector& k, double t, double s, int i, int j, CovarianceKind kind,
                       double eps, const MultiplierSet& ms);

// One retained noise mode: the canonical representative of {k, -k} with its
// rates, cutoff weight, projector and private random stream.
struct NoiseMode {
    Wavevector k;
    double lambda = 0.0;      // |k|^2 f(eps k)
    double lambda_bar = 0.0;  // |k|^2
    double h2 = 0.0;          // h(eps k)^2
    Projector proj;
    std::mt19937_64 rng;
    std::normal_distribution<double> normal{0.0, 1.0};

    std::array<cplx, 3> draw_std_complex3() {
        std::array<cplx, 3> z;
        for (auto& c : z) {
            const double re = normal(rng);
            const double im = normal(rng);
            c = cplx(re * M_SQRT1_2, im * M_SQRT1_2);
        }
        return z;
    }
};

// Coupled per-mode Gaussian state of the stochastic convolutions u1 (approx
// semigroup) and u1_bar (exact semigroup) sharing one driving noise.
class OUState {
  public:
    // stream_class separates independent sampling contexts (e.g. Monte-Carlo
    // chunks) that share one user seed.
    OUState(int N, double eps, const MultiplierSet& ms, std::uint64_t seed,
            std::uint64_t stream_class = 0);

    // Draw (X, Xbar) from the exact stationary joint law.
    void init_stationary();

    // Exact joint Gaussian update over a step dt > 0.
    void advance(double dt);

    double time() const { return t_; }
    double eps() const { return eps_; }
    const MultiplierSet& multipliers() const { return ms_; }
    const SpectralField& x() const { return x_; }
    const SpectralField& x_bar() const { return xbar_; }
    const std::vector<NoiseMode>& modes() const { return modes_; }

    // Exact OU increments for one step, written into xi / xi_bar (used by the
    // drift stepper so that a solver run and its reference share the noise
    // bitwise).  Every call consumes the same number of draws per mode.
    void draw_increments(double dt, SpectralField& xi, SpectralField& xi_bar);

    // Exact joint update of (X, Xbar) together with the smoothing trees
    // dK = (Delta_eps K + X) dt and its exact-semigroup twin: the kernel
    // integral int (dt-r) e^{-lam (dt-r)} dW is sampled jointly with the OU
    // increments (4x4 Gaussian per mode), so K carries no time-stepping bias.
    // Null pointers skip the corresponding tree.  The K fields must live on
    // the retained noise modes only (true when grown from zero by this call).
    void advance_joint(double dt, SpectralField* K, SpectralField* K_bar);

    void check_invariants(double tol = 1e-12) const;

    // columns: k1,k2,k3,comp,re,im,process
    void dump_csv(std::ostream& os) const;

  private:
    int N_;
    double eps_;
    MultiplierSet ms_;
    double t_ = 0.0;
    std::uint64_t seed_ = 0;
    std::vector<NoiseMode> modes_;
    SpectralField x_, xbar_;

    void set_mode(SpectralField& f, const Wavevector& k, const std::array<cplx, 3>& v);
    void add_mode(SpectralField& f, const Wavevector& k, const std::array<cplx, 3>& v, double decay);
};

}  // namespace nslab
