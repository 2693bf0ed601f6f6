#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nslab/besov.hpp"
#include "nslab/multipliers.hpp"

namespace nslab {

// Random mean-zero Hermitian field with |u_hat(k)| ~ |k|^{-slope}.
SpectralField random_field(int N, std::uint64_t seed, double slope = 1.0,
                           FieldRole role = FieldRole::scalar);

struct ProbeParams {
    double alpha = -0.5;
    double delta = 0.5;
    double kappa = 0.05;
    double eta = 0.5;    // D^eps - D rate exponent
    double beta0 = 0.5;  // stencil-shift smoothing exponent
    std::vector<double> t_grid = {0.05, 0.1, 0.5, 1.0};
    int trials = 20;
    int N = 12;
    std::uint64_t seed = 7;
};

struct RatioReport {
    std::string name;  // which operator estimate was probed
    double eps = 0.0;
    double sup_ratio = 0.0;
    int samples = 0;
};

// Empirical suprema of the normalized operator ratios:
//   heat_smoothing      t^{d/2} ||P_t^e u||_{a+d-k} / ||u||_a
//   heat_time_holder    ||(P_t^e - P_s^e) u||_{a-k} / ((t-s)^{d/2} ||u||_{a+d})
//   discrete_derivative ||D_1^e u||_{a-k} / ||u||_{a+1}
//   derivative_error    ||(D_1^e - D_1) u||_{a-k} / (e^eta ||u||_{a+2-...})
//   stencil_shift       ||u(.+a e e_1) - u(.-b e e_1)||_{a+1-b0-k} / (e^b0 ||u||_{a+1})
// One report per (estimate, eps); uniform boundedness over the eps ladder is
// the empirical content of the Schauder-type estimates.
std::vector<RatioReport> schauder_probe(const MultiplierSet& ms, const std::vector<double>& eps_list,
                                        const ProbeParams& p, const DyadicPartition& dp);

}  // namespace nslab
