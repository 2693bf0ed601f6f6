#include <cmath>
#include <map>
#include <vector>

#include "nslab/renorm.hpp"

namespace nslab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Gauss-Legendre nodes/weights on [-1,1], cached per order.
struct GLRule {
    std::vector<double> x, w;
};

const GLRule& gauss_legendre(int n) {
    static std::map<int, GLRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GLRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.x[i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(r)).first->second;
}

// One pass of the spherical product rule with (nr, nmu, nphi) nodes.
Tensor333 lambda_pass(const MultiplierSet& ms, LambdaKind which, int nr, int nmu, int nphi) {
    Tensor333 acc{};
    const double R = ms.h_radius();
    const GLRule& gr = gauss_legendre(nr);
    const GLRule& gm = gauss_legendre(nmu);
    const double pref = std::pow(kTwoPi, -3.0) / (8.0 * (ms.a + ms.b));

    for (int ir = 0; ir < nr; ++ir) {
        const double r = 0.5 * R * (gr.x[ir] + 1.0);
        const double wr = 0.5 * R * gr.w[ir];
        for (int im = 0; im < nmu; ++im) {
            const double mu = gm.x[im];
            const double smu = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            const double wm = gm.w[im];
            for (int ip = 0; ip < nphi; ++ip) {
                const double phi = kTwoPi * ip / nphi;
                const double wp = kTwoPi / nphi;
                const std::array<double, 3> x{r * smu * std::cos(phi), r * smu * std::sin(phi), r * mu};
                const double f = ms.eval_f(x).value;
                // r^2 Jacobian against the |x|^-4 kernel: net r^-2, and the
                // cosine difference supplies the r^2 that makes it regular.
                const double w = wr * wm * wp * pref / (r * r * f * f);
                double p[3][3];
                const double n2 = r * r;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) p[i][j] = (i == j ? 1.0 : 0.0) - x[i] * x[j] / n2;
                double cosd[3];
                for (int m = 0; m < 3; ++m) cosd[m] = ms.cos_difference(x[m]);
                if (which == LambdaKind::Lambda) {
                    double pc[3];
                    for (int j = 0; j < 3; ++j)
                        pc[j] = cosd[0] * p[0][j] + cosd[1] * p[1][j] + cosd[2] * p[2][j];
                    for (int i = 0; i < 3; ++i)
                        for (int i1 = 0; i1 < 3; ++i1)
                            for (int j = 0; j < 3; ++j) acc[i][i1][j] += w * p[i][i1] * pc[j];
                } else {
                    for (int i = 0; i < 3; ++i)
                        for (int i1 = 0; i1 < 3; ++i1)
                            for (int j = 0; j < 3; ++j) acc[i][i1][j] += w * cosd[i1] * p[i][j];
                }
            }
        }
    }
    return acc;
}

double tensor_distance(const Tensor333& a, const Tensor333& b) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int i1 = 0; i1 < 3; ++i1)
            for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(a[i][i1][j] - b[i][i1][j]));
    return worst;
}

}  // namespace

QuadratureResult compute_Lambda(const MultiplierSet& ms, LambdaKind which, double abs_tol) {
    if (abs_tol <= 0.0) throw std::invalid_argument("compute_Lambda: tolerance must be > 0");
    QuadratureResult res;
    int nr = 16, nmu = 12, nphi = 24;
    Tensor333 prev = lambda_pass(ms, which, nr, nmu, nphi);
    for (int level = 0; level < 5; ++level) {
        nr *= 2;
        nmu *= 2;
        nphi *= 2;
        Tensor333 cur = lambda_pass(ms, which, nr, nmu, nphi);
        const double d = tensor_distance(cur, prev);
        res.value = cur;
        res.error_estimate = d;
        if (d <= abs_tol) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    res.converged = false;
    return res;
}

}  // namespace nslab
