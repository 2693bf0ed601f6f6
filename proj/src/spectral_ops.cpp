#include "nslab/spectral_ops.hpp"

namespace nslab {

SpectralField leray_project(const SpectralField& u) {
    if (u.role() != FieldRole::vector3) throw std::invalid_argument("leray_project: vector field required");
    SpectralField out = u;
    u.box().for_each([&](const Wavevector& k) {
        if (k.is_zero()) return;
        const double n2 = k.norm2();
        const cplx dot = double(k.k1) * u.at(0, k) + double(k.k2) * u.at(1, k) + double(k.k3) * u.at(2, k);
        const cplx s = dot / n2;
        out.at(0, k) = u.at(0, k) - double(k.k1) * s;
        out.at(1, k) = u.at(1, k) - double(k.k2) * s;
        out.at(2, k) = u.at(2, k) - double(k.k3) * s;
    });
    return out;
}

SpectralField divergence(const SpectralField& u) {
    if (u.role() != FieldRole::vector3) throw std::invalid_argument("divergence: vector field required");
    SpectralField out = SpectralField::scalar(u.N());
    u.box().for_each([&](const Wavevector& k) {
        const cplx dot = double(k.k1) * u.at(0, k) + double(k.k2) * u.at(1, k) + double(k.k3) * u.at(2, k);
        out.at(k) = cplx(0.0, 1.0) * dot;
    });
    return out;
}

double divergence_max(const SpectralField& u) {
    double worst = 0.0;
    u.box().for_each([&](const Wavevector& k) {
        const cplx dot = double(k.k1) * u.at(0, k) + double(k.k2) * u.at(1, k) + double(k.k3) * u.at(2, k);
        worst = std::max(worst, std::abs(dot));
    });
    return worst;
}

std::vector<GridField> component_grids(const SpectralField& u, int M) {
    std::vector<GridField> out;
    out.reserve(u.components());
    for (int c = 0; c < u.components(); ++c) out.push_back(to_physical(u.component(c), M));
    return out;
}

SpectralField grid_product_to_spectral(const GridField& a, const GridField& b, int N) {
    if (a.M != b.M) throw std::invalid_argument("grid_product_to_spectral: grid mismatch");
    GridField w(FieldRole::scalar, a.M);
    const std::size_t n = w.points();
    for (std::size_t i = 0; i < n; ++i) w.values[i] = a.values[i] * b.values[i];
    return to_spectral_keep_mean(w, N, FieldRole::scalar);
}

SpectralField dealiased_product(const SpectralField& u, const SpectralField& v) {
    if (u.role() != FieldRole::scalar || v.role() != FieldRole::scalar)
        throw std::invalid_argument("dealiased_product: scalar fields required");
    if (u.N() != v.N()) throw std::invalid_argument("dealiased_product: truncation mismatch");
    const int M = product_grid_size(u.N());
    GridField gu = to_physical(u, M);
    GridField gv = to_physical(v, M);
    GridField gw(FieldRole::scalar, M);
    const std::size_t n = gw.points();
    for (std::size_t i = 0; i < n; ++i) gw.values[i] = gu.values[i] * gv.values[i];
    return to_spectral_keep_mean(gw, u.N(), FieldRole::scalar);
}

}  // namespace nslab
