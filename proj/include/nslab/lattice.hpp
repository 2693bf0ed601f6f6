#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace nslab {

// Lattice frequency k in Z^3 with |k_l| <= N componentwise.
struct Wavevector {
    int k1 = 0, k2 = 0, k3 = 0;

    int operator[](int axis) const {
        return axis == 0 ? k1 : (axis == 1 ? k2 : k3);
    }
    bool operator==(const Wavevector&) const = default;

    double norm2() const {
        return double(k1) * k1 + double(k2) * k2 + double(k3) * k3;
    }
    double norm() const { return std::sqrt(norm2()); }
    bool is_zero() const { return k1 == 0 && k2 == 0 && k3 == 0; }
    Wavevector negated() const { return {-k1, -k2, -k3}; }

    // Canonical representative of the {k, -k} pair: first nonzero component positive.
    bool is_canonical() const {
        if (k1 != 0) return k1 > 0;
        if (k2 != 0) return k2 > 0;
        return k3 > 0;
    }
};

// Dense cube indexing for modes in [-N, N]^3, component-major.
struct ModeBox {
    int N = 0;
    int side = 1;   // 2N+1

    explicit ModeBox(int N_) : N(N_), side(2 * N_ + 1) {
        if (N_ < 0) throw std::invalid_argument("ModeBox: N must be >= 0");
    }
    ModeBox() = default;

    std::size_t volume() const { return std::size_t(side) * side * side; }
    bool contains(const Wavevector& k) const {
        return std::abs(k.k1) <= N && std::abs(k.k2) <= N && std::abs(k.k3) <= N;
    }
    std::size_t index(const Wavevector& k) const {
        return (std::size_t(k.k1 + N) * side + std::size_t(k.k2 + N)) * side + std::size_t(k.k3 + N);
    }
    Wavevector at(std::size_t idx) const {
        const int s = side;
        int c = int(idx % s);
        idx /= s;
        int b = int(idx % s);
        int a = int(idx / s);
        return {a - N, b - N, c - N};
    }

    template <class F>
    void for_each(F&& f) const {
        for (int a = -N; a <= N; ++a)
            for (int b = -N; b <= N; ++b)
                for (int c = -N; c <= N; ++c) f(Wavevector{a, b, c});
    }
};

// Symmetric Leray projector evaluated at k: P(k) = I - k k^T / |k|^2.
// Rank 2 for k != 0; callers must not ask for k = 0.
struct Projector {
    std::array<double, 9> m{};  // row-major 3x3

    static Projector at(const Wavevector& k) {
        if (k.is_zero()) throw std::invalid_argument("Projector: k = 0 has no Leray symbol");
        const double n2 = k.norm2();
        Projector p;
        const double kv[3] = {double(k.k1), double(k.k2), double(k.k3)};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                p.m[i * 3 + j] = (i == j ? 1.0 : 0.0) - kv[i] * kv[j] / n2;
        return p;
    }

    double operator()(int i, int j) const { return m[i * 3 + j]; }

    template <class Vec3>
    Vec3 apply(const Vec3& v) const {
        Vec3 out{};
        for (int i = 0; i < 3; ++i) {
            out[i] = m[i * 3 + 0] * v[0] + m[i * 3 + 1] * v[1] + m[i * 3 + 2] * v[2];
        }
        return out;
    }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stable per-mode stream key: identical for the same (seed, k) regardless of
// truncation or epsilon, so refinement studies stay coupled mode by mode.
inline std::uint64_t mode_stream_key(std::uint64_t seed, const Wavevector& k, std::uint64_t klass = 0) {
    std::uint64_t h = splitmix64(seed ^ 0x5851f42d4c957f2dULL);
    h = splitmix64(h ^ (std::uint64_t(std::uint32_t(k.k1)) | (std::uint64_t(std::uint32_t(k.k2)) << 32)));
    h = splitmix64(h ^ std::uint64_t(std::uint32_t(k.k3)));
    h = splitmix64(h ^ klass);
    return h;
}

}  // namespace nslab
