#pragma once

// Shared small utilities: fixed-capacity d-vectors (d <= 3), sphere-measure
// constants, a deterministic normal generator, and worker-pool helpers.

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace nlvc {

inline constexpr double kPi = 3.14159265358979323846;

// Spatial vector with runtime dimension d in {1,2,3}. Unused slots stay zero,
// so dot/norm can loop over all three lanes unconditionally.
struct Vec {
    std::array<double, 3> v{0.0, 0.0, 0.0};

    Vec() = default;
    Vec(double x, double y = 0.0, double z = 0.0) : v{x, y, z} {}

    double& operator[](int i) { return v[static_cast<size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<size_t>(i)]; }

    Vec operator+(const Vec& o) const { return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]}; }
    Vec operator-(const Vec& o) const { return {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2]}; }
    Vec operator-() const { return {-v[0], -v[1], -v[2]}; }
    Vec operator*(double s) const { return {v[0] * s, v[1] * s, v[2] * s}; }
};

inline Vec operator*(double s, const Vec& a) { return a * s; }

inline double dot(const Vec& a, const Vec& b) {
    return a.v[0] * b.v[0] + a.v[1] * b.v[1] + a.v[2] * b.v[2];
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec cross(const Vec& a, const Vec& b) {
    return {a.v[1] * b.v[2] - a.v[2] * b.v[1],
            a.v[2] * b.v[0] - a.v[0] * b.v[2],
            a.v[0] * b.v[1] - a.v[1] * b.v[0]};
}

// Surface area of the unit sphere S^{d-1} in R^d; sphere_area(1) = 2 counts
// the two endpoints of the 1-d "sphere" so that radial reduction
// \int_{R^d} f(|x|) dx = sphere_area(d) \int_0^inf f(r) r^{d-1} dr holds in
// every dimension.
inline double sphere_area(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * kPi;
        case 3: return 4.0 * kPi;
        default: throw std::invalid_argument("sphere_area: d must be 1, 2, or 3");
    }
}

// 64-bit FNV-1a, used for configuration fingerprints in reports.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Deterministic standard-normal stream. Uses the SplitMix64 generator with an
// explicit Box-Muller transform so that the byte-for-byte sequence depends
// only on the seed, not on the standard library's distribution internals.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : state_(seed) {}

    double uniform() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z = z ^ (z >> 31);
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Worker count shared by the compute kernels. Partitioning never changes the
// result: each output entry is produced by exactly one worker with a fixed
// inner summation order.
inline std::atomic<int>& worker_count_ref() {
    static std::atomic<int> n{1};
    return n;
}

inline void set_worker_count(int n) { worker_count_ref().store(n > 0 ? n : 1); }
inline int worker_count() { return worker_count_ref().load(); }

template <typename F>
void parallel_for(std::int64_t count, F&& body) {
    const int workers = worker_count();
    if (workers <= 1 || count < 1024) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    const std::int64_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::int64_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace nlvc
