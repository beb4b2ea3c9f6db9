#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pairplan/errors.hpp"
#include "pairplan/splat.hpp"

namespace pairplan {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Raw-bits uniform keeps the stream identical across standard libraries;
// std::uniform_real_distribution is implementation-defined.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double jitter(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

Vec3 clamp01(const Vec3& v) {
    auto c = [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); };
    return {c(v.x), c(v.y), c(v.z)};
}

GaussianPrimitive make_tooth(std::mt19937_64& rng, double theta, double row_z) {
    GaussianPrimitive g;
    const double radius = 1.0 + jitter(rng, -0.02, 0.02);
    g.mu = {radius * std::sin(theta) + jitter(rng, -0.01, 0.01),
            radius * std::cos(theta) + jitter(rng, -0.01, 0.01),
            row_z + jitter(rng, -0.015, 0.015)};
    g.scale = {0.065 * jitter(rng, 0.85, 1.15), 0.055 * jitter(rng, 0.85, 1.15),
               0.09 * jitter(rng, 0.85, 1.15)};
    const Vec3 axis{jitter(rng, -1.0, 1.0), jitter(rng, -1.0, 1.0), jitter(rng, 0.2, 1.0)};
    g.rotation = Quat::from_axis_angle(axis, jitter(rng, -0.25, 0.25)).normalized();
    g.opacity = jitter(rng, 0.78, 0.95);
    g.color = clamp01({0.92 + jitter(rng, -0.05, 0.04), 0.9 + jitter(rng, -0.05, 0.04),
                       0.84 + jitter(rng, -0.06, 0.04)});
    return g;
}

GaussianPrimitive make_gum(std::mt19937_64& rng, double theta, double row_z) {
    GaussianPrimitive g;
    // arc jitter keeps mirrored rows off exactly shared (x, y) columns, which
    // would tie camera depths bitwise for the in-plane sweep cameras
    const double th = theta + jitter(rng, -0.02, 0.02);
    g.mu = {1.04 * std::sin(th), 1.04 * std::cos(th), row_z + jitter(rng, -0.01, 0.01)};
    g.scale = {0.14, 0.12, 0.1};
    g.rotation = Quat{};
    g.opacity = 0.6;
    g.color = clamp01({0.78 + jitter(rng, -0.04, 0.04), 0.42 + jitter(rng, -0.03, 0.03),
                       0.44 + jitter(rng, -0.03, 0.03)});
    return g;
}

std::vector<GaussianPrimitive> make_mouth(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<GaussianPrimitive> prims;

    const int teeth_per_row = 14;
    for (double row_z : {0.1, -0.1}) {
        for (int k = 0; k < teeth_per_row; ++k) {
            const double theta =
                (-80.0 + 160.0 * k / (teeth_per_row - 1)) * kPi / 180.0;
            prims.push_back(make_tooth(rng, theta, row_z));
        }
    }
    const int gums_per_row = 7;
    for (double row_z : {0.22, -0.22}) {
        for (int k = 0; k < gums_per_row; ++k) {
            const double theta = (-72.0 + 144.0 * k / (gums_per_row - 1)) * kPi / 180.0;
            prims.push_back(make_gum(rng, theta, row_z));
        }
    }

    GaussianPrimitive tongue;
    tongue.mu = {0.0, 0.35, -0.02};
    tongue.scale = {0.35, 0.3, 0.12};
    tongue.rotation = Quat{};
    tongue.opacity = 0.5;
    tongue.color = {0.75, 0.4, 0.42};
    prims.push_back(tongue);
    return prims;
}

std::vector<PinholeCamera> make_sweep(int count) {
    const Vec3 ring_center{0.0, 0.6, 0.0};
    const Vec3 target{0.0, 0.55, 0.0};
    const Vec3 up{0.0, 0.0, 1.0};
    std::vector<PinholeCamera> cams;
    cams.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double psi =
            (count == 1 ? 0.0 : (-75.0 + 150.0 * k / (count - 1))) * kPi / 180.0;
        const Vec3 pos = ring_center + Vec3{3.0 * std::sin(psi), 3.0 * std::cos(psi), 0.0};
        cams.push_back(PinholeCamera::look_at(pos, target, up, 80.0, 80.0, 64, 64));
    }
    return cams;
}

}  // namespace

std::vector<std::string> fixture_presets() { return {"arch", "triad"}; }

FixtureScene make_fixture_scene(const std::string& preset, std::uint64_t seed) {
    int camera_count = 0;
    if (preset == "arch") {
        camera_count = 12;
    } else if (preset == "triad") {
        camera_count = 3;
    } else {
        throw ValidationError("unknown fixture preset '" + preset + "' (expected arch or triad)");
    }
    FixtureScene scene;
    scene.primitives = make_mouth(seed);
    scene.cameras = make_sweep(camera_count);
    return scene;
}

}  // namespace pairplan
