#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "pairplan/grid.hpp"

namespace pairplan {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const;
    Vec3 normalized() const;
};

struct Mat3 {
    // row-major
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return {}; }
    Mat3 transpose() const;
    Mat3 operator*(const Mat3& o) const;
    Vec3 operator*(const Vec3& v) const;
    double at(int r, int c) const { return m[static_cast<std::size_t>(r) * 3 + c]; }
    double& at(int r, int c) { return m[static_cast<std::size_t>(r) * 3 + c]; }
};

struct Quat {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    double norm() const;
    Quat normalized() const;
    Quat operator*(const Quat& o) const;
    Mat3 to_matrix() const;  // requires a normalized quaternion

    static Quat from_axis_angle(const Vec3& axis, double angle);
    static Quat from_matrix(const Mat3& r);
};

// Degree-0 color Gaussian primitive: position, anisotropic covariance via
// scale + rotation, opacity and a constant RGB color.
struct GaussianPrimitive {
    Vec3 mu;
    Vec3 scale{1.0, 1.0, 1.0};
    Quat rotation;
    double opacity = 1.0;
    Vec3 color{1.0, 1.0, 1.0};

    void validate() const;
};

struct PinholeCamera {
    Vec3 position;
    Quat orientation;  // camera-to-world rotation; camera looks along +z
    double fx = 1.0, fy = 1.0;
    double cx = 0.0, cy = 0.0;
    int width = 0, height = 0;

    void validate() const;
    Mat3 world_to_camera_rotation() const { return orientation.to_matrix().transpose(); }
    Vec3 world_to_camera(const Vec3& p) const {
        return world_to_camera_rotation() * (p - position);
    }

    // Camera at `position` looking toward `target`, `up` fixing the roll.
    static PinholeCamera look_at(const Vec3& position, const Vec3& target, const Vec3& up,
                                 double fx, double fy, int width, int height);
};

struct RenderedFrame {
    Image color;  // H x W x 3 in [0, 1]
    Grid depth;   // blended camera-space z, 0 where nothing contributes
    Grid alpha;   // accumulated opacity in [0, 1]
};

// Sigma = R diag(s^2) R^T.
Mat3 covariance_from_scale_rotation(const Vec3& scale, const Quat& rotation);

// Eigenvalues of a symmetric 3x3 matrix, ascending.
std::array<double, 3> symmetric_eigenvalues3(const Mat3& a);

// exp(-1/2 (X-mu)^T Sigma^-1 (X-mu)); 1 exactly at X = mu.
double gaussian_density(const Vec3& point, const GaussianPrimitive& primitive);

// Front-to-back alpha compositing of EWA-projected Gaussians. Primitives are
// sorted internally by camera-space depth, so input order never matters.
RenderedFrame render(const std::vector<GaussianPrimitive>& scene, const PinholeCamera& camera,
                     const Vec3& background);

struct FixtureScene {
    std::vector<GaussianPrimitive> primitives;
    std::vector<PinholeCamera> cameras;  // indexed in capture order
};

// Deterministic synthetic scenes: "arch" (12-camera sweep around a
// tooth-like arch) and "triad" (same scene, 3 cameras).
FixtureScene make_fixture_scene(const std::string& preset, std::uint64_t seed);

std::vector<std::string> fixture_presets();

}  // namespace pairplan
