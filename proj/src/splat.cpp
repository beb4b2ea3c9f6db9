#include "pairplan/splat.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "pairplan/errors.hpp"

namespace pairplan {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kQuatNormTol = 1e-9;
constexpr double kNearPlane = 1e-4;
constexpr double kCutoffSigma = 3.0;

bool finite3(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

}  // namespace

double Vec3::norm() const { return std::sqrt(dot(*this)); }

Vec3 Vec3::normalized() const {
    const double n = norm();
    if (n <= 0.0) throw ValidationError("cannot normalize a zero vector");
    return {x / n, y / n, z / n};
}

Mat3 Mat3::transpose() const {
    Mat3 t;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) t.at(r, c) = at(c, r);
    return t;
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 out;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += at(r, k) * o.at(k, c);
            out.at(r, c) = s;
        }
    }
    return out;
}

Vec3 Mat3::operator*(const Vec3& v) const {
    return {at(0, 0) * v.x + at(0, 1) * v.y + at(0, 2) * v.z,
            at(1, 0) * v.x + at(1, 1) * v.y + at(1, 2) * v.z,
            at(2, 0) * v.x + at(2, 1) * v.y + at(2, 2) * v.z};
}

double Quat::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quat Quat::normalized() const {
    const double n = norm();
    if (n <= 0.0) throw ValidationError("cannot normalize a zero quaternion");
    return {w / n, x / n, y / n, z / n};
}

Quat Quat::operator*(const Quat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
}

Mat3 Quat::to_matrix() const {
    Mat3 r;
    const double xx = x * x, yy = y * y, zz = z * z;
    const double xy = x * y, xz = x * z, yz = y * z;
    const double wx = w * x, wy = w * y, wz = w * z;
    r.at(0, 0) = 1.0 - 2.0 * (yy + zz);
    r.at(0, 1) = 2.0 * (xy - wz);
    r.at(0, 2) = 2.0 * (xz + wy);
    r.at(1, 0) = 2.0 * (xy + wz);
    r.at(1, 1) = 1.0 - 2.0 * (xx + zz);
    r.at(1, 2) = 2.0 * (yz - wx);
    r.at(2, 0) = 2.0 * (xz - wy);
    r.at(2, 1) = 2.0 * (yz + wx);
    r.at(2, 2) = 1.0 - 2.0 * (xx + yy);
    return r;
}

Quat Quat::from_axis_angle(const Vec3& axis, double angle) {
    const Vec3 a = axis.normalized();
    const double h = 0.5 * angle;
    const double s = std::sin(h);
    return {std::cos(h), a.x * s, a.y * s, a.z * s};
}

Quat Quat::from_matrix(const Mat3& r) {
    const double trace = r.at(0, 0) + r.at(1, 1) + r.at(2, 2);
    Quat q;
    if (trace > 0.0) {
        const double s = std::sqrt(trace + 1.0) * 2.0;
        q.w = 0.25 * s;
        q.x = (r.at(2, 1) - r.at(1, 2)) / s;
        q.y = (r.at(0, 2) - r.at(2, 0)) / s;
        q.z = (r.at(1, 0) - r.at(0, 1)) / s;
    } else if (r.at(0, 0) > r.at(1, 1) && r.at(0, 0) > r.at(2, 2)) {
        const double s = std::sqrt(1.0 + r.at(0, 0) - r.at(1, 1) - r.at(2, 2)) * 2.0;
        q.w = (r.at(2, 1) - r.at(1, 2)) / s;
        q.x = 0.25 * s;
        q.y = (r.at(0, 1) + r.at(1, 0)) / s;
        q.z = (r.at(0, 2) + r.at(2, 0)) / s;
    } else if (r.at(1, 1) > r.at(2, 2)) {
        const double s = std::sqrt(1.0 + r.at(1, 1) - r.at(0, 0) - r.at(2, 2)) * 2.0;
        q.w = (r.at(0, 2) - r.at(2, 0)) / s;
        q.x = (r.at(0, 1) + r.at(1, 0)) / s;
        q.y = 0.25 * s;
        q.z = (r.at(1, 2) + r.at(2, 1)) / s;
    } else {
        const double s = std::sqrt(1.0 + r.at(2, 2) - r.at(0, 0) - r.at(1, 1)) * 2.0;
        q.w = (r.at(1, 0) - r.at(0, 1)) / s;
        q.x = (r.at(0, 2) + r.at(2, 0)) / s;
        q.y = (r.at(1, 2) + r.at(2, 1)) / s;
        q.z = 0.25 * s;
    }
    return q.normalized();
}

void GaussianPrimitive::validate() const {
    if (!finite3(mu)) throw ValidationError("primitive position must be finite");
    if (!finite3(scale) || scale.x <= 0.0 || scale.y <= 0.0 || scale.z <= 0.0)
        throw ValidationError("primitive scale must be positive");
    if (std::abs(rotation.norm() - 1.0) > kQuatNormTol)
        throw ValidationError("primitive rotation quaternion must be unit length");
    if (!std::isfinite(opacity) || opacity < 0.0 || opacity > 1.0)
        throw ValidationError("primitive opacity must lie in [0, 1]");
    if (!finite3(color) || color.x < 0.0 || color.x > 1.0 || color.y < 0.0 || color.y > 1.0 ||
        color.z < 0.0 || color.z > 1.0)
        throw ValidationError("primitive color must lie in [0, 1]^3");
}

void PinholeCamera::validate() const {
    if (width < 1 || height < 1) throw ValidationError("camera resolution must be at least 1x1");
    if (!std::isfinite(fx) || !std::isfinite(fy) || fx <= 0.0 || fy <= 0.0)
        throw ValidationError("camera focal lengths must be positive");
    if (!std::isfinite(cx) || !std::isfinite(cy))
        throw ValidationError("camera principal point must be finite");
    if (!finite3(position)) throw ValidationError("camera position must be finite");
    if (std::abs(orientation.norm() - 1.0) > kQuatNormTol)
        throw ValidationError("camera orientation quaternion must be unit length");
}

PinholeCamera PinholeCamera::look_at(const Vec3& position, const Vec3& target, const Vec3& up,
                                     double fx, double fy, int width, int height) {
    const Vec3 forward = (target - position).normalized();
    Vec3 right = forward.cross(up);
    if (right.norm() < 1e-12) throw ValidationError("look_at: view direction parallel to up");
    right = right.normalized();
    const Vec3 down = forward.cross(right);
    // columns of the camera-to-world rotation: right, down, forward
    Mat3 r;
    r.at(0, 0) = right.x;
    r.at(1, 0) = right.y;
    r.at(2, 0) = right.z;
    r.at(0, 1) = down.x;
    r.at(1, 1) = down.y;
    r.at(2, 1) = down.z;
    r.at(0, 2) = forward.x;
    r.at(1, 2) = forward.y;
    r.at(2, 2) = forward.z;
    PinholeCamera cam;
    cam.position = position;
    cam.orientation = Quat::from_matrix(r);
    cam.fx = fx;
    cam.fy = fy;
    cam.cx = (width - 1) * 0.5;
    cam.cy = (height - 1) * 0.5;
    cam.width = width;
    cam.height = height;
    return cam;
}

Mat3 covariance_from_scale_rotation(const Vec3& scale, const Quat& rotation) {
    if (!finite3(scale) || scale.x <= 0.0 || scale.y <= 0.0 || scale.z <= 0.0)
        throw ValidationError("covariance scale must be positive");
    if (std::abs(rotation.norm() - 1.0) > kQuatNormTol)
        throw ValidationError("covariance rotation quaternion must be unit length");
    const Mat3 r = rotation.to_matrix();
    Mat3 rs;  // R diag(s^2)
    for (int row = 0; row < 3; ++row) {
        rs.at(row, 0) = r.at(row, 0) * scale.x * scale.x;
        rs.at(row, 1) = r.at(row, 1) * scale.y * scale.y;
        rs.at(row, 2) = r.at(row, 2) * scale.z * scale.z;
    }
    return rs * r.transpose();
}

std::array<double, 3> symmetric_eigenvalues3(const Mat3& a) {
    const double p1 = a.at(0, 1) * a.at(0, 1) + a.at(0, 2) * a.at(0, 2) + a.at(1, 2) * a.at(1, 2);
    const double tr = a.at(0, 0) + a.at(1, 1) + a.at(2, 2);
    if (p1 == 0.0) {
        std::array<double, 3> diag{a.at(0, 0), a.at(1, 1), a.at(2, 2)};
        std::sort(diag.begin(), diag.end());
        return diag;
    }
    const double q = tr / 3.0;
    const double p2 = (a.at(0, 0) - q) * (a.at(0, 0) - q) + (a.at(1, 1) - q) * (a.at(1, 1) - q) +
                      (a.at(2, 2) - q) * (a.at(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Mat3 b;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) b.at(r, c) = (a.at(r, c) - (r == c ? q : 0.0)) / p;
    const double detb =
        b.at(0, 0) * (b.at(1, 1) * b.at(2, 2) - b.at(1, 2) * b.at(2, 1)) -
        b.at(0, 1) * (b.at(1, 0) * b.at(2, 2) - b.at(1, 2) * b.at(2, 0)) +
        b.at(0, 2) * (b.at(1, 0) * b.at(2, 1) - b.at(1, 1) * b.at(2, 0));
    const double r = std::clamp(detb / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
    const double e2 = tr - e1 - e3;
    std::array<double, 3> out{e1, e2, e3};
    std::sort(out.begin(), out.end());
    return out;
}

double gaussian_density(const Vec3& point, const GaussianPrimitive& primitive) {
    primitive.validate();
    const Mat3 rt = primitive.rotation.to_matrix().transpose();
    const Vec3 v = rt * (point - primitive.mu);
    const double qx = v.x / primitive.scale.x;
    const double qy = v.y / primitive.scale.y;
    const double qz = v.z / primitive.scale.z;
    return std::exp(-0.5 * (qx * qx + qy * qy + qz * qz));
}

namespace {

// Per-primitive screen-space footprint after EWA projection.
struct Splat {
    double z = 0.0;
    double px = 0.0, py = 0.0;
    double ia = 0.0, ib = 0.0, ic = 0.0;  // inverse 2x2 covariance [[ia,ib],[ib,ic]]
    int x0 = 0, x1 = -1, y0 = 0, y1 = -1;
    double opacity = 0.0;
    Vec3 color;
    std::array<double, 14> key{};  // full parameter tuple, breaks depth ties
};

std::array<double, 14> primitive_key(const GaussianPrimitive& g) {
    return {g.mu.x,    g.mu.y,    g.mu.z,    g.scale.x,   g.scale.y,   g.scale.z,   g.rotation.w,
            g.rotation.x, g.rotation.y, g.rotation.z, g.opacity, g.color.x, g.color.y, g.color.z};
}

bool project_splat(const GaussianPrimitive& g, const PinholeCamera& cam, const Mat3& r_wc,
                   Splat& out) {
    const Vec3 t = r_wc * (g.mu - cam.position);
    if (t.z < kNearPlane) return false;

    out.z = t.z;
    out.px = cam.fx * t.x / t.z + cam.cx;
    out.py = cam.fy * t.y / t.z + cam.cy;

    const Mat3 cov_cam = r_wc * covariance_from_scale_rotation(g.scale, g.rotation) *
                         r_wc.transpose();
    // J = d(px,py)/d(tx,ty,tz), local affine approximation at the center
    const double j00 = cam.fx / t.z, j02 = -cam.fx * t.x / (t.z * t.z);
    const double j11 = cam.fy / t.z, j12 = -cam.fy * t.y / (t.z * t.z);
    const double c00 = cov_cam.at(0, 0), c01 = cov_cam.at(0, 1), c02 = cov_cam.at(0, 2);
    const double c11 = cov_cam.at(1, 1), c12 = cov_cam.at(1, 2), c22 = cov_cam.at(2, 2);
    const double a = j00 * (j00 * c00 + j02 * c02) + j02 * (j00 * c02 + j02 * c22);
    const double b = j00 * (j11 * c01 + j12 * c02) + j02 * (j11 * c12 + j12 * c22);
    const double c = j11 * (j11 * c11 + j12 * c12) + j12 * (j11 * c12 + j12 * c22);

    const double det = a * c - b * b;
    if (!(det > 1e-24)) return false;
    out.ia = c / det;
    out.ib = -b / det;
    out.ic = a / det;

    const double lam_max = 0.5 * (a + c) + std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    const double radius = kCutoffSigma * std::sqrt(std::max(lam_max, 0.0));
    out.x0 = std::max(0, static_cast<int>(std::floor(out.px - radius)));
    out.x1 = std::min(cam.width - 1, static_cast<int>(std::ceil(out.px + radius)));
    out.y0 = std::max(0, static_cast<int>(std::floor(out.py - radius)));
    out.y1 = std::min(cam.height - 1, static_cast<int>(std::ceil(out.py + radius)));
    if (out.x0 > out.x1 || out.y0 > out.y1) return false;

    out.opacity = g.opacity;
    out.color = g.color;
    out.key = primitive_key(g);
    return true;
}

}  // namespace

RenderedFrame render(const std::vector<GaussianPrimitive>& scene, const PinholeCamera& camera,
                     const Vec3& background) {
    camera.validate();
    for (const auto& g : scene) g.validate();

    const Mat3 r_wc = camera.world_to_camera_rotation();
    std::vector<Splat> splats;
    splats.reserve(scene.size());
    for (const auto& g : scene) {
        Splat s;
        if (project_splat(g, camera, r_wc, s)) splats.push_back(s);
    }
    std::sort(splats.begin(), splats.end(), [](const Splat& a, const Splat& b) {
        if (a.z != b.z) return a.z < b.z;
        return a.key < b.key;
    });

    const int h = camera.height, w = camera.width;
    RenderedFrame frame;
    frame.color = Image(h, w, 3);
    frame.depth = Grid(h, w);
    frame.alpha = Grid(h, w);
    Grid transmittance(h, w, 1.0);

    for (const auto& s : splats) {
        for (int y = s.y0; y <= s.y1; ++y) {
            for (int x = s.x0; x <= s.x1; ++x) {
                const double dx = x - s.px;
                const double dy = y - s.py;
                const double quad = s.ia * dx * dx + 2.0 * s.ib * dx * dy + s.ic * dy * dy;
                if (quad > kCutoffSigma * kCutoffSigma) continue;
                const double alpha_i = s.opacity * std::exp(-0.5 * quad);
                if (alpha_i < 1e-12) continue;
                double& t = transmittance.at(y, x);
                const double weight = t * alpha_i;
                frame.color.at(0, y, x) += weight * s.color.x;
                frame.color.at(1, y, x) += weight * s.color.y;
                frame.color.at(2, y, x) += weight * s.color.z;
                frame.depth.at(y, x) += weight * s.z;
                frame.alpha.at(y, x) += weight;
                t *= (1.0 - alpha_i);
            }
        }
    }

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double t = transmittance.at(y, x);
            frame.color.at(0, y, x) += t * background.x;
            frame.color.at(1, y, x) += t * background.y;
            frame.color.at(2, y, x) += t * background.z;
        }
    }
    return frame;
}

}  // namespace pairplan
