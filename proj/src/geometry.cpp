#include "attobs/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace attobs {

bool is_rotation(const Mat3& R, double tol) {
    if (!R.allFinite()) return false;
    const double ortho = (R.transpose() * R - Mat3::Identity()).norm();
    return ortho <= tol && std::abs(R.determinant() - 1.0) <= tol;
}

Mat3 project_to_rotation(const Mat3& M) {
    Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 R = svd.matrixU() * svd.matrixV().transpose();
    if (R.determinant() < 0.0) {
        Mat3 flip = Mat3::Identity();
        flip(2, 2) = -1.0;
        R = svd.matrixU() * flip * svd.matrixV().transpose();
    }
    return R;
}

Mat3 skew(const Vec3& v) {
    Mat3 s;
    // clang-format off
    s <<     0.0, -v.z(),  v.y(),
           v.z(),    0.0, -v.x(),
          -v.y(),  v.x(),    0.0;
    // clang-format on
    return s;
}

Vec3 vee(const Mat3& S, double tol) {
    if ((S + S.transpose()).norm() > tol) {
        throw std::invalid_argument("vee: matrix is not skew-symmetric");
    }
    return {S(2, 1), S(0, 2), S(1, 0)};
}

Mat3 so3_exp(const Vec3& w) {
    const double angle = w.norm();
    const Mat3 W = skew(w);
    if (angle < 1e-8) {
        // Second-order series; error below angle^3 / 6 ~ 1.7e-25.
        return Mat3::Identity() + W + 0.5 * W * W;
    }
    const double s = std::sin(angle) / angle;
    const double c = (1.0 - std::cos(angle)) / (angle * angle);
    return Mat3::Identity() + s * W + c * W * W;
}

double rotation_angle(const Mat3& R) {
    // atan2 of the sine part (from the antisymmetric component) against the
    // cosine part: well-conditioned at both 0 and pi, where the pure-arccos
    // form loses half the significant digits.
    const Vec3 s = 0.5 * Vec3(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
    const double c = 0.5 * (R.trace() - 1.0);
    return std::atan2(s.norm(), c);
}

State state_action(const SymElement& X, const State& x) {
    return {x.R * X.rot, X.rot.transpose() * (x.omega + X.vel)};
}

InputVelocity velocity_action(const SymElement& X, const InputVelocity& v) {
    return {X.rot.transpose() * (v.ang_vel - X.vel), X.rot.transpose() * v.ang_accel};
}

Vec3 output_action(const SymElement& X, const Vec3& y) {
    return X.rot.transpose() * y;
}

Mat3 random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat3 Z;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) Z(r, c) = gauss(rng);
    Eigen::HouseholderQR<Mat3> qr(Z);
    Mat3 Q = qr.householderQ();
    const Mat3 upper = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the sign ambiguity of the factorisation, then map the det = -1
    // coset into SO(3) by a fixed reflection.
    Mat3 signs = Mat3::Zero();
    for (int i = 0; i < 3; ++i) signs(i, i) = upper(i, i) < 0.0 ? -1.0 : 1.0;
    Q = Q * signs;
    if (Q.determinant() < 0.0) Q.col(2) = -Q.col(2);
    return Q;
}

Vec3 random_vec3(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    return {gauss(rng), gauss(rng), gauss(rng)};
}

}  // namespace attobs
