#include "hopsim/dynamics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>

#include "hopsim/errors.hpp"

namespace hopsim {

namespace {

Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0, -v.z(), v.y(),
       v.z(), 0, -v.x(),
       -v.y(), v.x(), 0;
  return s;
}

// Angular Jacobian of body b: column k = axis_k for k < b.
Mat34 angular_jacobian(const ChainData& c, int body) {
  Mat34 j = Mat34::Zero();
  for (int k = 0; k < body; ++k) j.col(k) = c.axis[k];
  return j;
}

std::array<Mat34, 4> angular_jacobian_partials(const ChainData& c, int body) {
  std::array<Mat34, 4> dj;
  for (int m = 0; m < 4; ++m) {
    dj[m] = Mat34::Zero();
    for (int k = 0; k < body; ++k)
      if (m < k) dj[m].col(k) = c.axis[m].cross(c.axis[k]);
  }
  return dj;
}

void add_reflected_rotor_inertia(const RobotParams& p, Mat4& m) {
  const double nh = p.hip_total_ratio();
  const double nk = p.knee_total_ratio();
  m(kHip, kHip) += nh * nh * p.hip_motor.rotor_inertia;
  m(kKnee, kKnee) += nk * nk * p.knee_motor.rotor_inertia;
}

}  // namespace

Mat4 mass_matrix(const RobotParams& params, const Vec4& q) {
  const ChainData c = compute_chain(params, q);
  Mat4 m = Mat4::Zero();
  for (int b = 1; b <= 4; ++b) {
    const LinkInertial& link = params.links[b];
    const Mat34 jv = point_jacobian(c, c.com[b], b);
    const Mat34 jw = angular_jacobian(c, b);
    const Mat3 iw = c.R[b] * link.inertia * c.R[b].transpose();
    m += link.mass * jv.transpose() * jv + jw.transpose() * iw * jw;
  }
  const Mat34 jcw = point_jacobian(c, c.counterweight, 2);
  m += params.counterweight_mass * jcw.transpose() * jcw;
  add_reflected_rotor_inertia(params, m);
  return m;
}

std::array<Mat4, 4> mass_matrix_partials(const RobotParams& params, const Vec4& q) {
  const ChainData c = compute_chain(params, q);
  std::array<Mat4, 4> dm;
  dm.fill(Mat4::Zero());

  auto accumulate_point_mass = [&](double mass, const Vec3& x, int body) {
    const Mat34 jv = point_jacobian(c, x, body);
    const auto djv = point_jacobian_partials(c, x, body);
    for (int m = 0; m < 4; ++m) {
      const Mat4 cross = jv.transpose() * djv[m];
      dm[m] += mass * (cross + cross.transpose());
    }
  };

  for (int b = 1; b <= 4; ++b) {
    const LinkInertial& link = params.links[b];
    accumulate_point_mass(link.mass, c.com[b], b);

    const Mat34 jw = angular_jacobian(c, b);
    const auto djw = angular_jacobian_partials(c, b);
    const Mat3 iw = c.R[b] * link.inertia * c.R[b].transpose();
    for (int m = 0; m < b; ++m) {
      // dR/dq_m = [axis_m]x R for joints upstream of body b
      const Mat3 ax = skew(c.axis[m]);
      const Mat3 diw = ax * iw - iw * ax;
      const Mat4 cross = djw[m].transpose() * iw * jw;
      dm[m] += cross + cross.transpose() + jw.transpose() * diw * jw;
    }
    // joints m >= b do not move body b, but djw may still be nonzero rows
    // for m < b handled above; nothing else contributes.
  }
  accumulate_point_mass(params.counterweight_mass, c.counterweight, 2);
  return dm;
}

Mat4 coriolis_matrix(const RobotParams& params, const Vec4& q, const Vec4& qdot) {
  const auto dm = mass_matrix_partials(params, q);
  Mat4 c = Mat4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double cij = 0;
      for (int k = 0; k < 4; ++k)
        cij += 0.5 * (dm[k](i, j) + dm[j](i, k) - dm[i](j, k)) * qdot[k];
      c(i, j) = cij;
    }
  return c;
}

Vec4 gravity_vector(const RobotParams& params, const Vec4& q) {
  const ChainData c = compute_chain(params, q);
  const double g = params.gravity;
  Vec4 grad = Vec4::Zero();
  auto add_point = [&](double mass, const Vec3& x, int body) {
    for (int m = 0; m < body; ++m)
      grad[m] += mass * g * c.axis[m].cross(x - c.origin[m]).z();
  };
  for (int b = 1; b <= 4; ++b) add_point(params.links[b].mass, c.com[b], b);
  add_point(params.counterweight_mass, c.counterweight, 2);
  return grad;
}

Mat42 actuation_matrix() {
  Mat42 b = Mat42::Zero();
  b(kHip, 0) = 1.0;
  b(kKnee, 1) = 1.0;
  return b;
}

double spring_torque(const SpringParams& spring, double knee_angle) {
  const double deflection = knee_angle - spring.rest_angle;
  if (spring.engagement == SpringEngagement::Unilateral && deflection < 0.0) return 0.0;
  return -spring.stiffness * deflection;
}

Vec4 spring_torque_vector(const RobotParams& params, const Vec4& q) {
  Vec4 tau = Vec4::Zero();
  tau[kKnee] = spring_torque(params.knee_spring, q[kKnee]);
  return tau;
}

Vec4 friction_torque(const RobotParams& params, const Vec4& qdot) {
  Vec4 tau = Vec4::Zero();
  if (!params.friction_enabled) return tau;
  const double eps = params.coulomb_smoothing;
  auto joint_friction = [eps](const MotorParams& m, double w) {
    return -(m.viscous_friction * w + m.coulomb_friction * std::tanh(w / eps));
  };
  tau[kHip] = joint_friction(params.hip_motor, qdot[kHip]);
  tau[kKnee] = joint_friction(params.knee_motor, qdot[kKnee]);
  return tau;
}

DynamicsTerms dynamics_terms(const RobotParams& params, const Vec4& q, const Vec4& qdot) {
  return DynamicsTerms{mass_matrix(params, q), coriolis_matrix(params, q, qdot),
                       gravity_vector(params, q), actuation_matrix()};
}

namespace {

Vec4 applied_torque(const RobotParams& params, const Vec4& q, const Vec4& qdot, const Vec2& u) {
  return actuation_matrix() * u + spring_torque_vector(params, q) +
         friction_torque(params, qdot);
}

Eigen::LLT<Mat4> factor_mass(const RobotParams& params, const Vec4& q, Mat4* m_out) {
  const Mat4 m = mass_matrix(params, q);
  if (m_out) *m_out = m;
  Eigen::LLT<Mat4> llt(m);
  if (llt.info() != Eigen::Success)
    throw SingularMass("mass matrix is not positive definite at this configuration");
  return llt;
}

}  // namespace

Vec4 forward_dynamics_aerial(const RobotParams& params, const Vec4& q, const Vec4& qdot,
                             const Vec2& u) {
  const auto llt = factor_mass(params, q, nullptr);
  const Vec4 rhs = applied_torque(params, q, qdot, u) -
                   coriolis_matrix(params, q, qdot) * qdot - gravity_vector(params, q);
  return llt.solve(rhs);
}

ContactPin make_contact_pin(const RobotParams& params, const Vec4& q) {
  const ChainData c = compute_chain(params, q);
  const Mat3 frame = hip_frame(q[kYaw]);
  ContactPin pin;
  pin.anchor = Vec3(c.foot.x(), c.foot.y(), 0.0);
  const int rows = params.contact_pin_radial ? 3 : 2;
  pin.dirs.resize(rows, 3);
  pin.dirs.row(0) = frame.col(1).transpose();  // tangential (travel direction)
  pin.dirs.row(1) = Vec3::UnitZ().transpose();
  if (rows == 3) pin.dirs.row(2) = frame.col(0).transpose();  // radial
  return pin;
}

StanceResult forward_dynamics_stance(const RobotParams& params, const Vec4& q,
                                     const Vec4& qdot, const Vec2& u, const ContactPin& pin) {
  const int nc = static_cast<int>(pin.dirs.rows());
  const ChainData c = compute_chain(params, q);
  Mat4 m;
  const auto llt = factor_mass(params, q, &m);

  const Mat34 jc = point_jacobian(c, c.foot, 4);
  const Mat34 jcdot = contact_jacobian_dot(params, q, qdot);
  const Eigen::Matrix<double, Eigen::Dynamic, 4, 0, 3, 4> jp = pin.dirs * jc;
  const Eigen::Matrix<double, Eigen::Dynamic, 4, 0, 3, 4> jpdot = pin.dirs * jcdot;

  const Vec4 tau = applied_torque(params, q, qdot, u) -
                   coriolis_matrix(params, q, qdot) * qdot - gravity_vector(params, q);

  // Baumgarte: phi_dd = -2a phi_d - b^2 phi, phi = dirs * (foot - anchor)
  const Eigen::VectorXd phi = pin.dirs * (c.foot - pin.anchor);
  const Eigen::VectorXd phidot = jp * qdot;
  const Eigen::VectorXd rhs_c = -(jpdot * qdot) - 2.0 * params.baumgarte_alpha * phidot -
                                params.baumgarte_beta * params.baumgarte_beta * phi;

  const Eigen::Matrix<double, 4, Eigen::Dynamic, 0, 4, 3> minv_jt = llt.solve(jp.transpose());
  const Eigen::MatrixXd schur = jp * minv_jt;  // nc x nc, SPD away from singularities

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(schur);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 1e-12 * std::max(hi, 1.0)))
    throw SingularConstraint("pinned-foot constraint system singular (leg at singularity)");

  const Vec4 minv_tau = llt.solve(tau);
  const Eigen::VectorXd f = eig.eigenvectors() *
                            (eig.eigenvalues().cwiseInverse().asDiagonal() *
                             (eig.eigenvectors().transpose() * (rhs_c - jp * minv_tau)));

  StanceResult out;
  out.qddot = minv_tau + minv_jt * f;
  out.grf = pin.dirs.transpose() * f;
  return out;
}

StanceResult forward_dynamics_stance(const RobotParams& params, const Vec4& q,
                                     const Vec4& qdot, const Vec2& u) {
  return forward_dynamics_stance(params, q, qdot, u, make_contact_pin(params, q));
}

Vec4 impact_map(const RobotParams& params, const Vec4& q, const Vec4& qdot_minus) {
  Mat4 m;
  const auto llt = factor_mass(params, q, &m);
  const Mat34 jc = contact_jacobian(params, q);
  const Eigen::Matrix<double, 4, 3> minv_jt = llt.solve(jc.transpose());
  const Mat3 schur = jc * minv_jt;

  Eigen::SelfAdjointEigenSolver<Mat3> eig(schur);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 1e-12 * std::max(hi, 1.0)))
    throw SingularConstraint("impact at a leg singularity");

  const Vec3 impulse = eig.eigenvectors() *
                       (eig.eigenvalues().cwiseInverse().asDiagonal() *
                        (eig.eigenvectors().transpose() * (jc * qdot_minus)));
  return qdot_minus - minv_jt * impulse;
}

double kinetic_energy(const RobotParams& params, const Vec4& q, const Vec4& qdot) {
  return 0.5 * qdot.dot(mass_matrix(params, q) * qdot);
}

double potential_energy(const RobotParams& params, const Vec4& q) {
  const ChainData c = compute_chain(params, q);
  double v = 0.0;
  for (int b = 1; b <= 4; ++b) v += params.links[b].mass * params.gravity * c.com[b].z();
  v += params.counterweight_mass * params.gravity * c.counterweight.z();

  const SpringParams& s = params.knee_spring;
  const double deflection = q[kKnee] - s.rest_angle;
  if (s.engagement != SpringEngagement::Unilateral || deflection > 0.0)
    v += 0.5 * s.stiffness * deflection * deflection;
  return v;
}

double total_energy(const RobotParams& params, const Vec4& q, const Vec4& qdot) {
  return kinetic_energy(params, q, qdot) + potential_energy(params, q);
}

}  // namespace hopsim
