#pragma once

#include <array>

#include "hopsim/kinematics.hpp"
#include "hopsim/robot_params.hpp"
#include "hopsim/types.hpp"

namespace hopsim {

// Terms of M qdd + C qd + G = B_e u + tau_spring + tau_friction + J_c^T F.
struct DynamicsTerms {
  Mat4 M;
  Mat4 C;
  Vec4 G;
  Mat42 B_e;
};

Mat4 mass_matrix(const RobotParams& params, const Vec4& q);

// dM/dq_k, exact (used by the Christoffel form and by tests).
std::array<Mat4, 4> mass_matrix_partials(const RobotParams& params, const Vec4& q);

// Christoffel-symbol Coriolis matrix: Mdot - 2C is skew-symmetric.
Mat4 coriolis_matrix(const RobotParams& params, const Vec4& q, const Vec4& qdot);

Vec4 gravity_vector(const RobotParams& params, const Vec4& q);

Mat42 actuation_matrix();

double spring_torque(const SpringParams& spring, double knee_angle);

// Generalized spring torque vector (acts on the knee row only).
Vec4 spring_torque_vector(const RobotParams& params, const Vec4& q);

// Gearbox friction at the actuated joints, opposing motion; zero when the
// friction switch is off.
Vec4 friction_torque(const RobotParams& params, const Vec4& qdot);

DynamicsTerms dynamics_terms(const RobotParams& params, const Vec4& q, const Vec4& qdot);

// Unconstrained (aerial) forward dynamics. u = electromagnetic torques at
// (hip, knee); spring and gear friction are added internally.
// Throws SingularMass if M cannot be factored.
Vec4 forward_dynamics_aerial(const RobotParams& params, const Vec4& q, const Vec4& qdot,
                             const Vec2& u);

// A stance pin: the foot is constrained along fixed world directions
// (rows of `dirs`) through the anchor point. Directions are recorded at
// touchdown and held for the stance episode.
struct ContactPin {
  Vec3 anchor = Vec3::Zero();
  Eigen::Matrix<double, Eigen::Dynamic, 3, 0, 3, 3> dirs;  // 2 or 3 unit rows
};

// Pin at the current foot point, projected onto the ground plane. Default
// rows: tangential (travel direction at the current yaw) and vertical; the
// radial row is added when params.contact_pin_radial is set.
ContactPin make_contact_pin(const RobotParams& params, const Vec4& q);

struct StanceResult {
  Vec4 qddot;
  Vec3 grf;  // world-frame ground reaction force on the foot
};

// Constrained stance dynamics with Baumgarte stabilization. Throws
// SingularConstraint when the pinned system is at a leg singularity.
StanceResult forward_dynamics_stance(const RobotParams& params, const Vec4& q,
                                     const Vec4& qdot, const Vec2& u, const ContactPin& pin);
StanceResult forward_dynamics_stance(const RobotParams& params, const Vec4& q,
                                     const Vec4& qdot, const Vec2& u);

// Inelastic touchdown impact: instantaneously stops the foot (all three
// axes). Configuration is unchanged. Throws SingularConstraint at leg
// singularities.
Vec4 impact_map(const RobotParams& params, const Vec4& q, const Vec4& qdot_minus);

double kinetic_energy(const RobotParams& params, const Vec4& q, const Vec4& qdot);
double potential_energy(const RobotParams& params, const Vec4& q);  // gravity + spring
double total_energy(const RobotParams& params, const Vec4& q, const Vec4& qdot);

}  // namespace hopsim
