#pragma once

#include <Eigen/Dense>

namespace atomforge {

using Scalar = double;

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using VecX = Eigen::VectorXd;

// Row i = one atom; row-major so per-atom access is contiguous.
using MatX3 = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;

using IVec3 = Eigen::Vector3i;

} // namespace atomforge
