#pragma once

#include <Eigen/Dense>

namespace chaoslearn {

using Scalar = double;
using Index = Eigen::Index;

using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

}  // namespace chaoslearn
