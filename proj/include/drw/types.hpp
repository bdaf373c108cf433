#pragma once

#include <Eigen/Dense>

namespace drw {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

} // namespace drw
