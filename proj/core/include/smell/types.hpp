#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace smell {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

/// Errors caused by bad user input (bad files, infeasible flags). The CLI
/// maps these to exit code 2; everything else is an internal error (1).
class UserError : public std::runtime_error {
public:
  explicit UserError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace smell
