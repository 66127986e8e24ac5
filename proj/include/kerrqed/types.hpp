#ifndef KERRQED_TYPES_HPP
#define KERRQED_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kerrqed {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Controls Fock-basis truncation of constructed field states.
/// A constructor picks the smallest basis whose excluded probability mass
/// is below tail_eps and fails if that would exceed max_dim.
struct TruncationPolicy {
  double tail_eps = 1e-12;
  int max_dim = 4096;
};

/// Requested truncation cannot be met within the dimension cap.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(std::string what, int required_dim)
      : std::runtime_error(std::move(what)), required_dim_(required_dim) {}
  int required_dim() const { return required_dim_; }

 private:
  int required_dim_;
};

/// Adaptive integration could not proceed (step size underflow).
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(std::string what, double t_reached, double last_step)
      : std::runtime_error(std::move(what)), t_reached_(t_reached), last_step_(last_step) {}
  double t_reached() const { return t_reached_; }
  double last_step() const { return last_step_; }

 private:
  double t_reached_;
  double last_step_;
};

/// Invalid scenario configuration; carries the path of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace kerrqed

#endif
