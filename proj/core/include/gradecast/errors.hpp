#ifndef GRADECAST_ERRORS_HPP
#define GRADECAST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gradecast {

/// Base class for every error thrown by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: experiment config, schema config, out-of-range
/// hyperparameters or operation arguments. CLI exit code 1.
class config_error : public error {
 public:
  using error::error;
};

/// Invalid or missing input data: malformed CSV, validation failures,
/// files that cannot be read. CLI exit code 2.
class data_error : public error {
 public:
  using error::error;
};

/// Dimension mismatch between containers that must agree.
class shape_error : public data_error {
 public:
  using data_error::data_error;
};

/// Numeric failure: non-finite intermediate values, solver non-convergence.
/// CLI exit code 3.
class numeric_error : public error {
 public:
  using error::error;
};

}  // namespace gradecast

#endif
