#pragma once

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace diracwalk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Default tolerance for identities that hold exactly in real arithmetic.
inline constexpr double kExactTolerance = 1e-12;

/// Thrown for violated preconditions (bad dimensions, invalid parameters, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when two constructions that must agree do not.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximum absolute entry. All residual checks in the library use this norm.
double max_abs(const Matrix& m);

/// ‖A − I‖ in the max-entry norm; A must be square.
double identity_residual(const Matrix& a);

double hermiticity_residual(const Matrix& a);

Matrix anticommutator(const Matrix& a, const Matrix& b);

/// Named residuals with a shared tolerance. Order is insertion order, so text
/// output is deterministic.
struct ResidualReport {
  std::vector<std::pair<std::string, double>> residuals;
  double tolerance = kExactTolerance;
  bool pass = true;

  void add(std::string name, double value);
  /// Returns the residual registered under `name`; throws if absent.
  [[nodiscard]] double at(std::string_view name) const;
  [[nodiscard]] double max_residual() const;
  [[nodiscard]] std::vector<std::string> failures() const;
};

/// One line per residual: "<name> <residual> <pass|fail>".
void write_report(std::ostream& os, const ResidualReport& report);
std::string to_text(const ResidualReport& report);

// Plain-text matrices: one row per line, entries written as "re+imi"
// (e.g. "0.5-1e-3i"), separated by whitespace. A bare real number is read
// with zero imaginary part. Lines starting with '#' are comments.

Complex parse_complex(std::string_view token);
std::string format_complex(Complex z);
void write_matrix_text(std::ostream& os, const Matrix& m);

/// Reads consecutive matrices separated by blank lines.
std::vector<Matrix> read_matrices_text(std::istream& is);

/// Shortest round-trippable decimal form of a double.
std::string format_double(double x);

}  // namespace diracwalk
