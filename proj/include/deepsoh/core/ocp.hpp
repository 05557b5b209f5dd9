#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace deepsoh::core {

enum class Electrode { positive, negative };

std::string_view to_string(Electrode e);

/// Open-circuit potential versus stoichiometry, stored as a strictly decreasing
/// table and evaluated with monotone piecewise-cubic Hermite interpolation
/// (Fritsch-Carlson slopes), so the interpolant is exact at the knots and never
/// overshoots between them.
class OcpTable {
 public:
  OcpTable() = default;
  OcpTable(std::vector<double> stoichiometry, std::vector<double> volts, std::string label = "ocp");

  /// Reads a two-column text file (stoichiometry, volts). Lines starting with
  /// '#' are comments. At least 20 rows are required.
  static OcpTable load(const std::filesystem::path& path, std::string label = "ocp");

  double operator()(double stoichiometry) const;
  double derivative(double stoichiometry) const;

  /// Stoichiometry at which the curve equals `volts`; throws DomainError if the
  /// voltage is outside the tabulated range.
  double inverse(double volts) const;

  double min_stoichiometry() const { return x_.front(); }
  double max_stoichiometry() const { return x_.back(); }
  const std::vector<double>& knots() const { return x_; }
  const std::vector<double>& values() const { return v_; }
  const std::string& label() const { return label_; }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t interval(double s) const;
  double checked(double s) const;

  std::vector<double> x_;
  std::vector<double> v_;
  std::vector<double> d_;
  std::string label_;
};

}  // namespace deepsoh::core
