#include "deepsoh/core/ocp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "deepsoh/errors.hpp"

namespace deepsoh::core {

std::string_view to_string(Electrode e) {
  return e == Electrode::positive ? "positive" : "negative";
}

namespace {

// Fritsch-Carlson derivative estimates for a monotone data set.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& v) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), delta(n - 1), d(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (v[i + 1] - v[i]) / h[i];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
      continue;
    }
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
  auto end_slope = [](double h0, double h1, double del0, double del1) {
    double s = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (s * del0 <= 0.0) return 0.0;
    if (del0 * del1 <= 0.0 && std::abs(s) > std::abs(3.0 * del0)) return 3.0 * del0;
    return s;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

}  // namespace

OcpTable::OcpTable(std::vector<double> stoichiometry, std::vector<double> volts, std::string label)
    : x_(std::move(stoichiometry)), v_(std::move(volts)), label_(std::move(label)) {
  if (x_.size() != v_.size() || x_.size() < 2) {
    throw InputError(label_ + " table needs at least two (stoichiometry, volts) rows");
  }
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    if (!(x_[i + 1] > x_[i])) throw InputError(label_ + " table stoichiometry must be strictly increasing");
    if (!(v_[i + 1] < v_[i])) {
      throw InputError(label_ + " table voltage must be strictly decreasing in stoichiometry (row " +
                       std::to_string(i + 2) + ")");
    }
  }
  if (x_.front() < 0.0 || x_.back() > 1.0) {
    throw InputError(label_ + " table stoichiometry must lie in [0, 1]");
  }
  d_ = pchip_slopes(x_, v_);
}

OcpTable OcpTable::load(const std::filesystem::path& path, std::string label) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + label + " OCP table '" + path.string() + "'");
  std::vector<double> xs, vs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    row.imbue(std::locale::classic());
    double x = 0.0, v = 0.0;
    if (!(row >> x >> v)) {
      throw InputError(path.string() + ": expected two numeric columns", lineno);
    }
    xs.push_back(x);
    vs.push_back(v);
  }
  if (xs.size() < 20) {
    throw InputError(path.string() + ": OCP tables need at least 20 rows, found " + std::to_string(xs.size()));
  }
  return OcpTable(std::move(xs), std::move(vs), std::move(label));
}

double OcpTable::checked(double s) const {
  constexpr double slack = 1e-12;
  if (!(s >= x_.front() - slack && s <= x_.back() + slack)) {
    std::ostringstream msg;
    msg.imbue(std::locale::classic());
    msg << label_ << " stoichiometry " << s << " outside [" << x_.front() << ", " << x_.back() << "]";
    throw DomainError(msg.str());
  }
  return std::clamp(s, x_.front(), x_.back());
}

std::size_t OcpTable::interval(double s) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), s);
  if (it == x_.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double OcpTable::operator()(double stoichiometry) const {
  const double s = checked(stoichiometry);
  const std::size_t i = interval(s);
  const double h = x_[i + 1] - x_[i];
  const double t = (s - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * v_[i] + (t3 - 2 * t2 + t) * h * d_[i] + (-2 * t3 + 3 * t2) * v_[i + 1] +
         (t3 - t2) * h * d_[i + 1];
}

double OcpTable::derivative(double stoichiometry) const {
  const double s = checked(stoichiometry);
  const std::size_t i = interval(s);
  const double h = x_[i + 1] - x_[i];
  const double t = (s - x_[i]) / h;
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * v_[i] + (-6 * t2 + 6 * t) * v_[i + 1]) / h + (3 * t2 - 4 * t + 1) * d_[i] +
         (3 * t2 - 2 * t) * d_[i + 1];
}

double OcpTable::inverse(double volts) const {
  if (!(volts <= v_.front() && volts >= v_.back())) {
    std::ostringstream msg;
    msg.imbue(std::locale::classic());
    msg << label_ << " voltage " << volts << " V outside tabulated range [" << v_.back() << ", " << v_.front()
        << "]";
    throw DomainError(msg.str());
  }
  // values are decreasing: locate the bracketing knot interval, then bisect the cubic
  auto it = std::upper_bound(v_.rbegin(), v_.rend(), volts);
  std::size_t hi = static_cast<std::size_t>(v_.rend() - it);
  hi = std::clamp<std::size_t>(hi, 1, x_.size() - 1);
  double lo_s = x_[hi - 1], hi_s = x_[hi];
  for (int k = 0; k < 80 && hi_s - lo_s > 1e-15; ++k) {
    const double mid = 0.5 * (lo_s + hi_s);
    if ((*this)(mid) > volts) lo_s = mid; else hi_s = mid;
  }
  return 0.5 * (lo_s + hi_s);
}

}  // namespace deepsoh::core
