#pragma once

// Core value types shared by every module: the intensity parameter, finite
// realizations of point processes with their labelling conventions, simplex
// vectors, discrete measures, and total-variation reports.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sipp {

// Thrown when an iterative numeric procedure fails to reach its target.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTolerance = 1e-12;

// Intensity scalar of theta/x dx. Always positive and finite.
class Theta {
 public:
  explicit Theta(double value);
  double value() const noexcept { return value_; }
  bool operator==(const Theta&) const = default;

 private:
  double value_;
};

// Labelling conventions. AtZero and Window store points in descending order,
// AtInfinity in ascending order.
struct AtZero {
  bool operator==(const AtZero&) const = default;
};
struct AtInfinity {
  double upper;  // points lie below this bound (may be +inf)
  bool operator==(const AtInfinity&) const = default;
};
struct Window {
  double lower;
  double upper;
  bool operator==(const Window&) const = default;
};
using Labelling = std::variant<AtZero, AtInfinity, Window>;

std::string labelling_name(const Labelling& labelling);

// A finite truncated realization of a point process on (0, inf).
//
// AtZero: points in (cutoff, 1), strictly decreasing, X_1 > X_2 > ...
// AtInfinity: points in (cutoff, upper), strictly increasing.
// Window(a, b): points in (a, b), strictly decreasing; cutoff == a.
class PointConfiguration {
 public:
  PointConfiguration(std::vector<double> points, Labelling labelling, double cutoff,
                     Theta theta);

  const std::vector<double>& points() const noexcept { return points_; }
  const Labelling& labelling() const noexcept { return labelling_; }
  double cutoff() const noexcept { return cutoff_; }
  Theta theta() const noexcept { return theta_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  double sum() const;

 private:
  std::vector<double> points_;
  Labelling labelling_;
  double cutoff_;
  Theta theta_;
};

// GEM spacings Y_1..Y_n. residual holds U_1...U_n = 1 - sum(Y) computed as a
// product, which avoids the cancellation in 1 - sum.
struct SpacingVector {
  SpacingVector(std::vector<double> entries, double residual, Theta theta);

  std::vector<double> entries;
  double residual;
  Theta theta;
};

// Leading coordinates of a point on the infinite simplex, ranked.
class RankedSimplex {
 public:
  RankedSimplex(std::vector<double> entries, double tail_mass,
                double tolerance = kDefaultTolerance);

  const std::vector<double>& entries() const noexcept { return entries_; }
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  std::vector<double> entries_;
  double tail_mass_;
};

// Finitely supported probability measure on the real line.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<double> support, std::vector<double> masses,
                  double tolerance = kDefaultTolerance);

  const std::vector<double>& support() const noexcept { return support_; }
  const std::vector<double>& masses() const noexcept { return masses_; }
  std::size_t size() const noexcept { return support_.size(); }

  // Builds a measure from unsorted atoms, merging exact duplicates.
  static DiscreteMeasure from_atoms(std::vector<double> locations,
                                    std::vector<double> weights);

 private:
  std::vector<double> support_;
  std::vector<double> masses_;
};

enum class TVMethod { ExplicitFormula, GeneralDensities, ExactEnumeration, EmpiricalBinned };

std::string method_name(TVMethod method);

// value - error_bound <= true TV <= value + error_bound.
struct TVReport {
  double value;
  TVMethod method;
  double error_bound;
};

// Sorts into nonincreasing order (stable for ties). Rejects nonpositive or
// non-finite entries.
std::vector<double> rank(std::span<const double> values);

// Changes labelling metadata without touching the point values. Supported:
// AtZero <-> Window(cutoff, 1), Window(a, b) <-> AtInfinity{b} with cutoff a,
// AtZero <-> AtInfinity{1}. Anything that would need points outside the
// retained window is rejected.
PointConfiguration relabel(const PointConfiguration& config, const Labelling& target);

// L_i = -log X_i for an AtZero configuration (increasing sequence).
std::vector<double> log_coordinates(const PointConfiguration& config);

// Inverse of log_coordinates.
PointConfiguration from_log_coordinates(std::span<const double> logs, double cutoff,
                                        Theta theta);

}  // namespace sipp
