#include "sipp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sipp {

Theta::Theta(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("theta must be positive and finite");
  }
}

std::string labelling_name(const Labelling& labelling) {
  if (std::holds_alternative<AtZero>(labelling)) return "at_zero";
  if (std::holds_alternative<AtInfinity>(labelling)) return "at_infinity";
  return "window";
}

namespace {

bool strictly_decreasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::less_equal<>()) == v.end();
}

bool strictly_increasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

}  // namespace

PointConfiguration::PointConfiguration(std::vector<double> points, Labelling labelling,
                                       double cutoff, Theta theta)
    : points_(std::move(points)), labelling_(labelling), cutoff_(cutoff), theta_(theta) {
  if (!(cutoff >= 0.0) || !std::isfinite(cutoff)) {
    throw std::invalid_argument("cutoff must be finite and nonnegative");
  }
  for (double x : points_) {
    if (!std::isfinite(x) || !(x > cutoff)) {
      throw std::invalid_argument("every point must be finite and above the cutoff");
    }
  }
  if (std::holds_alternative<AtZero>(labelling_)) {
    if (!strictly_decreasing(points_)) {
      throw std::invalid_argument("AtZero points must be strictly decreasing");
    }
    if (!points_.empty() && !(points_.front() < 1.0)) {
      throw std::invalid_argument("AtZero points must lie below 1");
    }
  } else if (const auto* inf = std::get_if<AtInfinity>(&labelling_)) {
    if (!strictly_increasing(points_)) {
      throw std::invalid_argument("AtInfinity points must be strictly increasing");
    }
    if (!(inf->upper > cutoff)) {
      throw std::invalid_argument("AtInfinity upper bound must exceed the cutoff");
    }
    if (!points_.empty() && !(points_.back() < inf->upper)) {
      throw std::invalid_argument("AtInfinity points must lie below the upper bound");
    }
  } else {
    const auto& w = std::get<Window>(labelling_);
    if (!(w.lower > 0.0) || !(w.lower < w.upper)) {
      throw std::invalid_argument("Window(a, b) requires 0 < a < b");
    }
    if (cutoff_ != w.lower) {
      throw std::invalid_argument("Window cutoff must equal its lower bound");
    }
    if (!strictly_decreasing(points_)) {
      throw std::invalid_argument("Window points must be strictly decreasing");
    }
    if (!points_.empty() && !(points_.front() < w.upper)) {
      throw std::invalid_argument("Window points must lie inside (a, b)");
    }
  }
}

double PointConfiguration::sum() const {
  // Smallest first for a tighter floating sum.
  double s = 0.0;
  if (std::holds_alternative<AtInfinity>(labelling_)) {
    for (double x : points_) s += x;
  } else {
    for (auto it = points_.rbegin(); it != points_.rend(); ++it) s += *it;
  }
  return s;
}

SpacingVector::SpacingVector(std::vector<double> e, double r, Theta t)
    : entries(std::move(e)), residual(r), theta(t) {
  double partial = 0.0;
  for (double y : entries) {
    if (!(y > 0.0) || !(y < 1.0)) {
      throw std::invalid_argument("GEM spacings must lie in (0, 1)");
    }
    partial += y;
  }
  if (!(residual >= 0.0) || !(residual <= 1.0)) {
    throw std::invalid_argument("GEM residual must lie in [0, 1]");
  }
  if (!entries.empty() && !(partial < 1.0 + kDefaultTolerance)) {
    throw std::invalid_argument("GEM partial sums must stay below 1");
  }
}

RankedSimplex::RankedSimplex(std::vector<double> entries, double tail_mass, double tolerance)
    : entries_(std::move(entries)), tail_mass_(tail_mass) {
  if (!(tail_mass_ >= 0.0)) throw std::invalid_argument("tail mass must be nonnegative");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!(entries_[i] > 0.0)) throw std::invalid_argument("ranked entries must be positive");
    if (i > 0 && entries_[i] > entries_[i - 1]) {
      throw std::invalid_argument("ranked entries must be nonincreasing");
    }
  }
  double total = tail_mass_;
  for (double v : entries_) total += v;
  if (std::abs(total - 1.0) > tolerance) {
    throw std::invalid_argument("ranked entries plus tail mass must sum to 1");
  }
}

DiscreteMeasure::DiscreteMeasure(std::vector<double> support, std::vector<double> masses,
                                 double tolerance)
    : support_(std::move(support)), masses_(std::move(masses)) {
  if (support_.size() != masses_.size() || support_.empty()) {
    throw std::invalid_argument("support and masses must be nonempty and of equal length");
  }
  if (!strictly_increasing(support_)) {
    throw std::invalid_argument("support must be strictly increasing");
  }
  double total = 0.0;
  for (double m : masses_) {
    if (!(m >= 0.0)) throw std::invalid_argument("masses must be nonnegative");
    total += m;
  }
  if (std::abs(total - 1.0) > tolerance) {
    throw std::invalid_argument("masses must sum to 1");
  }
}

DiscreteMeasure DiscreteMeasure::from_atoms(std::vector<double> locations,
                                            std::vector<double> weights) {
  if (locations.size() != weights.size() || locations.empty()) {
    throw std::invalid_argument("atoms must be nonempty with matching weights");
  }
  std::vector<std::size_t> order(locations.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return locations[a] < locations[b]; });
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> support;
  std::vector<double> masses;
  for (std::size_t idx : order) {
    if (!support.empty() && support.back() == locations[idx]) {
      masses.back() += weights[idx] / total;
    } else {
      support.push_back(locations[idx]);
      masses.push_back(weights[idx] / total);
    }
  }
  return DiscreteMeasure(std::move(support), std::move(masses), 1e-9);
}

std::string method_name(TVMethod method) {
  switch (method) {
    case TVMethod::ExplicitFormula: return "explicit_formula";
    case TVMethod::GeneralDensities: return "general_densities";
    case TVMethod::ExactEnumeration: return "exact_enumeration";
    case TVMethod::EmpiricalBinned: return "empirical_binned";
  }
  return "unknown";
}

std::vector<double> rank(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw std::invalid_argument("rank requires finite positive values");
    }
  }
  std::vector<double> out(values.begin(), values.end());
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

PointConfiguration relabel(const PointConfiguration& config, const Labelling& target) {
  const auto& source = config.labelling();
  const auto& pts = config.points();
  auto reversed = [&] { return std::vector<double>(pts.rbegin(), pts.rend()); };

  if (source == target) return config;

  if (std::holds_alternative<AtZero>(source)) {
    if (const auto* w = std::get_if<Window>(&target)) {
      if (w->lower != config.cutoff() || w->upper != 1.0) {
        throw std::invalid_argument("AtZero converts only to Window(cutoff, 1)");
      }
      return PointConfiguration(pts, target, config.cutoff(), config.theta());
    }
    const auto& inf = std::get<AtInfinity>(target);
    if (inf.upper != 1.0) throw std::invalid_argument("AtZero converts only to AtInfinity{1}");
    return PointConfiguration(reversed(), target, config.cutoff(), config.theta());
  }

  if (const auto* w = std::get_if<Window>(&source)) {
    if (std::holds_alternative<AtZero>(target)) {
      if (w->upper != 1.0) {
        throw std::invalid_argument("Window must end at 1 to become an AtZero configuration");
      }
      return PointConfiguration(pts, target, config.cutoff(), config.theta());
    }
    const auto& inf = std::get<AtInfinity>(target);
    if (inf.upper != w->upper) {
      throw std::invalid_argument("AtInfinity bound must match the window's upper end");
    }
    return PointConfiguration(reversed(), target, config.cutoff(), config.theta());
  }

  const auto& inf = std::get<AtInfinity>(source);
  if (std::holds_alternative<AtZero>(target)) {
    if (inf.upper != 1.0) {
      throw std::invalid_argument("AtInfinity{upper != 1} would need points above 1");
    }
    return PointConfiguration(reversed(), target, config.cutoff(), config.theta());
  }
  const auto& w = std::get<Window>(target);
  if (w.lower != config.cutoff() || w.upper != inf.upper) {
    throw std::invalid_argument("Window must match the retained range of the configuration");
  }
  return PointConfiguration(reversed(), target, config.cutoff(), config.theta());
}

std::vector<double> log_coordinates(const PointConfiguration& config) {
  if (!std::holds_alternative<AtZero>(config.labelling())) {
    throw std::invalid_argument("log coordinates are defined for AtZero configurations");
  }
  std::vector<double> out;
  out.reserve(config.size());
  for (double x : config.points()) out.push_back(-std::log(x));
  return out;
}

PointConfiguration from_log_coordinates(std::span<const double> logs, double cutoff,
                                        Theta theta) {
  std::vector<double> pts;
  pts.reserve(logs.size());
  for (double l : logs) pts.push_back(std::exp(-l));
  return PointConfiguration(std::move(pts), AtZero{}, cutoff, theta);
}

}  // namespace sipp
