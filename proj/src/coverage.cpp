#include "sipp/coverage.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sipp/samplers.hpp"
#include "sipp/special_functions.hpp"

namespace sipp {

namespace {

constexpr double kZ99 = 2.5758293035489004;

void shift_or(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
              std::uint64_t shift) {
  const std::size_t ws = shift >> 6;
  const unsigned bs = shift & 63;
  for (std::size_t i = dst.size(); i-- > ws;) {
    std::uint64_t v = src[i - ws] << bs;
    if (bs != 0 && i > ws) v |= src[i - ws - 1] >> (64 - bs);
    dst[i] |= v;
  }
}

}  // namespace

ReachabilitySet::ReachabilitySet(double delta, std::uint64_t nbits, ReachMode mode)
    : delta_(delta), nbits_(nbits), mode_(mode) {
  if (!(delta > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (nbits == 0 || nbits > kMaxReachBits) {
    throw std::length_error("reachability grid must have between 1 and 2^30 bits");
  }
  words_.assign((nbits + 63) / 64, 0);
  words_[0] = 1;  // empty subset
}

std::uint64_t ReachabilitySet::count() const {
  std::uint64_t c = 0;
  for (auto w : words_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
  return c;
}

std::vector<std::uint64_t> ReachabilitySet::set_bits() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(i * 64 + static_cast<std::uint64_t>(__builtin_ctzll(w)));
      w &= w - 1;
    }
  }
  return out;
}

void ReachabilitySet::add(std::uint64_t shift, bool wide) {
  if (shift >= nbits_) {
    if (!wide || shift + 1 >= nbits_) return;
  }
  const auto old = words_;
  if (shift < nbits_) shift_or(words_, old, shift);
  if (wide && shift + 1 < nbits_) shift_or(words_, old, shift + 1);
  const unsigned tail = nbits_ & 63;
  if (tail != 0) words_.back() &= (1ULL << tail) - 1;
}

bool ReachabilitySet::covers(double x, double fatten, double extra) const {
  // j delta <= x + extra and x - extra - fatten < (j+1) delta.
  double lo = std::floor((x - extra - fatten) / delta_);
  double hi = std::floor((x + extra) / delta_);
  if (hi < 0.0) return false;
  std::uint64_t a = lo < 0.0 ? 0 : static_cast<std::uint64_t>(lo);
  std::uint64_t b = static_cast<std::uint64_t>(std::min(hi, static_cast<double>(nbits_ - 1)));
  for (std::uint64_t j = a; j <= b; ++j) {
    if (test(j) && (static_cast<double>(j) + 1.0) * delta_ > x - extra - fatten) return true;
  }
  return false;
}

bool ReachabilitySet::near(double x) const {
  double lo = std::ceil((x - slack_) / delta_ - 1e-9);
  double hi = std::floor((x + slack_) / delta_ + 1e-9);
  if (hi < 0.0) return false;
  std::uint64_t a = lo < 0.0 ? 0 : static_cast<std::uint64_t>(lo);
  std::uint64_t b = static_cast<std::uint64_t>(std::min(hi, static_cast<double>(nbits_ - 1)));
  for (std::uint64_t j = a; j <= b; ++j) {
    if (test(j)) return true;
  }
  return false;
}

ReachabilitySet reachable_sums(std::span<const double> points, double delta, ReachMode mode,
                               double s_max) {
  if (!(delta > 0.0)) throw std::invalid_argument("grid step must be positive");
  double total = 0.0;
  for (double x : points) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("points must be positive");
    total += x;
  }
  double top = s_max < 0.0 ? total : std::min(total, s_max);
  double cells = std::floor(top / delta) + 2.0;
  // Rounded shifts can carry a sum up to n cells past the top.
  cells += static_cast<double>(points.size());
  if (cells > static_cast<double>(kMaxReachBits)) {
    throw std::length_error("reachability grid would exceed 2^30 bits");
  }
  ReachabilitySet set(delta, static_cast<std::uint64_t>(cells), mode);
  for (double x : points) {
    double q = x / delta;
    if (mode == ReachMode::OuterApprox) {
      set.add(static_cast<std::uint64_t>(std::floor(q)), true);
    } else {
      set.add(static_cast<std::uint64_t>(std::llround(q)), false);
    }
  }
  double n = static_cast<double>(points.size());
  set.set_slack(mode == ReachMode::OuterApprox ? n * delta : 0.5 * n * delta);
  return set;
}

double t_eps_bound(Theta theta, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const double th = theta.value();
  const double log_level = std::log(1e-3);
  auto ein = [](double l) {
    double term = 1.0;  // l^k / k!
    double sum = 0.0;
    for (int k = 1; k < 400; ++k) {
      term *= l / k;
      double add = term / k;
      sum += add;
      if (add < 1e-17 * sum) break;
    }
    return sum;
  };
  auto objective = [&](double l) { return (th * ein(l) - log_level) / l; };
  auto r = boost::math::tools::brent_find_minima(objective, 1e-3, 60.0, 40);
  return eps * r.second;
}

double coverage_upper_reference(Theta theta) {
  const double th = theta.value();
  return 1.0 - std::exp(-kEulerGamma * th) / std::tgamma(th + 1.0);
}

FEstimate estimate_f(Theta theta, double eps, double delta, std::uint64_t trials, RngStream& rng,
                     double target) {
  if (!(eps > 0.0) || eps > 0.1) throw std::invalid_argument("eps must lie in (0, 0.1]");
  if (!(delta > 0.0) || delta > eps / 4.0) {
    throw std::invalid_argument("delta must be positive and at most eps/4");
  }
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  if (!(target > eps)) throw std::invalid_argument("target must exceed eps");
  const double tb = t_eps_bound(theta, eps);
  std::uint64_t lower_hits = 0;
  std::uint64_t upper_hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    // Points above the target cannot be part of a subset summing to it.
    auto config = sample_sipp_window(theta, eps, target, rng);
    const auto& pts = config.points();
    auto outer = reachable_sums(pts, delta, ReachMode::OuterApprox, target + delta);
    bool up = outer.covers(target, tb);
    if (up) {
      ++upper_hits;
      auto inner = reachable_sums(pts, delta, ReachMode::InnerApprox, target + delta);
      if (inner.near(target)) ++lower_hits;
    }
  }
  FEstimate out{};
  out.trials = trials;
  out.t_eps_bound = tb;
  out.lower = static_cast<double>(lower_hits) / static_cast<double>(trials);
  out.upper = static_cast<double>(upper_hits) / static_cast<double>(trials);
  out.lower_ci = stats::wilson_interval(lower_hits, trials, kZ99);
  out.upper_ci = stats::wilson_interval(upper_hits, trials, kZ99);
  out.ci_halfwidth = 0.5 * std::max(out.lower_ci.upper - out.lower_ci.lower,
                                    out.upper_ci.upper - out.upper_ci.lower);
  return out;
}

BernoulliSamples bernoulli_convolution_samples(Theta theta, BernoulliSource source,
                                               std::uint64_t draws, std::uint64_t coins_per_draw,
                                               RngStream& rng) {
  if (draws == 0 || coins_per_draw == 0) {
    throw std::invalid_argument("draws and coins_per_draw must be positive");
  }
  BernoulliSamples out{{}, 0.0};
  out.values.reserve(draws);
  if (source == BernoulliSource::PDConditional) {
    for (std::uint64_t d = 0; d < draws; ++d) {
      auto gem = sample_gem(theta, coins_per_draw, rng);
      double y = 0.5 * gem.residual;
      for (double v : gem.entries) {
        if (rng.bernoulli(0.5)) y += v;
      }
      out.truncation_bound = std::max(out.truncation_bound, 0.5 * gem.residual);
      out.values.push_back(y);
    }
    return out;
  }
  const double eps = std::exp(-static_cast<double>(coins_per_draw) / theta.value());
  if (!(eps > 0.0)) throw std::invalid_argument("coins_per_draw too large for the cutoff");
  out.truncation_bound = t_eps_bound(theta, eps);
  for (std::uint64_t d = 0; d < draws; ++d) {
    auto config = sample_sipp_unit(theta, eps, rng);
    double y = 0.0;
    const auto& pts = config.points();
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
      if (rng.bernoulli(0.5)) y += *it;
    }
    out.values.push_back(y);
  }
  return out;
}

BSet b_set_sample(Theta theta, int depth, RngStream& rng, double delta) {
  if (depth < 1) throw std::invalid_argument("depth must be positive");
  auto pd = sample_pd(theta, static_cast<std::size_t>(depth), 1e-12, rng);
  std::vector<double> coords = pd.ranked.entries();
  auto outer = reachable_sums(coords, delta, ReachMode::OuterApprox, 1.0 + delta);
  return BSet{std::move(outer), std::move(coords), pd.ranked.tail_mass()};
}

}  // namespace sipp
