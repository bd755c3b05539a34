#include "sipp/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sipp {

PointConfiguration sample_sipp_unit(Theta theta, double eps, RngStream& rng) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const double th = theta.value();
  std::vector<double> pts;
  // L_k = -log X_k is a sum of Exp(theta) increments.
  double l = 0.0;
  for (;;) {
    l += rng.exponential(th);
    double x = std::exp(-l);
    if (!(x > eps)) break;
    // A tie at double resolution has probability ~1e-16 per step; drop it.
    if (!pts.empty() && !(x < pts.back())) continue;
    pts.push_back(x);
  }
  return PointConfiguration(std::move(pts), AtZero{}, eps, theta);
}

PointConfiguration sample_sipp_window(Theta theta, double a, double b, RngStream& rng) {
  if (!(a > 0.0) || !(a < b) || !std::isfinite(b)) {
    throw std::invalid_argument("window requires 0 < a < b < inf");
  }
  const double log_ratio = std::log(b / a);
  std::uint64_t count = rng.poisson(theta.value() * log_ratio);
  std::vector<double> pts;
  pts.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    double x = a * std::exp(log_ratio * rng.uniform_open());
    if (x > a && x < b) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end(), std::greater<>());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return PointConfiguration(std::move(pts), Window{a, b}, a, theta);
}

namespace {

// Returns (1 - U, U) for U = Uniform^{1/theta}, with 1 - U accurate near 1.
std::pair<double, double> gem_factor(double theta, RngStream& rng) {
  double log_u = std::log(rng.uniform_open()) / theta;
  return {-std::expm1(log_u), std::exp(log_u)};
}

}  // namespace

SpacingVector sample_gem(Theta theta, std::size_t n, RngStream& rng) {
  std::vector<double> y;
  y.reserve(n);
  double prod = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    auto [one_minus_u, u] = gem_factor(theta.value(), rng);
    y.push_back(prod * one_minus_u);
    prod *= u;
  }
  return SpacingVector(std::move(y), prod, theta);
}

PdSample sample_pd(Theta theta, std::size_t n, double eps, RngStream& rng,
                   std::size_t max_terms) {
  if (n == 0) throw std::invalid_argument("sample_pd needs n >= 1");
  if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  std::vector<double> y;
  double prod = 1.0;
  // Keeps the n largest terms seen so far in a min-heap.
  std::vector<double> top;
  auto nth_largest = [&] { return top.size() < n ? 0.0 : top.front(); };
  auto push = [&](double v) {
    if (top.size() < n) {
      top.push_back(v);
      std::push_heap(top.begin(), top.end(), std::greater<>());
    } else if (v > top.front()) {
      std::pop_heap(top.begin(), top.end(), std::greater<>());
      top.back() = v;
      std::push_heap(top.begin(), top.end(), std::greater<>());
    }
  };
  std::size_t terms = 0;
  while (terms < max_terms) {
    if (prod < eps && top.size() == n && prod < nth_largest()) break;
    auto [one_minus_u, u] = gem_factor(theta.value(), rng);
    double v = prod * one_minus_u;
    prod *= u;
    ++terms;
    if (v > 0.0) {
      y.push_back(v);
      push(v);
    }
    if (prod == 0.0) break;
  }
  bool certified = top.size() == n && prod < nth_largest();
  std::vector<double> ranked = rank(std::span<const double>(top));
  // Tail mass: everything not reported, summed smallest-first.
  std::vector<double> sorted_y = y;
  std::sort(sorted_y.begin(), sorted_y.end());
  double tail = prod;
  for (std::size_t i = 0; i + ranked.size() < sorted_y.size(); ++i) tail += sorted_y[i];
  return PdSample{RankedSimplex(std::move(ranked), tail, 1e-12), certified, terms};
}

MoranSample sample_moran(Theta theta, double eps, RngStream& rng) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  PointConfiguration base = sample_sipp_window(theta, eps, kMoranUpperCutoff, rng);
  MoranSample out{{}, 0.0};
  for (double x : base.points()) {
    if (rng.uniform() < std::exp(-x)) out.points.push_back(x);
  }
  for (auto it = out.points.rbegin(); it != out.points.rend(); ++it) out.sigma += *it;
  return out;
}

RankedSimplex moran_ranked(const MoranSample& sample, std::size_t n) {
  if (sample.points.empty()) throw std::invalid_argument("Moran sample has no points");
  std::vector<double> lead;
  double tail = 0.0;
  for (std::size_t i = sample.points.size(); i-- > 0;) {
    double v = sample.points[i] / sample.sigma;
    if (i < n) {
      lead.push_back(v);
    } else {
      tail += v;
    }
  }
  std::reverse(lead.begin(), lead.end());
  double total = tail;
  for (double v : lead) total += v;
  // Division by sigma leaves O(k ulp) drift; fold it into the tail.
  tail = std::max(0.0, tail + (1.0 - total));
  return RankedSimplex(std::move(lead), tail, 1e-12);
}

Spacings2D sample_spacings_2d(Theta theta, int m, RngStream& rng) {
  if (m < 1) throw std::invalid_argument("window count m must be >= 1");
  double lo = std::exp(-static_cast<double>(m));
  double hi = std::exp(static_cast<double>(m));
  PointConfiguration ys = sample_sipp_window(theta, lo, hi, rng);
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(ys.size());
  for (double y : ys.points()) pairs.emplace_back(rng.exponential(y), y);
  std::sort(pairs.begin(), pairs.end(), [](const auto& p, const auto& q) {
    return p.first > q.first;
  });
  Spacings2D out;
  double running = 0.0;
  for (const auto& [w, y] : pairs) {
    running += y;
    out.w.push_back(w);
    out.y.push_back(y);
    out.partial_sums.push_back(running);
  }
  return out;
}

std::vector<std::uint64_t> feller_success_positions(Theta theta, std::uint64_t n,
                                                    RngStream& rng) {
  const double th = theta.value();
  std::vector<std::uint64_t> ones;
  if (n == 0) return ones;
  ones.push_back(1);  // P(xi_1 = 1) = 1
  std::uint64_t i = 1;
  // After a one at i, P(no ones in i+1..j) = Gamma(j) Gamma(theta+i) / (Gamma(i) Gamma(theta+j)).
  auto log_survival = [&](std::uint64_t from, std::uint64_t to) {
    double dfrom = static_cast<double>(from);
    double dto = static_cast<double>(to);
    return std::lgamma(dto) + std::lgamma(th + dfrom) - std::lgamma(dfrom) -
           std::lgamma(th + dto);
  };
  while (i < n) {
    double log_u = std::log(rng.uniform_open());
    if (log_survival(i, n) >= log_u) break;  // no further ones up to n
    std::uint64_t lo = i;      // survival(i, lo) >= u
    std::uint64_t hi = n;      // survival(i, hi) < u
    while (hi - lo > 1) {
      std::uint64_t mid = lo + (hi - lo) / 2;
      if (log_survival(i, mid) >= log_u) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    ones.push_back(hi);
    i = hi;
  }
  return ones;
}

SpacingCountVector feller_binary_spacings(Theta theta, std::uint64_t N, std::uint64_t b,
                                          RngStream& rng) {
  if (b < 1 || N < b) throw std::invalid_argument("need N >= b >= 1");
  auto ones = feller_success_positions(theta, N, rng);
  SpacingCountVector out{std::vector<std::uint64_t>(b, 0), N};
  for (std::size_t k = 1; k < ones.size(); ++k) {
    std::uint64_t gap = ones[k] - ones[k - 1];
    if (gap <= b) ++out.counts[gap - 1];
  }
  return out;
}

std::size_t size_biased_pick(std::span<const double> weights, RngStream& rng) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("weights must be finite and nonnegative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("weights must not all be zero");
  double target = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] > 0.0) last_positive = k;
    acc += weights[k];
    if (target < acc) return k;
  }
  return last_positive;
}

double sample_truncated_sum(Theta theta, double eps, RngStream& rng) {
  return sample_sipp_unit(theta, eps, rng).sum();
}

}  // namespace sipp
