#include "sipp/discrete_analogs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "sipp/samplers.hpp"

namespace sipp {

std::uint64_t CycleCounts::longest() const {
  for (std::size_t i = counts.size(); i-- > 0;) {
    if (counts[i] > 0) return i + 1;
  }
  return 0;
}

CycleCounts ewens_cycle_counts(Theta theta, std::uint64_t n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("ewens_cycle_counts needs n >= 1");
  auto ones = feller_success_positions(theta, n, rng);
  ones.push_back(n + 1);
  CycleCounts out{n, std::vector<std::uint64_t>(n, 0)};
  for (std::size_t k = 1; k < ones.size(); ++k) ++out.counts[ones[k] - ones[k - 1] - 1];
  return out;
}

namespace {

void check_cycle_n(int n) {
  if (n < 1 || n > kMaxCycleLawN) {
    throw std::invalid_argument("cycle law enumeration needs 1 <= n <= " +
                                std::to_string(kMaxCycleLawN));
  }
}

// Calls visit(c) for every partition of n written as part counts c[i-1].
template <typename F>
void for_each_partition(int n, F&& visit) {
  std::vector<int> c(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int part, int left) -> void {
    if (left == 0) {
      visit(c);
      return;
    }
    if (part == 0) return;
    for (int k = left / part; k >= 0; --k) {
      c[static_cast<std::size_t>(part - 1)] = k;
      self(self, part - 1, left - k * part);
    }
    c[static_cast<std::size_t>(part - 1)] = 0;
  };
  rec(rec, n, n);
}

// Law of (Z_1..Z_n) given sum i Z_i = n with Z_i ~ Poisson(lambda(i)).
template <typename Lambda>
CycleLaw conditioned_poisson_law(int n, Lambda lambda) {
  CycleLaw law;
  double total = 0.0;
  for_each_partition(n, [&](const std::vector<int>& c) {
    double p = 1.0;
    for (int i = 1; i <= n; ++i) {
      double l = lambda(i);
      int k = c[static_cast<std::size_t>(i - 1)];
      p *= std::exp(-l) * std::pow(l, k) / std::tgamma(k + 1.0);
    }
    law[c] = p;
    total += p;
  });
  for (auto& [c, p] : law) p /= total;
  return law;
}

double max_law_difference(const CycleLaw& a, const CycleLaw& b) {
  if (a.size() != b.size()) return 1.0;
  double worst = 0.0;
  for (const auto& [c, p] : a) {
    auto it = b.find(c);
    if (it == b.end()) return 1.0;
    worst = std::max(worst, std::abs(p - it->second));
  }
  return worst;
}

double harmonic(int n) {
  double h = 0.0;
  for (int i = n; i >= 1; --i) h += 1.0 / i;
  return h;
}

// Coefficients of exp(sum_{j=b+1}^{n} s^j / j) up to s^n.
std::vector<long double> remainder_coefficients(int n, int b) {
  std::vector<long double> g(static_cast<std::size_t>(n) + 1, 0.0L);
  g[0] = 1.0L;
  for (int r = 1; r <= n; ++r) {
    long double s = 0.0L;
    for (int j = b + 1; j <= r; ++j) s += g[static_cast<std::size_t>(r - j)];
    g[static_cast<std::size_t>(r)] = s / r;
  }
  return g;
}

}  // namespace

CycleLaw cauchy_cycle_law(int n) {
  check_cycle_n(n);
  CycleLaw law;
  for_each_partition(n, [&](const std::vector<int>& c) {
    double p = 1.0;
    for (int i = 1; i <= n; ++i) {
      int k = c[static_cast<std::size_t>(i - 1)];
      p /= std::pow(static_cast<double>(i), k) * std::tgamma(k + 1.0);
    }
    law[c] = p;
  });
  return law;
}

CycleLawReport exact_cycle_law_check(int n) {
  check_cycle_n(n);
  CycleLawReport report{n, {}, {}, 0.0, 0.0, 0.0};
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t total = 0;
  std::map<std::vector<int>, std::uint64_t> counts;
  do {
    std::vector<int> type(static_cast<std::size_t>(n), 0);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int s = 0; s < n; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      int len = 0;
      for (int x = s; !seen[static_cast<std::size_t>(x)]; x = perm[static_cast<std::size_t>(x)]) {
        seen[static_cast<std::size_t>(x)] = true;
        ++len;
      }
      ++type[static_cast<std::size_t>(len - 1)];
    }
    ++counts[type];
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (const auto& [c, k] : counts) {
    report.enumerated[c] = static_cast<double>(k) / static_cast<double>(total);
  }
  report.conditioned = conditioned_poisson_law(n, [](int i) { return 1.0 / i; });
  report.max_error_conditioned = max_law_difference(report.enumerated, report.conditioned);
  const double z1 = n == 1 ? 0.5 : 1.0 - 1.0 / n;
  const double z2 = 0.5;
  auto sl1 = conditioned_poisson_law(n, [z1](int i) { return std::pow(z1, i) / i; });
  auto sl2 = conditioned_poisson_law(n, [z2](int i) { return std::pow(z2, i) / i; });
  report.max_error_shepp_lloyd = max_law_difference(report.enumerated, sl1);
  report.max_error_z_pair = max_law_difference(sl1, sl2);
  return report;
}

double exact_prefix_tv_grouped(int n, int b) {
  if (n < 1 || b < 0 || b > n) throw std::invalid_argument("need 0 <= b <= n, n >= 1");
  if (b == 0) return 0.0;
  const auto g = remainder_coefficients(n, b);
  const long double hb = harmonic(b);
  const long double e_hb = std::exp(hb);
  std::vector<long double> a(static_cast<std::size_t>(n) + 1, 0.0L);
  a[0] = 1.0L;
  for (int m = 1; m <= n; ++m) {
    long double s = 0.0L;
    for (int j = 1; j <= std::min(b, m); ++j) s += a[static_cast<std::size_t>(m - j)];
    a[static_cast<std::size_t>(m)] = s / m;
  }
  long double body = 0.0L;
  long double covered = 0.0L;
  for (int m = 0; m <= n; ++m) {
    long double pz = a[static_cast<std::size_t>(m)] / e_hb;
    covered += pz;
    body += pz * std::fabs(1.0L - e_hb * g[static_cast<std::size_t>(n - m)]);
  }
  return static_cast<double>(0.5L * (body + (1.0L - covered)));
}

TVReport exact_prefix_tv(int n, int b) {
  if (n < 1 || b < 0 || b > n) throw std::invalid_argument("need 0 <= b <= n, n >= 1");
  if (b == 0) return {0.0, TVMethod::ExactEnumeration, 0.0};
  // Number of vectors with sum i c_i <= n, parts at most b.
  std::vector<double> ways(static_cast<std::size_t>(n) + 1, 0.0);
  ways[0] = 1.0;
  for (int i = 1; i <= b; ++i) {
    for (int m = i; m <= n; ++m) ways[static_cast<std::size_t>(m)] += ways[static_cast<std::size_t>(m - i)];
  }
  double vectors = std::accumulate(ways.begin(), ways.end(), 0.0);
  if (vectors > kMaxPrefixVectors) {
    throw std::length_error("prefix enumeration would visit " + std::to_string(vectors) +
                            " vectors");
  }
  const auto g = remainder_coefficients(n, b);
  const long double hb = harmonic(b);
  const long double e_hb = std::exp(hb);
  long double body = 0.0L;
  long double covered = 0.0L;
  // Depth-first over c_b, c_{b-1}, ..., c_1 carrying prod (1/i)^{c_i}/c_i!.
  auto rec = [&](auto&& self, int part, int used, long double weight) -> void {
    if (part == 0) {
      long double pz = weight / e_hb;
      long double pc = weight * g[static_cast<std::size_t>(n - used)];
      covered += pz;
      body += std::fabs(pz - pc);
      return;
    }
    long double w = weight;
    for (int k = 0; used + k * part <= n; ++k) {
      if (k > 0) w *= 1.0L / (static_cast<long double>(part) * k);
      self(self, part - 1, used + k * part, w);
    }
  };
  rec(rec, b, 0, 1.0L);
  double value = static_cast<double>(0.5L * (body + (1.0L - covered)));
  double grouped = exact_prefix_tv_grouped(n, b);
  return {value, TVMethod::ExactEnumeration, std::abs(value - grouped) + 1e-15};
}

std::vector<std::uint64_t> factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("cannot factorize 0");
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  static constexpr std::uint64_t kWheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  std::uint64_t p = 7;
  for (int w = 0; p <= n / p; p += kWheel[w], w = (w + 1) % 8) {
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

FactorMultiset factor_uniform_integer(std::uint64_t n_ceiling, RngStream& rng) {
  if (n_ceiling < 1 || n_ceiling > kMaxFactorCeiling) {
    throw std::invalid_argument("n_ceiling must lie in [1, 1e9]");
  }
  std::uint64_t n = 1 + rng.uniform_int(n_ceiling);
  return FactorMultiset{n_ceiling, n, n == 1 ? std::vector<std::uint64_t>{} : factorize(n)};
}

SmoothRoughCounts smooth_rough_counts(std::uint64_t x, std::uint64_t y) {
  if (x < 1) throw std::invalid_argument("x must be positive");
  if (x > kMaxSieveLimit) throw std::length_error("sieve limit is 1e8");
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while ((root + 1) * (root + 1) <= x) ++root;
  while (root * root > x) --root;
  std::vector<std::uint32_t> primes;
  {
    std::vector<bool> composite(root + 1, false);
    for (std::uint64_t p = 2; p <= root; ++p) {
      if (composite[p]) continue;
      primes.push_back(static_cast<std::uint32_t>(p));
      for (std::uint64_t q = p * p; q <= root; q += p) composite[q] = true;
    }
  }
  constexpr std::uint64_t kSegment = 1 << 18;
  std::vector<std::uint32_t> rem(kSegment);
  std::vector<std::uint32_t> largest(kSegment);
  std::vector<std::uint32_t> least(kSegment);
  SmoothRoughCounts out{0, 0};
  for (std::uint64_t lo = 1; lo <= x; lo += kSegment) {
    const std::uint64_t hi = std::min(x + 1, lo + kSegment);
    const std::size_t len = hi - lo;
    for (std::size_t k = 0; k < len; ++k) {
      rem[k] = static_cast<std::uint32_t>(lo + k);
      largest[k] = 1;
      least[k] = 0;
    }
    for (std::uint32_t p : primes) {
      std::uint64_t first = (lo + p - 1) / p * p;
      for (std::uint64_t v = first; v < hi; v += p) {
        std::size_t k = v - lo;
        if (least[k] == 0) least[k] = p;
        largest[k] = p;
        while (rem[k] % p == 0) rem[k] /= p;
      }
    }
    for (std::size_t k = 0; k < len; ++k) {
      // What remains is 1 or a single prime above sqrt(x).
      std::uint64_t top = rem[k] > 1 ? rem[k] : largest[k];
      std::uint64_t bottom = least[k] != 0 ? least[k] : rem[k];
      if (top <= y) ++out.psi;
      if (bottom == 1 || bottom > y) ++out.phi;
    }
  }
  return out;
}

std::vector<std::uint64_t> random_mapping_components(std::uint64_t n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("random mapping needs n >= 1");
  std::vector<std::uint64_t> f(n);
  for (auto& v : f) v = rng.uniform_int(n);
  constexpr std::uint64_t kNone = ~0ULL;
  std::vector<std::uint64_t> comp(n, kNone);
  std::vector<std::uint8_t> on_path(n, 0);
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint64_t> path;
  for (std::uint64_t s = 0; s < n; ++s) {
    if (comp[s] != kNone) continue;
    path.clear();
    std::uint64_t x = s;
    while (comp[x] == kNone && !on_path[x]) {
      on_path[x] = 1;
      path.push_back(x);
      x = f[x];
    }
    std::uint64_t id;
    if (comp[x] == kNone) {
      id = sizes.size();  // closed a new cycle
      sizes.push_back(0);
    } else {
      id = comp[x];
    }
    for (std::uint64_t v : path) {
      comp[v] = id;
      on_path[v] = 0;
    }
    sizes[id] += path.size();
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

namespace {

std::vector<std::pair<std::uint64_t, int>> prime_powers(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p : factorize(m)) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

// Right-continuous distribution function of a discrete measure.
struct StepCdf {
  std::vector<double> x;
  std::vector<double> cum;
  explicit StepCdf(const DiscreteMeasure& m) : x(m.support()), cum(m.masses()) {
    std::partial_sum(cum.begin(), cum.end(), cum.begin());
  }
  double operator()(double t) const {
    auto it = std::upper_bound(x.begin(), x.end(), t);
    return it == x.begin() ? 0.0 : cum[static_cast<std::size_t>(it - x.begin()) - 1];
  }
};

// sup_t A(t) - B(t + eps) <= eps. The difference is constant between
// consecutive breakpoints, so it is evaluated at interval midpoints.
bool levy_side_holds(const StepCdf& a, const StepCdf& b, double eps) {
  std::vector<double> pts = a.x;
  for (double v : b.x) pts.push_back(v - eps);
  std::sort(pts.begin(), pts.end());
  pts.push_back(pts.back() + 1.0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] <= pts[i]) continue;
    double t = 0.5 * (pts[i] + pts[i + 1]);
    if (a(t) - b(t + eps) > eps + 1e-15) return false;
  }
  return true;
}

}  // namespace

DiscreteMeasure divisor_measure(std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("divisor_measure needs m >= 1");
  if (m == 1) return DiscreteMeasure({1.0}, {1.0});
  std::vector<std::uint64_t> divisors{1};
  for (auto [p, e] : prime_powers(m)) {
    std::size_t base = divisors.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pk);
    }
  }
  const double log_m = std::log(static_cast<double>(m));
  std::vector<double> locs;
  for (std::uint64_t d : divisors) {
    locs.push_back(d == m ? 1.0 : std::log(static_cast<double>(d)) / log_m);
  }
  std::vector<double> w(locs.size(), 1.0 / static_cast<double>(locs.size()));
  return DiscreteMeasure::from_atoms(std::move(locs), std::move(w));
}

double levy_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  StepCdf f(mu);
  StepCdf g(nu);
  auto feasible = [&](double eps) { return levy_side_holds(f, g, eps) && levy_side_holds(g, f, eps); };
  if (feasible(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-13) {
    double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double largest_prime_sqrt_fraction(std::uint64_t n_ceiling, std::uint64_t draws, RngStream& rng) {
  if (draws == 0) throw std::invalid_argument("draws must be positive");
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < draws; ++k) {
    auto f = factor_uniform_integer(n_ceiling, rng);
    if (f.p(1) * f.p(1) <= f.value) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(draws);
}

std::vector<double> divisor_log_ratios(std::uint64_t n_ceiling, std::uint64_t draws,
                                       RngStream& rng) {
  std::vector<double> out;
  out.reserve(draws);
  for (std::uint64_t k = 0; k < draws; ++k) {
    auto f = factor_uniform_integer(n_ceiling, rng);
    if (f.value == 1) {
      out.push_back(1.0);
      continue;
    }
    // A uniform divisor has independent uniform exponents.
    double log_d = 0.0;
    for (auto [p, e] : prime_powers(f.value)) {
      log_d += static_cast<double>(rng.uniform_int(static_cast<std::uint64_t>(e) + 1)) *
               std::log(static_cast<double>(p));
    }
    out.push_back(std::min(1.0, log_d / std::log(static_cast<double>(f.value))));
  }
  return out;
}

DiscreteMeasure bernoulli_subset_measure(Theta theta, int depth, RngStream& rng) {
  if (depth < 1 || depth > 20) throw std::invalid_argument("depth must lie in [1, 20]");
  auto pd = sample_pd(theta, static_cast<std::size_t>(depth), 1e-12, rng);
  const auto& v = pd.ranked.entries();
  const std::size_t k = v.size();
  std::vector<double> sums{0.5 * pd.ranked.tail_mass()};
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t base = sums.size();
    for (std::size_t s = 0; s < base; ++s) sums.push_back(sums[s] + v[i]);
  }
  std::vector<double> w(sums.size(), 1.0 / static_cast<double>(sums.size()));
  return DiscreteMeasure::from_atoms(std::move(sums), std::move(w));
}

DiscreteMeasure arcsine_reference(int atoms) {
  if (atoms < 1) throw std::invalid_argument("atoms must be positive");
  std::vector<double> x;
  for (int k = 0; k < atoms; ++k) {
    double s = std::sin(0.5 * std::numbers::pi * (k + 0.5) / atoms);
    x.push_back(s * s);
  }
  return DiscreteMeasure(std::move(x), std::vector<double>(static_cast<std::size_t>(atoms), 1.0 / atoms));
}

double divisor_levy_discrepancy(std::uint64_t n_ceiling, std::uint64_t draws, RngStream& rng) {
  const DiscreteMeasure ref = arcsine_reference(256);
  std::vector<double> a;
  std::vector<double> b;
  for (std::uint64_t k = 0; k < draws; ++k) {
    auto f = factor_uniform_integer(n_ceiling, rng);
    a.push_back(levy_distance(divisor_measure(f.value), ref));
    b.push_back(levy_distance(bernoulli_subset_measure(Theta(1.0), 9, rng), ref));
  }
  return stats::ks_two_sample(a, b).statistic;
}

}  // namespace sipp
