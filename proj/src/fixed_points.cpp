#include "sipp/fixed_points.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sipp {

double geometric_base(int k) {
  if (k < 0) throw std::invalid_argument("geometric_base needs k >= 0");
  if (k == 0) return 2.0;
  // f(b) = b^k (b - 1) - 1 is increasing and convex on (1, 2].
  auto f = [k](double b) {
    double bk = std::pow(b, k);
    return std::make_pair(bk * (b - 1.0) - 1.0, bk * ((k + 1) * b - k) / b);
  };
  boost::uintmax_t iters = 100;
  return boost::math::tools::newton_raphson_iterate(f, 2.0, 1.0, 2.0,
                                                    std::numeric_limits<double>::digits, iters);
}

std::optional<double> periodic_base(int m, int k) {
  if (m < 1) throw std::invalid_argument("periodic_base needs m >= 1");
  // phi(b) = m log(b - 1) - k log b; roots in (1, inf).
  auto phi = [m, k](double b) { return m * std::log(b - 1.0) - k * std::log(b); };
  auto solve = [&](double lo, double hi) {
    boost::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(phi, lo, hi,
                                               boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
  };
  double lo = 1.0 + 1e-15;
  if (m > k) {
    // phi increases from -inf to +inf.
    double hi = 2.0;
    while (phi(hi) < 0.0) hi *= 2.0;
    return solve(lo, hi);
  }
  if (m == k) return std::nullopt;
  // m < k: phi -> -inf at both ends, maximal at b* = k / (k - m).
  double peak = static_cast<double>(k) / (k - m);
  double top = phi(peak);
  if (top < 0.0) return std::nullopt;
  if (top == 0.0) return peak;
  return solve(lo, peak);
}

std::vector<double> spacing_transform(std::span<const double> points) {
  if (points.size() < 2) throw std::invalid_argument("need at least two points");
  std::vector<double> out;
  out.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1])) throw std::invalid_argument("points must be strictly increasing");
    out.push_back(points[i] - points[i - 1]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_displacement(int d) {
  if (d < 0) throw std::invalid_argument("displacements must be nonnegative (pi(i) <= i)");
  if (d > kMaxDisplacement) {
    throw std::invalid_argument(
        "displacement too large; unbounded displacements have no uniqueness guarantee");
  }
}

std::int64_t floor_mod(std::int64_t i, std::int64_t p) { return ((i % p) + p) % p; }

}  // namespace

DisplacementPermutation DisplacementPermutation::periodic(std::vector<int> pattern) {
  if (pattern.empty()) throw std::invalid_argument("pattern must be nonempty");
  for (int d : pattern) check_displacement(d);
  DisplacementPermutation p;
  p.pattern_ = std::move(pattern);
  p.periodic_ = true;
  return p;
}

DisplacementPermutation DisplacementPermutation::table(std::int64_t first,
                                                       std::vector<int> displacements, int tail) {
  for (int d : displacements) check_displacement(d);
  check_displacement(tail);
  DisplacementPermutation p;
  p.pattern_ = std::move(displacements);
  p.first_ = first;
  p.tail_ = tail;
  p.periodic_ = false;
  return p;
}

int DisplacementPermutation::d(std::int64_t i) const {
  if (periodic_) {
    return pattern_[static_cast<std::size_t>(floor_mod(i, static_cast<std::int64_t>(pattern_.size())))];
  }
  std::int64_t off = i - first_;
  if (off >= 0 && off < static_cast<std::int64_t>(pattern_.size())) {
    return pattern_[static_cast<std::size_t>(off)];
  }
  return tail_;
}

int DisplacementPermutation::bound() const {
  if (periodic_) return *std::max_element(pattern_.begin(), pattern_.end());
  int k = tail_;
  for (std::size_t off = 0; off < pattern_.size(); ++off) {
    if (first_ + static_cast<std::int64_t>(off) <= 0) k = std::max(k, pattern_[off]);
  }
  return k;
}

bool DisplacementPermutation::injective_on(std::int64_t lo, std::int64_t hi) const {
  std::set<std::int64_t> seen;
  for (std::int64_t i = lo; i <= hi; ++i) {
    if (!seen.insert(pi(i)).second) return false;
  }
  return true;
}

std::string DisplacementPermutation::describe() const {
  std::ostringstream os;
  if (periodic_) {
    os << "periodic(";
  } else {
    os << "table(first=" << first_ << ", tail=" << tail_ << "; ";
  }
  for (std::size_t i = 0; i < pattern_.size(); ++i) os << (i ? "," : "") << pattern_[i];
  os << ")";
  return os.str();
}

double IndexedSequence::at(std::int64_t i) const {
  if (i < first_index || i > last_index()) throw std::out_of_range("index outside the window");
  return values[static_cast<std::size_t>(i - first_index)];
}

IndexedSequence extend_forward(const IndexedSequence& prefix, const DisplacementPermutation& perm,
                               int steps, std::vector<std::int64_t> used,
                               bool require_injective) {
  if (prefix.values.empty()) throw std::invalid_argument("prefix must be nonempty");
  for (std::size_t i = 1; i < prefix.values.size(); ++i) {
    if (!(prefix.values[i] > prefix.values[i - 1])) {
      throw std::invalid_argument("prefix must be strictly increasing");
    }
  }
  std::set<std::int64_t> consumed(used.begin(), used.end());
  IndexedSequence out = prefix;
  for (int s = 0; s < steps; ++s) {
    std::int64_t i = out.last_index();
    std::int64_t j = perm.pi(i);
    if (j < out.first_index) {
      throw ExtensionError("displacement at i=" + std::to_string(i) +
                           " reaches before the known prefix");
    }
    if (require_injective && !consumed.insert(j).second) {
      throw ExtensionError("index " + std::to_string(j) + " is already used as a spacing");
    }
    out.values.push_back(out.values.back() + out.at(j));
  }
  return out;
}

double hilbert_distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size() || u.empty()) throw std::invalid_argument("vectors must match in length");
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0) || !(v[i] > 0.0)) throw std::invalid_argument("entries must be positive");
    double r = std::log(u[i] / v[i]);
    hi = std::max(hi, r);
    lo = std::min(lo, r);
  }
  return hi - lo;
}

EntranceResult entrance_solution(const DisplacementPermutation& perm, double tol,
                                 std::int64_t n_max, std::optional<std::vector<double>> seed) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const int k_bound = perm.bound();
  const std::size_t dim = static_cast<std::size_t>(std::max(k_bound, 1)) + 1;
  std::vector<double> s = seed.value_or(std::vector<double>(dim, 1.0));
  if (s.size() != dim) throw std::invalid_argument("seed length must be K + 1");
  for (double v : s) {
    if (!(v > 0.0)) throw std::invalid_argument("seed entries must be positive");
  }
  // m is row-major; right-multiplying by A^{(d)} maps column c to
  // M[:,0] contributions: (M A)[:, j] = M[:, 0] * A(0, j) + M[:, j+1] (j < K).
  std::vector<double> m(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = 1.0;
  std::vector<double> next(dim * dim);

  auto certificate = [&]() {
    // Diameter of the nonzero columns; infinite while a nonzero column has a zero entry.
    double diam = 0.0;
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < dim; ++c) {
      bool any = false;
      bool all = true;
      for (std::size_t r = 0; r < dim; ++r) {
        if (m[r * dim + c] > 0.0) {
          any = true;
        } else {
          all = false;
        }
      }
      if (any && !all) return std::numeric_limits<double>::infinity();
      if (any) cols.push_back(c);
    }
    for (std::size_t a = 0; a < cols.size(); ++a) {
      for (std::size_t b = a + 1; b < cols.size(); ++b) {
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < dim; ++r) {
          double q = std::log(m[r * dim + cols[a]] / m[r * dim + cols[b]]);
          hi = std::max(hi, q);
          lo = std::min(lo, q);
        }
        diam = std::max(diam, hi - lo);
      }
    }
    return diam;
  };

  EntranceResult result{{}, std::numeric_limits<double>::infinity(), 0, false, "", 0.0};
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const int d = perm.d(-n);
    // A^{(d)}: row 0 has ones at columns 0 and d (a single 2 when d = 0);
    // row i > 0 has a one at column i - 1.
    for (std::size_t r = 0; r < dim; ++r) {
      const double* row = &m[r * dim];
      double* out = &next[r * dim];
      for (std::size_t j = 0; j < dim; ++j) {
        double v = (j + 1 < dim) ? row[j + 1] : 0.0;
        if (j == 0) v += row[0];
        if (j == static_cast<std::size_t>(d)) v += row[0];
        out[j] = v;
      }
    }
    double mx = *std::max_element(next.begin(), next.end());
    for (double& v : next) v /= mx;
    m.swap(next);
    result.factors = n;
    if (n >= static_cast<std::int64_t>(2 * (dim - 1))) {
      result.certificate = certificate();
      if (result.certificate <= tol) {
        result.converged = true;
        break;
      }
    }
  }
  std::vector<double> x(dim, 0.0);  // (x_0, x_{-1}, ..., x_{-K})
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) x[r] += m[r * dim + c] * s[c];
  }
  for (std::size_t r = 1; r < dim; ++r) result.state.ratios.push_back(x[r] / x[r - 1]);
  const int d0 = perm.d(0);
  if (static_cast<std::size_t>(d0) < dim) result.forward_ratio = 1.0 + x[static_cast<std::size_t>(d0)] / x[0];
  if (!result.converged) {
    std::ostringstream os;
    os << "certificate " << result.certificate << " above tolerance " << tol << " after "
       << result.factors << " factors";
    result.diagnostic = os.str();
  }
  return result;
}

IndexedSequence entrance_window(const RatioState& state) {
  const std::size_t k = state.ratios.size();
  std::vector<double> desc{1.0};
  for (double r : state.ratios) desc.push_back(desc.back() * r);
  std::reverse(desc.begin(), desc.end());
  return IndexedSequence{-static_cast<std::int64_t>(k), desc};
}

NonnegIntMatrix::NonnegIntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {
  if (n == 0) throw std::invalid_argument("matrix dimension must be positive");
}

NonnegIntMatrix NonnegIntMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  NonnegIntMatrix m(n);
  m(i, j) = 1;
  return m;
}

NonnegIntMatrix NonnegIntMatrix::below_diagonal(std::size_t n) {
  NonnegIntMatrix m(n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1;
  return m;
}

NonnegIntMatrix NonnegIntMatrix::companion(std::size_t n) {
  return below_diagonal(n) + unit(n, 0, 0);
}

NonnegIntMatrix NonnegIntMatrix::step(std::size_t n, std::size_t d) {
  if (d >= n) throw std::invalid_argument("displacement exceeds matrix dimension");
  return companion(n) + unit(n, 0, d);
}

NonnegIntMatrix NonnegIntMatrix::operator*(const NonnegIntMatrix& other) const {
  if (other.n_ != n_) throw std::invalid_argument("dimension mismatch");
  NonnegIntMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      std::uint64_t s = 0;
      for (std::size_t l = 0; l < n_; ++l) {
        std::uint64_t prod = 0;
        if (__builtin_mul_overflow((*this)(i, l), other(l, j), &prod) ||
            __builtin_add_overflow(s, prod, &s)) {
          throw std::overflow_error("integer matrix product overflows 64 bits");
        }
      }
      out(i, j) = s;
    }
  }
  return out;
}

NonnegIntMatrix NonnegIntMatrix::operator+(const NonnegIntMatrix& other) const {
  if (other.n_ != n_) throw std::invalid_argument("dimension mismatch");
  NonnegIntMatrix out(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (__builtin_add_overflow(a_[i], other.a_[i], &out.a_[i])) {
      throw std::overflow_error("integer matrix sum overflows 64 bits");
    }
  }
  return out;
}

NonnegIntMatrix NonnegIntMatrix::power(unsigned e) const {
  NonnegIntMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) out(i, i) = 1;
  for (unsigned i = 0; i < e; ++i) out = out * *this;
  return out;
}

std::vector<double> NonnegIntMatrix::apply(std::span<const double> v) const {
  if (v.size() != n_) throw std::invalid_argument("dimension mismatch");
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i] += static_cast<double>((*this)(i, j)) * v[j];
  }
  return out;
}

double contraction_bound(int k, double r) {
  double s = std::ldexp(1.0, 2 * k);
  return std::log((1.0 + s * std::exp(r)) / (1.0 + s));
}

}  // namespace sipp
