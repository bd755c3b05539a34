#pragma once

// Deterministic sequences equal to their own spacings: x_{i+1} = x_i + x_{pi(i)}
// with pi(i) <= i. Geometric solutions, periodic orbits of RANK o DELTA,
// forward extension, and entrance solutions certified in the Hilbert
// projective metric.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sipp {

// Root b > 1 of b^{k+1} - b^k = 1.
double geometric_base(int k);

// Smallest root b > 1 of (b - 1)^m = b^k, if any.
std::optional<double> periodic_base(int m, int k);

// Consecutive differences of a strictly increasing array, sorted ascending.
std::vector<double> spacing_transform(std::span<const double> points);

inline constexpr int kMaxDisplacement = 62;

// Displacements d(i) = i - pi(i) >= 0, either periodic (d(i) = pattern[i mod p])
// or an explicit table on [first, first + size) with a constant tail elsewhere.
class DisplacementPermutation {
 public:
  static DisplacementPermutation periodic(std::vector<int> pattern);
  static DisplacementPermutation table(std::int64_t first, std::vector<int> displacements,
                                       int tail);

  int d(std::int64_t i) const;
  std::int64_t pi(std::int64_t i) const { return i - d(i); }
  // sup of d(i) over i <= 0.
  int bound() const;
  // Whether i -> pi(i) is injective for i in [lo, hi].
  bool injective_on(std::int64_t lo, std::int64_t hi) const;
  std::string describe() const;

 private:
  DisplacementPermutation() = default;
  std::vector<int> pattern_;
  std::int64_t first_ = 0;
  int tail_ = 0;
  bool periodic_ = true;
};

// A window x_first, x_{first+1}, ... of a sequence indexed by integers.
struct IndexedSequence {
  std::int64_t first_index;
  std::vector<double> values;
  std::int64_t last_index() const {
    return first_index + static_cast<std::int64_t>(values.size()) - 1;
  }
  double at(std::int64_t i) const;
};

struct ExtensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Appends `steps` values by x_{i+1} = x_i + x_{pi(i)}. `used` lists indices
// already consumed as spacings by the prefix; a reuse raises ExtensionError
// when require_injective is set. A displacement reaching before the prefix
// also raises ExtensionError.
IndexedSequence extend_forward(const IndexedSequence& prefix, const DisplacementPermutation& perm,
                               int steps, std::vector<std::int64_t> used = {},
                               bool require_injective = true);

// Ratios (r_1, ..., r_K) = (x_{-1}/x_0, x_{-2}/x_{-1}, ..., x_{-K}/x_{-K+1}),
// each in [1/2, 1).
struct RatioState {
  std::vector<double> ratios;
};

struct EntranceResult {
  RatioState state;
  double certificate;   // Hilbert diameter of the image cone
  std::int64_t factors; // number of matrix factors used
  bool converged;
  std::string diagnostic;
  // x_1 / x_0 implied by the same product.
  double forward_ratio;
};

// Renormalized products M^{(n)} = F^{(-1)} ... F^{(-n)} of (K+1)x(K+1) matrices,
// K = max(bound, 1), until the Hilbert diameter of M's nonzero columns is at
// most tol. The certificate bounds |log r_computed - log r_true| for every ratio.
EntranceResult entrance_solution(const DisplacementPermutation& perm, double tol,
                                 std::int64_t n_max = 100000,
                                 std::optional<std::vector<double>> seed = std::nullopt);

// Builds x_{-K}, ..., x_0 = 1 from an entrance ratio vector.
IndexedSequence entrance_window(const RatioState& state);

// max_i log(u_i/v_i) - min_i log(u_i/v_i).
double hilbert_distance(std::span<const double> u, std::span<const double> v);

// Square matrix of nonnegative integers with checked arithmetic.
class NonnegIntMatrix {
 public:
  explicit NonnegIntMatrix(std::size_t n);
  static NonnegIntMatrix unit(std::size_t n, std::size_t i, std::size_t j);  // E^{(i,j)}
  static NonnegIntMatrix below_diagonal(std::size_t n);                      // B
  static NonnegIntMatrix companion(std::size_t n);                           // C = B + E^{(0,0)}
  static NonnegIntMatrix step(std::size_t n, std::size_t d);                 // A^{(d)} = C + E^{(0,d)}

  std::size_t size() const noexcept { return n_; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::uint64_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  // Throws std::overflow_error on overflow.
  NonnegIntMatrix operator*(const NonnegIntMatrix& other) const;
  NonnegIntMatrix operator+(const NonnegIntMatrix& other) const;
  NonnegIntMatrix power(unsigned e) const;
  bool operator==(const NonnegIntMatrix&) const = default;
  std::vector<double> apply(std::span<const double> v) const;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> a_;
};

// The contraction bound log((1 + s e^r)/(1 + s)) with s = 2^{2k}, r = k log 2.
double contraction_bound(int k, double r);

}  // namespace sipp
