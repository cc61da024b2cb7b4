#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rrl/psp.hpp"

namespace rrl {

// A bounded one-sided sequence a_0, a_1, ... produced by a named rule.
// Values can be cached in a prefix; every cached value is checked against
// the declared bound.
class CoeffStream {
 public:
  using Generator = std::function<Complex(std::uint64_t)>;

  CoeffStream(std::string name, Generator gen, double bound);

  const std::string& name() const { return name_; }
  double bound() const { return bound_; }

  Complex at(std::uint64_t k) const;
  /// Caches a_0 .. a_{n-1}. Throws InvalidArgument if |a_k| > bound + 1e-12.
  void materialize(std::size_t n);
  std::size_t materialized() const { return prefix_.size(); }

  static CoeffStream constant(Complex c);
  static CoeffStream periodic(std::vector<Complex> period);
  /// a_k = pre[k] for k < |pre|, then the period repeats.
  static CoeffStream preperiodic(std::vector<Complex> pre, std::vector<Complex> period);
  /// Inner Taylor coefficients of a simple pole series.
  static CoeffStream from_measure(const PoleMeasure& m);

 private:
  std::string name_;
  Generator gen_;
  double bound_;
  std::vector<Complex> prefix_;
};

// A finite two-sided window b_{-W} .. b_W: a truncated right-limit candidate.
struct Window {
  std::size_t half_width = 0;
  std::vector<Complex> values;  ///< values[n + W] = b_n
  std::uint64_t shift = 0;
  double residual = 0.0;
  double bound = 0.0;  ///< sequence bound B

  Complex at(std::int64_t n) const { return values.at(static_cast<std::size_t>(n + static_cast<std::int64_t>(half_width))); }
};

struct ShiftEntry {
  std::uint64_t shift = 0;
  double residual_pos = 0.0;  ///< max_{0<=n<=W} |a_{n+k} - a_n|
  Window window;              ///< b_n := a_{n+k}, -W <= n <= W
};

// Result of a renascent shift search. A nonempty report is numerical
// evidence of a renascent right limit, never a proof; an empty one is
// evidence against.
struct ShiftReport {
  std::size_t half_width = 0;
  std::uint64_t k_max = 0;
  double tol = 0.0;
  std::vector<ShiftEntry> entries;  ///< ascending shift

  std::vector<std::uint64_t> shifts() const;
};

/// All k in (W, K_max] with |a_{n+k} - a_n| <= tol for 0 <= n <= W.
ShiftReport renascent_shift_search(CoeffStream& a, std::size_t W, std::uint64_t k_max, double tol);

struct Cluster {
  Window representative;  ///< first-seen member
  std::size_t members = 0;
};

struct ClusterResult {
  std::vector<Cluster> clusters;
  std::vector<std::size_t> assignment;     ///< cluster id per report entry
  std::vector<double> distance_to_rep;     ///< negative-side sup distance per entry
};

/// Sup distance between the negative halves (-W <= n < 0) of two windows.
double negative_side_distance(const Window& a, const Window& b);

/// Greedy clustering of the negative halves by sup distance <= tol, visiting
/// entries in ascending shift order.
ClusterResult window_cluster(const ShiftReport& report, double tol);

// Truncated inner/outer generating functions of a window.
class GeneratingPair {
 public:
  explicit GeneratingPair(Window w) : w_(std::move(w)) {}
  /// sum_{0<=n<=W} b_n z^n, |z| < 1, with bound B|z|^{W+1}/(1-|z|).
  Evaluation inner(Complex z) const;
  /// -sum_{-W<=n<0} b_n z^n, |z| > 1, with bound B|z|^{-W-1}/(1-|z|^{-1}).
  Evaluation outer(Complex z) const;

 private:
  Window w_;
};

GeneratingPair generating_functions(const Window& w);

struct RrlResidualRow {
  BigInt shift;
  double residual_neg = 0.0;  ///< max_{-W<=n<0} |b_{n+k} - b_n|
  double residual_pos = 0.0;  ///< max_{0<=n<=W} |b_{n+k} - b_n|
  double residual() const { return std::max(residual_neg, residual_pos); }
};

struct RrlResidualTable {
  std::size_t half_width = 0;
  bool exact = false;  ///< all atoms exact: zero residuals are exact zeros
  std::vector<RrlResidualRow> rows;
};

/// For each shift k, max_{-W<=n<=W} |b_{n+k} - b_n| using the two-sided
/// coefficients of the measure. Shifts must be positive and increasing.
RrlResidualTable verify_rrl_on_psp(const PoleMeasure& m, const std::vector<BigInt>& shifts,
                                   std::size_t W);

}  // namespace rrl
