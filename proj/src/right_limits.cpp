#include "rrl/right_limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rrl/parallel.hpp"

namespace rrl {

CoeffStream::CoeffStream(std::string name, Generator gen, double bound)
    : name_(std::move(name)), gen_(std::move(gen)), bound_(bound) {
  require(static_cast<bool>(gen_), "CoeffStream: empty generator");
  require(std::isfinite(bound_) && bound_ >= 0.0, "CoeffStream: bound must be a nonnegative real");
}

Complex CoeffStream::at(std::uint64_t k) const {
  if (k < prefix_.size()) return prefix_[k];
  return gen_(k);
}

void CoeffStream::materialize(std::size_t n) {
  if (n <= prefix_.size()) return;
  std::size_t start = prefix_.size();
  prefix_.resize(n);
  parallel_for(n - start, [&](std::size_t i) { prefix_[start + i] = gen_(start + i); }, 4096);
  for (std::size_t k = start; k < n; ++k) {
    if (std::abs(prefix_[k]) > bound_ + 1e-12) {
      prefix_.resize(start);
      fail(ErrorCode::InvalidArgument,
           "CoeffStream '" + name_ + "': coefficient " + std::to_string(k) + " exceeds the declared bound");
    }
  }
}

CoeffStream CoeffStream::constant(Complex c) {
  return CoeffStream("constant", [c](std::uint64_t) { return c; }, std::abs(c));
}

CoeffStream CoeffStream::periodic(std::vector<Complex> period) {
  return preperiodic({}, std::move(period));
}

CoeffStream CoeffStream::preperiodic(std::vector<Complex> pre, std::vector<Complex> period) {
  require(!period.empty(), "CoeffStream: empty period");
  double b = 0.0;
  for (auto c : pre) b = std::max(b, std::abs(c));
  for (auto c : period) b = std::max(b, std::abs(c));
  std::string name = pre.empty() ? "periodic" : "preperiodic";
  return CoeffStream(
      name,
      [pre = std::move(pre), period = std::move(period)](std::uint64_t k) {
        if (k < pre.size()) return pre[k];
        return period[(k - pre.size()) % period.size()];
      },
      b);
}

CoeffStream CoeffStream::from_measure(const PoleMeasure& m) {
  return CoeffStream(
      "psp", [m](std::uint64_t k) { return psp_coefficient(m, static_cast<std::int64_t>(k)); },
      m.total_mass());
}

std::vector<std::uint64_t> ShiftReport::shifts() const {
  std::vector<std::uint64_t> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.shift);
  return out;
}

ShiftReport renascent_shift_search(CoeffStream& a, std::size_t W, std::uint64_t k_max, double tol) {
  require(W >= 1, "renascent_shift_search: W must be >= 1");
  require(k_max > W, "renascent_shift_search: K_max must exceed W");
  require(std::isfinite(tol) && tol >= 0.0, "renascent_shift_search: tol must be >= 0");
  require(k_max < (std::uint64_t{1} << 40), "renascent_shift_search: K_max too large");

  a.materialize(static_cast<std::size_t>(k_max + W + 1));

  std::size_t n_candidates = static_cast<std::size_t>(k_max - W);
  std::vector<double> residual(n_candidates, std::numeric_limits<double>::infinity());
  parallel_for(n_candidates, [&](std::size_t i) {
    std::uint64_t k = W + 1 + i;
    double r = 0.0;
    for (std::size_t n = 0; n <= W; ++n) {
      r = std::max(r, std::abs(a.at(n + k) - a.at(n)));
      if (r > tol) break;
    }
    residual[i] = r;
  });

  ShiftReport rep;
  rep.half_width = W;
  rep.k_max = k_max;
  rep.tol = tol;
  for (std::size_t i = 0; i < n_candidates; ++i) {
    if (!(residual[i] <= tol)) continue;
    std::uint64_t k = W + 1 + i;
    ShiftEntry e;
    e.shift = k;
    e.residual_pos = residual[i];
    e.window.half_width = W;
    e.window.shift = k;
    e.window.residual = residual[i];
    e.window.bound = a.bound();
    e.window.values.resize(2 * W + 1);
    for (std::size_t j = 0; j < 2 * W + 1; ++j) e.window.values[j] = a.at(k - W + j);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

double negative_side_distance(const Window& a, const Window& b) {
  require(a.half_width == b.half_width, "negative_side_distance: window widths differ");
  double d = 0.0;
  for (std::size_t j = 0; j < a.half_width; ++j) d = std::max(d, std::abs(a.values[j] - b.values[j]));
  return d;
}

ClusterResult window_cluster(const ShiftReport& report, double tol) {
  require(!report.entries.empty(), "window_cluster: empty report");
  require(std::isfinite(tol) && tol >= 0.0, "window_cluster: tol must be >= 0");
  ClusterResult out;
  for (const auto& e : report.entries) {
    std::size_t id = out.clusters.size();
    double dist = 0.0;
    for (std::size_t c = 0; c < out.clusters.size(); ++c) {
      double d = negative_side_distance(e.window, out.clusters[c].representative);
      if (d <= tol) {
        id = c;
        dist = d;
        break;
      }
    }
    if (id == out.clusters.size()) out.clusters.push_back(Cluster{e.window, 0});
    ++out.clusters[id].members;
    out.assignment.push_back(id);
    out.distance_to_rep.push_back(dist);
  }
  return out;
}

Evaluation GeneratingPair::inner(Complex z) const {
  double r = std::abs(z);
  require(r < 1.0, "generating_functions: inner function needs |z| < 1");
  Complex s{};
  for (std::size_t n = w_.half_width + 1; n-- > 0;) s = s * z + w_.values[w_.half_width + n];
  double bound = w_.bound * std::pow(r, static_cast<double>(w_.half_width + 1)) / (1.0 - r);
  return {s, bound};
}

Evaluation GeneratingPair::outer(Complex z) const {
  double r = std::abs(z);
  require(r > 1.0, "generating_functions: outer function needs |z| > 1");
  Complex w = 1.0 / z;
  Complex s{};
  // values[W - i] = b_{-i}
  for (std::size_t i = w_.half_width; i >= 1; --i) s = (s + w_.values[w_.half_width - i]) * w;
  double bound = w_.bound * std::pow(r, -static_cast<double>(w_.half_width + 1)) / (1.0 - 1.0 / r);
  return {-s, bound};
}

GeneratingPair generating_functions(const Window& w) {
  require(w.values.size() == 2 * w.half_width + 1, "generating_functions: malformed window");
  return GeneratingPair(w);
}

RrlResidualTable verify_rrl_on_psp(const PoleMeasure& m, const std::vector<BigInt>& shifts,
                                   std::size_t W) {
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    require(shifts[i] > 0, "verify_rrl_on_psp: shifts must be positive");
    if (i > 0) require(shifts[i] > shifts[i - 1], "verify_rrl_on_psp: shifts must be increasing");
  }
  const auto w = static_cast<std::int64_t>(W);
  std::vector<Complex> base(2 * W + 1);
  for (std::int64_t n = -w; n <= w; ++n) base[static_cast<std::size_t>(n + w)] = psp_coefficient(m, n);

  RrlResidualTable table;
  table.half_width = W;
  table.exact = m.all_exact();
  table.rows.resize(shifts.size());
  parallel_for(shifts.size(), [&](std::size_t i) {
    RrlResidualRow row;
    row.shift = shifts[i];
    for (std::int64_t n = -w; n <= w; ++n) {
      Complex shifted = psp_coefficient(m, BigInt(shifts[i] + n));
      double d = std::abs(shifted - base[static_cast<std::size_t>(n + w)]);
      if (n < 0) {
        row.residual_neg = std::max(row.residual_neg, d);
      } else {
        row.residual_pos = std::max(row.residual_pos, d);
      }
    }
    table.rows[i] = std::move(row);
  }, 1);
  return table;
}

}  // namespace rrl
