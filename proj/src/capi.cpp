#include "rrl/rrl.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>

#include "rrl/boundary_probe.hpp"
#include "rrl/diophantine.hpp"
#include "rrl/dynamics.hpp"
#include "rrl/parallel.hpp"
#include "rrl/recipes.hpp"
#include "rrl/serialize.hpp"

struct rrl_measure {
  rrl::PoleMeasure m;
};
struct rrl_stream {
  rrl::CoeffStream s;
};
struct rrl_shift_report {
  rrl::ShiftReport r;
};
struct rrl_clusters {
  rrl::ClusterResult c;
  std::size_t half_width = 0;
};
struct rrl_recipe {
  rrl::RecipeConfig cfg;
};

namespace {

using rrl::Complex;
using rrl::ErrorCode;

thread_local std::string g_last_error;

template <class F>
rrl_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return RRL_OK;
  } catch (const rrl::Error& e) {
    g_last_error = e.what();
    return static_cast<rrl_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return RRL_E_INTERNAL;
}

template <class T>
void need(const T* p, const char* what) {
  if (p == nullptr) rrl::fail(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

Complex to_cpp(rrl_complex z) { return {z.re, z.im}; }
rrl_complex to_c(Complex z) { return {z.real(), z.imag()}; }

rrl::CirclePoint to_cpp(const rrl_point& p) {
  if (p.exact) return rrl::CirclePoint::rational(p.p, p.q);
  return rrl::CirclePoint::real(p.turns);
}

rrl_point to_c(const rrl::CirclePoint& p) {
  rrl_point out{};
  out.exact = p.is_exact() ? 1 : 0;
  out.p = p.is_exact() ? p.numerator() : 0;
  out.q = p.is_exact() ? p.denominator() : 0;
  out.turns = p.turns();
  return out;
}

std::vector<rrl::CirclePoint> points(const rrl_point* pts, std::size_t n) {
  if (n > 0) need(pts, "points");
  std::vector<rrl::CirclePoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(to_cpp(pts[i]));
  return out;
}

std::vector<Complex> complexes(const rrl_complex* v, std::size_t n) {
  if (n > 0) need(v, "values");
  std::vector<Complex> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(to_cpp(v[i]));
  return out;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rrl::Evaluator wrap(rrl_eval_fn g, void* user) {
  if (g == nullptr) rrl::fail(ErrorCode::InvalidArgument, "evaluator must not be NULL");
  return [g, user](Complex z) {
    rrl_complex out{};
    if (g(user, to_c(z), &out) != 0) rrl::fail(ErrorCode::EvalFailure, "evaluator callback reported failure");
    return to_cpp(out);
  };
}

void write_eval(const rrl::Evaluation& e, rrl_complex* value, double* bound) {
  need(value, "value");
  *value = to_c(e.value);
  if (bound != nullptr) *bound = e.bound;
}

rrl::UnimodalMap map_from(const char* spec) {
  need(spec, "map");
  std::string s(spec);
  if (s == "tent") return rrl::UnimodalMap::tent();
  if (s == "identity") return rrl::UnimodalMap::identity();
  if (s == "feigenbaum") return rrl::UnimodalMap::quadratic(rrl::kFeigenbaumParameter);
  if (s.rfind("quadratic:", 0) == 0) return rrl::UnimodalMap::quadratic(rrl::parse_real(s.substr(10)));
  rrl::fail(ErrorCode::InvalidArgument, "unknown map '" + s + "'");
}

rrl::RecipeConfig finalized(rrl::RecipeConfig cfg) {
  if (cfg.format.empty()) cfg.format = "json";
  return cfg;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += s + "\n";
  return out;
}

}  // namespace

extern "C" {

const char* rrl_version(void) { return "0.1.0"; }

const char* rrl_status_name(rrl_status status) {
  if (status == RRL_OK) return "Ok";
  if (status == RRL_E_INTERNAL) return "Internal";
  return rrl::error_name(static_cast<ErrorCode>(status));
}

const char* rrl_last_error(void) { return g_last_error.c_str(); }

int rrl_status_is_validation(rrl_status status) {
  switch (status) {
    case RRL_E_INVALID_ARGUMENT:
    case RRL_E_DUPLICATE_POLE:
    case RRL_E_DUPLICATE_ROOT:
    case RRL_E_NOT_A_ROOT:
    case RRL_E_RESONANT_GAMMA:
    case RRL_E_UNKNOWN_RECIPE:
    case RRL_E_PARSE:
    case RRL_E_IO:
      return 1;
    default:
      return 0;
  }
}

void rrl_string_free(char* s) { std::free(s); }

void rrl_set_thread_cap(unsigned cap) { rrl::set_thread_cap(cap); }

rrl_status rrl_point_rational(int64_t p, int64_t q, rrl_point* out) {
  return guarded([&] {
    need(out, "out");
    *out = to_c(rrl::CirclePoint::rational(p, q));
  });
}

rrl_status rrl_point_real(double turns, rrl_point* out) {
  return guarded([&] {
    need(out, "out");
    *out = to_c(rrl::CirclePoint::real(turns));
  });
}

rrl_status rrl_point_parse(const char* text, rrl_point* out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = to_c(rrl::parse_angle(text));
  });
}

rrl_status rrl_point_value(rrl_point p, rrl_complex* out) {
  return guarded([&] {
    need(out, "out");
    *out = to_c(to_cpp(p).value());
  });
}

rrl_status rrl_measure_create(rrl_measure** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rrl_measure{};
  });
}

void rrl_measure_free(rrl_measure* m) { delete m; }

rrl_status rrl_measure_add(rrl_measure* m, rrl_point point, rrl_complex weight) {
  return guarded([&] {
    need(m, "measure");
    m->m.add(to_cpp(point), to_cpp(weight));
  });
}

rrl_status rrl_measure_set_tail_mass(rrl_measure* m, double tail_mass) {
  return guarded([&] {
    need(m, "measure");
    m->m.set_tail_mass(tail_mass);
  });
}

rrl_status rrl_measure_from_json(const char* json, rrl_measure** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    rrl::Json j;
    try {
      j = rrl::Json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      rrl::fail(ErrorCode::Parse, std::string("measure: ") + e.what());
    }
    *out = new rrl_measure{rrl::measure_from_json(j)};
  });
}

rrl_status rrl_measure_load(const char* path, rrl_measure** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new rrl_measure{rrl::load_measure(path)};
  });
}

rrl_status rrl_measure_to_json(const rrl_measure* m, char** out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "out");
    *out = dup_string(rrl::measure_to_json(m->m).dump());
  });
}

rrl_status rrl_measure_size(const rrl_measure* m, size_t* out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "out");
    *out = m->m.size();
  });
}

rrl_status rrl_measure_total_mass(const rrl_measure* m, double* out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "out");
    *out = m->m.total_mass();
  });
}

rrl_status rrl_psp_eval(const rrl_measure* m, rrl_complex z, rrl_complex* out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "out");
    *out = to_c(rrl::psp_eval(m->m, to_cpp(z)));
  });
}

int rrl_psp_eval_fn(void* user, rrl_complex z, rrl_complex* out) {
  return rrl_psp_eval(static_cast<const rrl_measure*>(user), z, out) == RRL_OK ? 0 : 1;
}

rrl_status rrl_psp_coefficient(const rrl_measure* m, const char* n, rrl_complex* out) {
  return guarded([&] {
    need(m, "measure");
    need(n, "n");
    need(out, "out");
    rrl::BigInt k;
    try {
      k = rrl::BigInt(n);
    } catch (const std::exception&) {
      rrl::fail(ErrorCode::Parse, std::string("not an integer: '") + n + "'");
    }
    *out = to_c(rrl::psp_coefficient(m->m, k));
  });
}

rrl_status rrl_taylor_inner(const rrl_measure* m, size_t N, rrl_complex* out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "out");
    auto v = rrl::taylor_inner(m->m, N);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_c(v[i]);
  });
}

rrl_status rrl_taylor_outer(const rrl_measure* m, size_t N, rrl_complex* out) {
  return guarded([&] {
    need(m, "measure");
    if (N > 0) need(out, "out");
    auto v = rrl::taylor_outer(m->m, N);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_c(v[i]);
  });
}

rrl_status rrl_inner_partial_sum(const rrl_measure* m, rrl_complex z, size_t N, rrl_complex* value, double* bound) {
  return guarded([&] {
    need(m, "measure");
    write_eval(rrl::inner_partial_sum(m->m, to_cpp(z), N), value, bound);
  });
}

rrl_status rrl_outer_partial_sum(const rrl_measure* m, rrl_complex z, size_t N, rrl_complex* value, double* bound) {
  return guarded([&] {
    need(m, "measure");
    write_eval(rrl::outer_partial_sum(m->m, to_cpp(z), N), value, bound);
  });
}

rrl_status rrl_recover_residue(rrl_eval_fn g, void* user, rrl_point lambda, const double* radii, size_t n_radii,
                               double tol, rrl_complex* estimate, double* oscillation) {
  return guarded([&] {
    need(estimate, "estimate");
    if (n_radii > 0) need(radii, "radii");
    std::vector<double> r(radii, radii + n_radii);
    auto res = rrl::recover_residue(wrap(g, user), to_cpp(lambda), r, tol);
    *estimate = to_c(res.estimate);
    if (oscillation != nullptr) *oscillation = res.oscillation;
  });
}

rrl_status rrl_fourier_psp(const int64_t* j, const rrl_complex* fhat, size_t n, double theta, rrl_measure** out) {
  return guarded([&] {
    need(out, "out");
    if (n > 0) {
      need(j, "j");
      need(fhat, "fhat");
    }
    std::vector<std::pair<std::int64_t, Complex>> f;
    for (std::size_t i = 0; i < n; ++i) f.emplace_back(j[i], to_cpp(fhat[i]));
    *out = new rrl_measure{rrl::fourier_psp(f, theta)};
  });
}

rrl_status rrl_moment_sequence(const rrl_measure* m, size_t N, rrl_complex* out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "out");
    auto v = rrl::moment_sequence(m->m, N);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_c(v[i]);
  });
}

rrl_status rrl_stream_constant(rrl_complex c, rrl_stream** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rrl_stream{rrl::CoeffStream::constant(to_cpp(c))};
  });
}

rrl_status rrl_stream_periodic(const rrl_complex* period, size_t n, rrl_stream** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rrl_stream{rrl::CoeffStream::periodic(complexes(period, n))};
  });
}

rrl_status rrl_stream_preperiodic(const rrl_complex* pre, size_t n_pre, const rrl_complex* period, size_t n_period,
                                  rrl_stream** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rrl_stream{rrl::CoeffStream::preperiodic(complexes(pre, n_pre), complexes(period, n_period))};
  });
}

rrl_status rrl_stream_from_measure(const rrl_measure* m, rrl_stream** out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "out");
    *out = new rrl_stream{rrl::CoeffStream::from_measure(m->m)};
  });
}

rrl_status rrl_stream_hecke(double theta, double gamma, rrl_stream** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rrl_stream{rrl::hecke_stream(theta, gamma)};
  });
}

rrl_status rrl_stream_at(const rrl_stream* s, uint64_t k, rrl_complex* out) {
  return guarded([&] {
    need(s, "stream");
    need(out, "out");
    *out = to_c(s->s.at(k));
  });
}

void rrl_stream_free(rrl_stream* s) { delete s; }

rrl_status rrl_shift_search(rrl_stream* s, size_t W, uint64_t k_max, double tol, rrl_shift_report** out) {
  return guarded([&] {
    need(s, "stream");
    need(out, "out");
    *out = new rrl_shift_report{rrl::renascent_shift_search(s->s, W, k_max, tol)};
  });
}

rrl_status rrl_shift_report_size(const rrl_shift_report* r, size_t* out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = r->r.entries.size();
  });
}

rrl_status rrl_shift_report_entry(const rrl_shift_report* r, size_t i, uint64_t* shift, double* residual_pos) {
  return guarded([&] {
    need(r, "report");
    rrl::require(i < r->r.entries.size(), "entry index out of range");
    if (shift != nullptr) *shift = r->r.entries[i].shift;
    if (residual_pos != nullptr) *residual_pos = r->r.entries[i].residual_pos;
  });
}

rrl_status rrl_shift_report_window(const rrl_shift_report* r, size_t i, rrl_complex* out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    rrl::require(i < r->r.entries.size(), "entry index out of range");
    const auto& v = r->r.entries[i].window.values;
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = to_c(v[k]);
  });
}

void rrl_shift_report_free(rrl_shift_report* r) { delete r; }

rrl_status rrl_window_cluster(const rrl_shift_report* r, double tol, rrl_clusters** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = new rrl_clusters{rrl::window_cluster(r->r, tol), r->r.half_width};
  });
}

rrl_status rrl_clusters_count(const rrl_clusters* c, size_t* out) {
  return guarded([&] {
    need(c, "clusters");
    need(out, "out");
    *out = c->c.clusters.size();
  });
}

rrl_status rrl_clusters_members(const rrl_clusters* c, size_t i, size_t* out) {
  return guarded([&] {
    need(c, "clusters");
    need(out, "out");
    rrl::require(i < c->c.clusters.size(), "cluster index out of range");
    *out = c->c.clusters[i].members;
  });
}

rrl_status rrl_clusters_representative(const rrl_clusters* c, size_t i, rrl_complex* out, uint64_t* shift) {
  return guarded([&] {
    need(c, "clusters");
    rrl::require(i < c->c.clusters.size(), "cluster index out of range");
    const auto& w = c->c.clusters[i].representative;
    if (out != nullptr) {
      for (std::size_t k = 0; k < w.values.size(); ++k) out[k] = to_c(w.values[k]);
    }
    if (shift != nullptr) *shift = w.shift;
  });
}

rrl_status rrl_clusters_assignment(const rrl_clusters* c, size_t entry, size_t* cluster_id) {
  return guarded([&] {
    need(c, "clusters");
    need(cluster_id, "cluster_id");
    rrl::require(entry < c->c.assignment.size(), "entry index out of range");
    *cluster_id = c->c.assignment[entry];
  });
}

rrl_status rrl_shift_report_csv(const rrl_shift_report* r, const rrl_clusters* c, char** out) {
  return guarded([&] {
    need(r, "report");
    need(c, "clusters");
    need(out, "out");
    *out = dup_string(rrl::shift_report_csv(r->r, c->c));
  });
}

void rrl_clusters_free(rrl_clusters* c) { delete c; }

rrl_status rrl_verify_rrl(const rrl_measure* m, const char* const* shifts, size_t n_shifts, size_t W,
                          double* residual_neg, double* residual_pos, int* exact) {
  return guarded([&] {
    need(m, "measure");
    if (n_shifts > 0) need(shifts, "shifts");
    std::vector<rrl::BigInt> ks;
    for (std::size_t i = 0; i < n_shifts; ++i) {
      need(shifts[i], "shift");
      try {
        ks.emplace_back(shifts[i]);
      } catch (const std::exception&) {
        rrl::fail(ErrorCode::Parse, std::string("not an integer: '") + shifts[i] + "'");
      }
    }
    auto t = rrl::verify_rrl_on_psp(m->m, ks, W);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (residual_neg != nullptr) residual_neg[i] = t.rows[i].residual_neg;
      if (residual_pos != nullptr) residual_pos[i] = t.rows[i].residual_pos;
    }
    if (exact != nullptr) *exact = t.exact ? 1 : 0;
  });
}

rrl_status rrl_factorial(unsigned j, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup_string(rrl::factorial_shifts(j).back().str());
  });
}

rrl_status rrl_pigeonhole_shift(const rrl_point* lambdas, size_t n, unsigned j, unsigned j_cap, uint64_t* out) {
  return guarded([&] {
    need(out, "out");
    auto pts = points(lambdas, n);
    *out = rrl::pigeonhole_shift(pts, j, j_cap);
  });
}

rrl_status rrl_dirichlet_approx(const double* thetas, size_t m, uint64_t M, uint64_t* N, int64_t* p,
                                double* max_error, double* bound) {
  return guarded([&] {
    need(N, "N");
    if (m > 0) need(thetas, "thetas");
    auto d = rrl::dirichlet_approx(std::span<const double>(thetas, m), M);
    *N = d.N;
    if (p != nullptr) std::copy(d.p.begin(), d.p.end(), p);
    if (max_error != nullptr) *max_error = d.max_error;
    if (bound != nullptr) *bound = d.bound;
  });
}

rrl_status rrl_poly_from_roots(const rrl_point* F, size_t n, rrl_complex* out) {
  return guarded([&] {
    need(out, "out");
    auto P = rrl::poly_from_roots(points(F, n));
    const auto& c = P.coeffs();
    for (std::size_t i = 0; i <= n; ++i) out[i] = i < c.size() ? to_c(c[i]) : rrl_complex{0.0, 0.0};
  });
}

rrl_status rrl_q_poly(rrl_point lambda, const rrl_point* F, size_t n, rrl_complex* out) {
  return guarded([&] {
    need(out, "out");
    auto Q = rrl::q_poly(to_cpp(lambda), points(F, n));
    const auto& c = Q.coeffs();
    for (std::size_t i = 0; i + 1 <= n; ++i) out[i] = i < c.size() ? to_c(c[i]) : rrl_complex{0.0, 0.0};
  });
}

rrl_status rrl_is_eps_balanced(const rrl_point* F, size_t n, double eps, int* balanced, double* defect, int* exact) {
  return guarded([&] {
    auto b = rrl::is_eps_balanced(points(F, n), eps);
    if (balanced != nullptr) *balanced = b.balanced ? 1 : 0;
    if (defect != nullptr) *defect = b.defect;
    if (exact != nullptr) *exact = b.exact ? 1 : 0;
  });
}

rrl_status rrl_balance_completion(const rrl_point* G, size_t n, double eps, size_t size_cap, uint64_t n_cap,
                                  char** json) {
  return guarded([&] {
    need(json, "json");
    auto b = rrl::balance_completion(points(G, n), eps, size_cap, n_cap);
    rrl::Json pts = rrl::Json::array();
    for (const auto& p : b.points) pts.push_back(rrl::point_to_json(p));
    rrl::Json out{{"certified", b.certified}, {"epsilon", b.epsilon}, {"defect", b.defect},
                  {"exact", b.exact},         {"N", b.N},             {"M", b.M},
                  {"replaced", b.replaced},   {"collision_gap", b.collision_gap}, {"points", pts}};
    *json = dup_string(out.dump());
  });
}

rrl_status rrl_balance_bounds(const rrl_point* F, size_t n, double eps, size_t grid, double* max_on_circle,
                              double* min_at_root, double* max_norm_ratio, int* holds) {
  return guarded([&] {
    auto b = rrl::balance_bounds(points(F, n), eps, grid);
    if (max_on_circle != nullptr) *max_on_circle = b.max_on_circle;
    if (min_at_root != nullptr) *min_at_root = b.min_at_root;
    if (max_norm_ratio != nullptr) *max_norm_ratio = b.max_norm_ratio;
    if (holds != nullptr) *holds = b.holds ? 1 : 0;
  });
}

rrl_status rrl_hecke_inner_eval(double theta, double gamma, rrl_complex z, size_t N, rrl_complex* value,
                                double* bound) {
  return guarded([&] { write_eval(rrl::hecke_inner_eval(theta, gamma, to_cpp(z), N), value, bound); });
}

rrl_status rrl_hecke_outer_eval(double theta, rrl_complex z, size_t N, rrl_complex* value, double* bound) {
  return guarded([&] { write_eval(rrl::hecke_outer_eval(theta, to_cpp(z), N), value, bound); });
}

rrl_status rrl_hecke_outer_direct(double theta, double gamma, rrl_complex z, size_t N, rrl_complex* value,
                                  double* bound) {
  return guarded([&] { write_eval(rrl::hecke_outer_direct(theta, gamma, to_cpp(z), N), value, bound); });
}

rrl_status rrl_hecke_gamma_outer(double theta, double gamma, rrl_complex z, size_t N, rrl_complex* value,
                                 double* bound) {
  return guarded([&] { write_eval(rrl::hecke_gamma_outer(theta, gamma, to_cpp(z), N), value, bound); });
}

rrl_status rrl_occurrence_times(double theta, double g1, double g2, uint64_t N, uint64_t* out, size_t cap,
                                size_t* count) {
  return guarded([&] {
    need(count, "count");
    auto t = rrl::occurrence_times(theta, g1, g2, N);
    *count = t.size();
    if (out != nullptr) std::copy_n(t.begin(), std::min(cap, t.size()), out);
  });
}

rrl_status rrl_occurrence_check(double theta, double g1, double g2, uint64_t N, double endpoint_margin,
                                size_t* checked, size_t* skipped, double* max_residual) {
  return guarded([&] {
    auto c = rrl::check_occurrence_identity(theta, g1, g2, N, endpoint_margin);
    if (checked != nullptr) *checked = c.checked;
    if (skipped != nullptr) *skipped = c.skipped;
    if (max_residual != nullptr) *max_residual = c.max_residual;
  });
}

rrl_status rrl_itinerary(const char* map, double x0, size_t N, int* out) {
  return guarded([&] {
    need(out, "out");
    auto v = rrl::itinerary(map_from(map), x0, N);
    std::copy(v.begin(), v.end(), out);
  });
}

rrl_status rrl_kneading(const char* map, size_t N, int* eps, int64_t* d) {
  return guarded([&] {
    auto k = rrl::kneading_data(map_from(map), N);
    if (eps != nullptr) std::copy(k.epsilons.begin(), k.epsilons.end(), eps);
    if (d != nullptr) std::copy(k.d_coeffs.begin(), k.d_coeffs.end(), d);
  });
}

rrl_status rrl_kneading_determinant(const int* eps, size_t n, int64_t* d) {
  return guarded([&] {
    need(d, "d");
    if (n > 0) need(eps, "eps");
    auto v = rrl::kneading_determinant(std::vector<int>(eps, eps + n));
    std::copy(v.begin(), v.end(), d);
  });
}

rrl_status rrl_smallest_real_zero(const double* coeffs, size_t n, double tol, double r_cap, rrl_zero* out) {
  return guarded([&] {
    need(out, "out");
    if (n > 0) need(coeffs, "coeffs");
    auto z = rrl::smallest_real_zero(std::vector<double>(coeffs, coeffs + n), tol, r_cap);
    *out = rrl_zero{z.status == rrl::ZeroStatus::Found ? 1 : 0, z.s, z.lo, z.hi, z.r_max, z.tail, z.entropy,
                    z.entropy_upper};
  });
}

rrl_status rrl_thue_morse(size_t N, uint8_t* out) {
  return guarded([&] {
    need(out, "out");
    auto v = rrl::thue_morse(N);
    std::copy(v.begin(), v.end(), out);
  });
}

rrl_status rrl_feigenbaum_product(size_t N, int64_t* out) {
  return guarded([&] {
    need(out, "out");
    auto v = rrl::feigenbaum_product(N);
    std::copy(v.begin(), v.end(), out);
  });
}

rrl_status rrl_default_radii(double* out, size_t cap, size_t* count) {
  return guarded([&] {
    need(count, "count");
    auto r = rrl::default_radii();
    *count = r.size();
    if (out != nullptr) std::copy_n(r.begin(), std::min(cap, r.size()), out);
  });
}

rrl_status rrl_arc_l1_growth(rrl_eval_fn g, void* user, double omega1, double omega2, const double* radii,
                             size_t n_radii, size_t quadrature_n, double* integrals) {
  return guarded([&] {
    need(integrals, "integrals");
    if (n_radii > 0) need(radii, "radii");
    auto r = rrl::arc_l1_growth(wrap(g, user), omega1, omega2, std::vector<double>(radii, radii + n_radii),
                                quadrature_n);
    std::copy(r.integrals.begin(), r.integrals.end(), integrals);
  });
}

rrl_status rrl_radial_blowup(rrl_eval_fn g, void* user, rrl_point lambda, const double* radii, size_t n_radii,
                             double* out) {
  return guarded([&] {
    need(out, "out");
    if (n_radii > 0) need(radii, "radii");
    auto v = rrl::radial_blowup(wrap(g, user), to_cpp(lambda), std::vector<double>(radii, radii + n_radii));
    std::copy(v.begin(), v.end(), out);
  });
}

rrl_status rrl_recipe_names(char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup_string(join(rrl::recipe_names()));
  });
}

rrl_status rrl_recipe_keys(const char* recipe, char** out) {
  return guarded([&] {
    need(recipe, "recipe");
    need(out, "out");
    *out = dup_string(join(rrl::recipe_keys(recipe)));
  });
}

rrl_status rrl_recipe_create(rrl_recipe** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rrl_recipe{};
    (*out)->cfg.format.clear();
  });
}

rrl_status rrl_recipe_from_config(const char* path, rrl_recipe** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new rrl_recipe{rrl::load_config(path)};
  });
}

rrl_status rrl_recipe_set_name(rrl_recipe* r, const char* name) {
  return guarded([&] {
    need(r, "recipe");
    need(name, "name");
    rrl::recipe_keys(name);
    r->cfg.recipe = name;
  });
}

rrl_status rrl_recipe_set_param(rrl_recipe* r, const char* key, const char* value) {
  return guarded([&] {
    need(r, "recipe");
    need(key, "key");
    need(value, "value");
    r->cfg.params[key] = value;
  });
}

rrl_status rrl_recipe_set_format(rrl_recipe* r, const char* format) {
  return guarded([&] {
    need(r, "recipe");
    need(format, "format");
    std::string f(format);
    rrl::require(f == "json" || f == "csv", "format must be json or csv");
    r->cfg.format = f;
  });
}

rrl_status rrl_recipe_set_output(rrl_recipe* r, const char* path) {
  return guarded([&] {
    need(r, "recipe");
    need(path, "path");
    r->cfg.out = path;
  });
}

rrl_status rrl_recipe_validate(const rrl_recipe* r) {
  return guarded([&] {
    need(r, "recipe");
    rrl::validate_config(finalized(r->cfg));
  });
}

rrl_status rrl_recipe_run(const rrl_recipe* r, char** text) {
  return guarded([&] {
    need(r, "recipe");
    need(text, "text");
    *text = dup_string(rrl::run_recipe(finalized(r->cfg)));
  });
}

void rrl_recipe_free(rrl_recipe* r) { delete r; }

}  // extern "C"
