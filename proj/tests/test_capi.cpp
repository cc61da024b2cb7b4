#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "rrl/rrl.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  rrl_string_free(s);
  return out;
}

int const_one(void*, rrl_complex, rrl_complex* out) {
  *out = {1.0, 0.0};
  return 0;
}

int always_fails(void*, rrl_complex, rrl_complex*) { return 1; }

}  // namespace

TEST_CASE("status names and validation classes") {
  CHECK(std::string(rrl_status_name(RRL_OK)) == "Ok");
  CHECK(std::string(rrl_status_name(RRL_E_NOT_A_ROOT)) == "NotARoot");
  CHECK(rrl_status_is_validation(RRL_E_PARSE));
  CHECK(rrl_status_is_validation(RRL_E_DUPLICATE_POLE));
  CHECK_FALSE(rrl_status_is_validation(RRL_E_NON_CONVERGENT));
  CHECK_FALSE(rrl_status_is_validation(RRL_E_CAP_EXCEEDED));
  CHECK(std::string(rrl_version()) == "0.1.0");
}

TEST_CASE("measure handle lifecycle and evaluation") {
  rrl_measure* m = nullptr;
  REQUIRE(rrl_measure_create(&m) == RRL_OK);
  rrl_point p;
  REQUIRE(rrl_point_rational(1, 4, &p) == RRL_OK);
  CHECK(p.exact == 1);
  REQUIRE(rrl_measure_add(m, p, {0.5, 0.0}) == RRL_OK);
  CHECK(rrl_measure_add(m, p, {0.5, 0.0}) == RRL_E_DUPLICATE_POLE);
  CHECK(std::string(rrl_last_error()).find("duplicate") != std::string::npos);

  rrl_complex v;
  REQUIRE(rrl_psp_eval(m, {0.0, 0.0}, &v) == RRL_OK);
  // 0.5 / (0 - i) = 0.5 i
  CHECK(std::abs(v.re) <= 1e-16);
  CHECK(v.im == doctest::Approx(0.5));
  CHECK(rrl_psp_eval(m, {0.0, 1.0}, &v) == RRL_E_POLE_COLLISION);

  rrl_complex b;
  REQUIRE(rrl_psp_coefficient(m, "100000000000000000000000", &b) == RRL_OK);
  // -0.5 i^{-n-1} with n = 0 mod 4: -0.5 * i^{-1} = 0.5 i
  CHECK(b.re == 0.0);
  CHECK(b.im == 0.5);
  CHECK(rrl_psp_coefficient(m, "12x", &b) == RRL_E_PARSE);

  std::vector<rrl_complex> inner(9);
  REQUIRE(rrl_taylor_inner(m, 8, inner.data()) == RRL_OK);
  CHECK(inner[4].im == inner[0].im);

  char* js = nullptr;
  REQUIRE(rrl_measure_to_json(m, &js) == RRL_OK);
  std::string text = take(js);
  rrl_measure* back = nullptr;
  REQUIRE(rrl_measure_from_json(text.c_str(), &back) == RRL_OK);
  size_t n = 0;
  REQUIRE(rrl_measure_size(back, &n) == RRL_OK);
  CHECK(n == 1);
  rrl_measure_free(back);

  double radii[] = {0.9, 0.99, 0.999, 0.9999};
  rrl_complex est;
  double osc;
  REQUIRE(rrl_recover_residue(rrl_psp_eval_fn, m, p, radii, 4, 1e-3, &est, &osc) == RRL_OK);
  CHECK(est.re == doctest::Approx(0.5));
  rrl_measure_free(m);

  CHECK(rrl_measure_load("/nonexistent.json", &m) == RRL_E_IO);
  CHECK(rrl_measure_add(nullptr, p, {1, 0}) == RRL_E_INVALID_ARGUMENT);
}

TEST_CASE("shift search through handles") {
  rrl_complex period[] = {{1, 0}, {-1, 0}};
  rrl_stream* s = nullptr;
  REQUIRE(rrl_stream_periodic(period, 2, &s) == RRL_OK);
  rrl_shift_report* r = nullptr;
  REQUIRE(rrl_shift_search(s, 8, 20, 0.0, &r) == RRL_OK);
  size_t n = 0;
  REQUIRE(rrl_shift_report_size(r, &n) == RRL_OK);
  CHECK(n == 6);  // 10, 12, ..., 20
  uint64_t k;
  double res;
  REQUIRE(rrl_shift_report_entry(r, 0, &k, &res) == RRL_OK);
  CHECK(k == 10);
  CHECK(res == 0.0);
  CHECK(rrl_shift_report_entry(r, 99, &k, &res) == RRL_E_INVALID_ARGUMENT);

  rrl_clusters* c = nullptr;
  REQUIRE(rrl_window_cluster(r, 1e-9, &c) == RRL_OK);
  size_t count = 0;
  REQUIRE(rrl_clusters_count(c, &count) == RRL_OK);
  CHECK(count == 1);
  char* csv = nullptr;
  REQUIRE(rrl_shift_report_csv(r, c, &csv) == RRL_OK);
  CHECK(take(csv).rfind("shift,residual_pos", 0) == 0);
  rrl_clusters_free(c);
  rrl_shift_report_free(r);
  rrl_stream_free(s);
}

TEST_CASE("verify on an exact measure") {
  rrl_measure* m = nullptr;
  REQUIRE(rrl_measure_load(RRL_DATA_DIR "/r4r6.json", &m) == RRL_OK);
  std::vector<std::string> shifts;
  for (unsigned j = 4; j <= 8; ++j) {
    char* f = nullptr;
    REQUIRE(rrl_factorial(j, &f) == RRL_OK);
    shifts.push_back(take(f));
  }
  CHECK(shifts.back() == "40320");
  std::vector<const char*> ptrs;
  for (auto& s : shifts) ptrs.push_back(s.c_str());
  std::vector<double> neg(ptrs.size()), pos(ptrs.size());
  int exact = 0;
  REQUIRE(rrl_verify_rrl(m, ptrs.data(), ptrs.size(), 16, neg.data(), pos.data(), &exact) == RRL_OK);
  CHECK(exact == 1);
  for (std::size_t i = 1; i < ptrs.size(); ++i) {
    CHECK(neg[i] == 0.0);
    CHECK(pos[i] == 0.0);
  }
  rrl_measure_free(m);
}

TEST_CASE("diophantine and dynamics wrappers") {
  double th[] = {1.0 / 3.0};
  uint64_t N;
  int64_t p;
  double err, bound;
  REQUIRE(rrl_dirichlet_approx(th, 1, 3, &N, &p, &err, &bound) == RRL_OK);
  CHECK(N == 3);
  CHECK(p == 1);

  rrl_point cube[3];
  for (int i = 0; i < 3; ++i) rrl_point_rational(i, 3, &cube[i]);
  rrl_complex q[3];
  REQUIRE(rrl_q_poly(cube[0], cube, 3, q) == RRL_OK);
  for (auto c : q) CHECK(c.re == 1.0);
  rrl_point other;
  rrl_point_rational(1, 5, &other);
  CHECK(rrl_q_poly(other, cube, 3, q) == RRL_E_NOT_A_ROOT);

  char* js = nullptr;
  rrl_point g;
  rrl_point_parse("sqrt2", &g);
  REQUIRE(rrl_balance_completion(&g, 1, 0.5, 3, 1000000, &js) == RRL_OK);
  auto bal = nlohmann::json::parse(take(js));
  CHECK(bal.at("certified") == true);
  CHECK(bal.at("defect").get<double>() <= 0.5);

  rrl_zero z;
  std::vector<double> tent(1024, -1.0);
  tent[0] = 1.0;
  REQUIRE(rrl_smallest_real_zero(tent.data(), tent.size(), 1e-9, 0.99, &z) == RRL_OK);
  CHECK(z.found == 1);
  CHECK(z.s == doctest::Approx(0.5));

  std::vector<int64_t> d(1024);
  REQUIRE(rrl_kneading("feigenbaum", 1023, nullptr, d.data()) == RRL_OK);
  std::vector<uint8_t> tm(1024);
  REQUIRE(rrl_thue_morse(1023, tm.data()) == RRL_OK);
  for (std::size_t n = 0; n < 1024; ++n) CHECK(d[n] == (tm[n] ? -1 : 1));
  CHECK(rrl_kneading("nope", 10, nullptr, d.data()) != RRL_OK);

  rrl_complex v;
  double b;
  CHECK(rrl_hecke_gamma_outer(0.5, 0.5, {2, 0}, 10, &v, &b) == RRL_E_RESONANT_GAMMA);
}

TEST_CASE("probes through callbacks") {
  double radii[] = {0.5, 0.9};
  double out[2];
  REQUIRE(rrl_arc_l1_growth(const_one, nullptr, 0.0, 1.0, radii, 2, 128, out) == RRL_OK);
  CHECK(out[0] == doctest::Approx(1.0));
  CHECK(rrl_arc_l1_growth(always_fails, nullptr, 0.0, 1.0, radii, 2, 128, out) == RRL_E_EVAL_FAILURE);
  size_t count = 0;
  double dr[8];
  REQUIRE(rrl_default_radii(dr, 8, &count) == RRL_OK);
  CHECK(count == 5);
}

TEST_CASE("recipes through the C API") {
  char* names = nullptr;
  REQUIRE(rrl_recipe_names(&names) == RRL_OK);
  CHECK(take(names).find("thue-morse-product\n") != std::string::npos);

  rrl_recipe* r = nullptr;
  REQUIRE(rrl_recipe_create(&r) == RRL_OK);
  CHECK(rrl_recipe_set_name(r, "nope") == RRL_E_UNKNOWN_RECIPE);
  REQUIRE(rrl_recipe_set_name(r, "thue-morse-product") == RRL_OK);
  REQUIRE(rrl_recipe_set_param(r, "n", "127") == RRL_OK);
  REQUIRE(rrl_recipe_validate(r) == RRL_OK);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(rrl_recipe_run(r, &a) == RRL_OK);
  REQUIRE(rrl_recipe_run(r, &b) == RRL_OK);
  std::string ta = take(a), tb = take(b);
  CHECK(ta == tb);
  CHECK(nlohmann::json::parse(ta).at("match") == true);
  REQUIRE(rrl_recipe_set_param(r, "bogus", "1") == RRL_OK);
  CHECK(rrl_recipe_validate(r) == RRL_E_INVALID_ARGUMENT);
  rrl_recipe_free(r);

  CHECK(rrl_recipe_from_config("/nonexistent.ini", &r) == RRL_E_IO);
}
