#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rrl/rrl.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitValidation = 2;
constexpr int kExitComputation = 3;

struct Failure {
  rrl_status status;
  std::string message;
};

void check(rrl_status s) {
  if (s != RRL_OK) throw Failure{s, rrl_last_error()};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  rrl_string_free(s);
  return out;
}

int report(const Failure& f) {
  Json err{{"status", "error"}, {"code", rrl_status_name(f.status)}, {"message", f.message}};
  std::cerr << err.dump() << "\n";
  return rrl_status_is_validation(f.status) ? kExitValidation : kExitComputation;
}

double real_arg(const std::string& text) {
  rrl_point p{};
  check(rrl_point_parse(text.c_str(), &p));
  return p.turns;
}

double number_arg(const std::string& text) {
  if (text == "golden" || text == "sqrt2" || text == "sqrt3") return real_arg(text);
  if (auto slash = text.find('/'); slash != std::string::npos) {
    double den = number_arg(text.substr(slash + 1));
    if (den == 0.0) throw Failure{RRL_E_PARSE, "zero denominator in '" + text + "'"};
    return number_arg(text.substr(0, slash)) / den;
  }
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty()) throw Failure{RRL_E_PARSE, "not a number: '" + text + "'"};
  return v;
}

rrl_complex complex_arg(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) return {number_arg(text), 0.0};
  return {number_arg(text.substr(0, comma)), number_arg(text.substr(comma + 1))};
}

// "--key value", "--key=value" and "-k value" pairs left over by the parser.
std::vector<std::pair<std::string, std::string>> extra_params(const std::vector<std::string>& rest) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    std::string tok = rest[i];
    if (tok.empty() || tok[0] != '-') throw Failure{RRL_E_INVALID_ARGUMENT, "unexpected argument '" + tok + "'"};
    tok.erase(0, tok.find_first_not_of('-'));
    auto eq = tok.find('=');
    if (eq != std::string::npos) {
      out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    } else if (i + 1 < rest.size()) {
      out.emplace_back(tok, rest[++i]);
    } else {
      throw Failure{RRL_E_INVALID_ARGUMENT, "option '" + rest[i] + "' needs a value"};
    }
  }
  return out;
}

struct RunOptions {
  std::string recipe;
  std::string recipe_flag;
  std::string out;
  std::string format;
  std::string config;
  std::vector<std::string> params;
};

int do_run(const RunOptions& o, const std::vector<std::string>& rest) {
  rrl_recipe* r = nullptr;
  if (!o.config.empty()) {
    check(rrl_recipe_from_config(o.config.c_str(), &r));
  } else {
    check(rrl_recipe_create(&r));
  }
  std::unique_ptr<rrl_recipe, void (*)(rrl_recipe*)> guard(r, rrl_recipe_free);
  std::string name = !o.recipe_flag.empty() ? o.recipe_flag : o.recipe;
  if (!name.empty()) check(rrl_recipe_set_name(r, name.c_str()));
  if (!o.format.empty()) check(rrl_recipe_set_format(r, o.format.c_str()));
  if (!o.out.empty()) check(rrl_recipe_set_output(r, o.out.c_str()));
  for (const auto& kv : o.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw Failure{RRL_E_INVALID_ARGUMENT, "--param expects key=value"};
    check(rrl_recipe_set_param(r, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
  }
  for (const auto& [k, v] : extra_params(rest)) check(rrl_recipe_set_param(r, k.c_str(), v.c_str()));
  check(rrl_recipe_validate(r));
  char* text = nullptr;
  check(rrl_recipe_run(r, &text));
  std::string artifact = take(text);
  if (o.out.empty()) {
    std::cout << artifact;
  } else {
    std::cout << Json{{"status", "ok"}, {"out", o.out}}.dump() << "\n";
  }
  return 0;
}

Json complex_json(rrl_complex z) { return Json{{"re", z.re}, {"im", z.im}}; }

struct HeckeOptions {
  std::string theta = "golden";
  std::string gamma = "0";
  std::string z = "2";
  std::size_t N = 200;
  bool check_identity = false;
};

int do_hecke(const HeckeOptions& o) {
  const double theta = number_arg(o.theta);
  const double gamma = number_arg(o.gamma);
  const rrl_complex z = complex_arg(o.z);
  rrl_complex closed{}, direct{};
  double b_closed = 0.0, b_direct = 0.0;
  if (gamma == 0.0) {
    check(rrl_hecke_outer_eval(theta, z, o.N, &closed, &b_closed));
  } else {
    check(rrl_hecke_gamma_outer(theta, gamma, z, o.N, &closed, &b_closed));
  }
  Json out;
  if (o.check_identity) {
    check(rrl_hecke_outer_direct(theta, gamma, z, o.N, &direct, &b_direct));
    double diff = std::hypot(closed.re - direct.re, closed.im - direct.im);
    double bound = b_closed + b_direct;
    out = Json{{"value", diff}, {"bound", bound}, {"status", diff <= bound + 1e-12 ? "ok" : "violated"}};
    std::cout << out.dump() << "\n";
    return diff <= bound + 1e-12 ? 0 : kExitComputation;
  }
  out = Json{{"value", complex_json(closed)}, {"bound", b_closed}, {"status", "ok"}};
  std::cout << out.dump() << "\n";
  return 0;
}

struct KneadingOptions {
  std::string map = "tent";
  std::size_t N = 4095;
  double tol = 1e-9;
  double r_cap = 0.99;
  bool entropy = false;
};

int do_kneading(const KneadingOptions& o) {
  std::vector<std::int64_t> d(o.N + 1);
  check(rrl_kneading(o.map.c_str(), o.N, nullptr, d.data()));
  if (!o.entropy) {
    Json coeffs = Json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(d.size(), 64); ++i) coeffs.push_back(d[i]);
    std::cout << Json{{"value", coeffs}, {"bound", nullptr}, {"status", "ok"}}.dump() << "\n";
    return 0;
  }
  std::vector<double> c(d.begin(), d.end());
  rrl_zero z{};
  check(rrl_smallest_real_zero(c.data(), c.size(), o.tol, o.r_cap, &z));
  Json out;
  if (z.found) {
    out = Json{{"value", z.entropy}, {"bound", z.tail}, {"status", "ok"}, {"zero", "found"}, {"s", z.s}, {"r_max", z.r_max}};
  } else {
    out = Json{{"value", 0.0}, {"bound", z.entropy_upper}, {"status", "ok"}, {"zero", "none below r_max"}, {"r_max", z.r_max}};
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int do_thue_morse(std::size_t n) {
  std::vector<std::uint8_t> tau(n + 1);
  check(rrl_thue_morse(n, tau.data()));
  std::string bits;
  for (auto t : tau) bits += static_cast<char>('0' + t);
  std::cout << Json{{"value", bits}, {"bound", nullptr}, {"status", "ok"}}.dump() << "\n";
  return 0;
}

int do_dirichlet(const std::string& thetas_text, std::uint64_t M) {
  std::vector<double> thetas;
  std::stringstream ss(thetas_text);
  std::string item;
  while (std::getline(ss, item, ',')) thetas.push_back(number_arg(item));
  std::uint64_t N = 0;
  std::vector<std::int64_t> p(thetas.size());
  double err = 0.0, bound = 0.0;
  check(rrl_dirichlet_approx(thetas.data(), thetas.size(), M, &N, p.data(), &err, &bound));
  std::cout << Json{{"value", Json{{"N", N}, {"p", p}}}, {"bound", bound}, {"max_error", err}, {"status", "ok"}}.dump()
            << "\n";
  return 0;
}

std::vector<rrl_point> angle_list(const std::string& text) {
  std::vector<rrl_point> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    rrl_point p{};
    check(rrl_point_parse(item.c_str(), &p));
    out.push_back(p);
  }
  return out;
}

int do_shifts(const std::string& angles, unsigned j, unsigned j_cap, bool factorial) {
  if (factorial) {
    char* text = nullptr;
    check(rrl_factorial(j, &text));
    std::cout << Json{{"value", take(text)}, {"bound", nullptr}, {"status", "ok"}}.dump() << "\n";
    return 0;
  }
  auto pts = angle_list(angles);
  std::uint64_t k = 0;
  check(rrl_pigeonhole_shift(pts.data(), pts.size(), j, j_cap, &k));
  std::cout << Json{{"value", k}, {"bound", 1.0 / j}, {"status", "ok"}}.dump() << "\n";
  return 0;
}

int do_balance(const std::string& angles, double eps, std::size_t size_cap, std::uint64_t n_cap) {
  auto pts = angle_list(angles);
  char* text = nullptr;
  check(rrl_balance_completion(pts.data(), pts.size(), eps, size_cap, n_cap, &text));
  Json detail = Json::parse(take(text));
  Json out{{"value", detail["defect"]},
           {"bound", eps},
           {"status", "ok"},
           {"certified", detail["certified"].get<bool>()},
           {"N", detail["N"]},
           {"points", detail["points"]}};
  std::cout << out.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("RRL_LAB_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(t, &end, 10);
    if (end != t && *end == '\0') rrl_set_thread_cap(static_cast<unsigned>(v));
  }

  CLI::App app{"Right-limit and boundary-behaviour experiments"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run a named recipe");
  run_cmd->add_option("name", run.recipe, "Recipe name");
  run_cmd->add_option("--recipe", run.recipe_flag, "Recipe name");
  run_cmd->add_option("--out", run.out, "Artifact path");
  run_cmd->add_option("--format", run.format, "json or csv");
  run_cmd->add_option("--config", run.config, "key = value config file");
  run_cmd->add_option("--param", run.params, "Recipe parameter key=value");
  run_cmd->allow_extras();

  HeckeOptions hecke;
  auto* hecke_cmd = app.add_subcommand("hecke", "Outer function of the Hecke series");
  hecke_cmd->add_option("--theta", hecke.theta);
  hecke_cmd->add_option("--gamma", hecke.gamma);
  hecke_cmd->add_option("--z", hecke.z, "re or re,im with |z| > 1");
  hecke_cmd->add_option("-N,--N", hecke.N);
  hecke_cmd->add_flag("--check-identity", hecke.check_identity);

  KneadingOptions kneading;
  auto* kneading_cmd = app.add_subcommand("kneading", "Kneading determinant of a unimodal map");
  kneading_cmd->add_option("--map", kneading.map, "tent, feigenbaum or quadratic:c");
  kneading_cmd->add_option("-N,--N", kneading.N);
  kneading_cmd->add_option("--tol", kneading.tol);
  kneading_cmd->add_option("--r-cap", kneading.r_cap);
  kneading_cmd->add_flag("--entropy", kneading.entropy);

  std::size_t tm_n = 63;
  auto* tm_cmd = app.add_subcommand("thue-morse", "Thue-Morse prefix");
  tm_cmd->add_option("-n", tm_n);

  std::string dir_thetas = "golden";
  std::uint64_t dir_M = 100;
  auto* dir_cmd = app.add_subcommand("dirichlet", "Simultaneous Dirichlet approximation");
  dir_cmd->add_option("--theta", dir_thetas, "comma-separated angles");
  dir_cmd->add_option("--M", dir_M);

  std::string sh_angles = "sqrt2,sqrt3";
  unsigned sh_j = 2, sh_cap = 8;
  bool sh_factorial = false;
  auto* sh_cmd = app.add_subcommand("shifts", "Pigeonhole or factorial shift k_j");
  sh_cmd->add_option("--angles", sh_angles, "comma-separated angles");
  sh_cmd->add_option("-j,--j", sh_j);
  sh_cmd->add_option("--j-cap", sh_cap);
  sh_cmd->add_flag("--factorial", sh_factorial, "print j! instead");

  std::string bal_angles = "sqrt2";
  double bal_eps = 0.5;
  std::size_t bal_size_cap = 3;
  std::uint64_t bal_n_cap = 1000000;
  auto* bal_cmd = app.add_subcommand("balance", "Complete a set to an eps-balanced one");
  bal_cmd->add_option("--angles", bal_angles, "comma-separated angles");
  bal_cmd->add_option("--eps", bal_eps);
  bal_cmd->add_option("--size-cap", bal_size_cap);
  bal_cmd->add_option("--n-cap", bal_n_cap);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << Json{{"status", "error"}, {"code", "InvalidArgument"}, {"message", e.what()}}.dump() << "\n";
    return kExitValidation;
  }

  try {
    if (*run_cmd) return do_run(run, run_cmd->remaining());
    if (*hecke_cmd) return do_hecke(hecke);
    if (*kneading_cmd) return do_kneading(kneading);
    if (*tm_cmd) return do_thue_morse(tm_n);
    if (*dir_cmd) return do_dirichlet(dir_thetas, dir_M);
    if (*sh_cmd) return do_shifts(sh_angles, sh_j, sh_cap, sh_factorial);
    if (*bal_cmd) return do_balance(bal_angles, bal_eps, bal_size_cap, bal_n_cap);
  } catch (const Failure& f) {
    return report(f);
  }
  return 0;
}
