#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "doctest.h"
#include "rrl/recipes.hpp"
#include "rrl/serialize.hpp"

using namespace rrl;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rrl_test_" + name);
}

void write_text(const std::filesystem::path& p, const std::string& s) { std::ofstream(p) << s; }

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

}  // namespace

TEST_CASE("angle and number parsing") {
  CHECK(parse_angle("3/4") == CirclePoint::rational(3, 4));
  CHECK(parse_angle("6/8") == CirclePoint::rational(3, 4));
  CHECK(parse_angle("golden").turns() == doctest::Approx((std::sqrt(5.0) - 1) / 2));
  CHECK(parse_angle("sqrt2").turns() == doctest::Approx(std::sqrt(2.0) - 1));
  CHECK(parse_angle("0.125").turns() == 0.125);
  CHECK(code_of([] { parse_angle("x/2"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_real("1.5abc"); }) == ErrorCode::Parse);
  CHECK(parse_real("1e5") == 1e5);
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("measure json round trip") {
  auto m = load_measure(std::string(RRL_DATA_DIR) + "/r4r6.json");
  CHECK(m.all_exact());
  auto again = measure_from_json(measure_to_json(m));
  REQUIRE(again.size() == m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(again.atoms()[i].point == m.atoms()[i].point);
    CHECK(again.atoms()[i].weight == m.atoms()[i].weight);
  }
  CHECK(code_of([] { load_measure("/nonexistent/measure.json"); }) == ErrorCode::Io);
  CHECK(code_of([] { measure_from_json(Json::parse(R"({"atoms": 3})")); }) == ErrorCode::Parse);
}

TEST_CASE("config parsing") {
  auto p = temp_file("cfg.ini");
  write_text(p, "recipe = hecke-unique\nformat = csv\n[params]\ntheta = golden\nW = 8\n");
  auto cfg = load_config(p.string());
  CHECK(cfg.recipe == "hecke-unique");
  CHECK(cfg.format == "csv");
  CHECK(cfg.params.at("theta") == "golden");
  CHECK(cfg.params.at("W") == "8");

  write_text(p, "[run]\nrecipe = \"thue-morse-product\"\nout = \"x.json\"\n[thue-morse-product]\nn = 63\n");
  cfg = load_config(p.string());
  CHECK(cfg.recipe == "thue-morse-product");
  CHECK(cfg.out == "x.json");
  CHECK(cfg.params.at("n") == "63");

  CHECK(code_of([] { load_config("/nonexistent/cfg.ini"); }) == ErrorCode::Io);
  std::filesystem::remove(p);
}

TEST_CASE("flags override the config file") {
  RecipeConfig base;
  base.recipe = "hecke-unique";
  base.params = {{"theta", "golden"}, {"W", "8"}};
  base.out = "a.json";
  RecipeConfig flags;
  flags.params = {{"W", "12"}};
  flags.format = "";
  auto merged = merge_config(base, flags);
  CHECK(merged.recipe == "hecke-unique");
  CHECK(merged.params.at("W") == "12");
  CHECK(merged.params.at("theta") == "golden");
  CHECK(merged.out == "a.json");
}

TEST_CASE("validation rejects unknown recipes, keys and formats") {
  RecipeConfig cfg;
  cfg.recipe = "nope";
  CHECK(code_of([&] { validate_config(cfg); }) == ErrorCode::UnknownRecipe);
  cfg.recipe = "thue-morse-product";
  cfg.params = {{"n", "7"}, {"bogus", "1"}};
  CHECK(code_of([&] { validate_config(cfg); }) == ErrorCode::InvalidArgument);
  cfg.params = {{"n", "7"}};
  cfg.format = "xml";
  CHECK(code_of([&] { validate_config(cfg); }) == ErrorCode::InvalidArgument);
  cfg.format = "json";
  CHECK_NOTHROW(validate_config(cfg));
  CHECK(recipe_names().size() == 7);
  for (const auto& n : recipe_names()) CHECK_NOTHROW(recipe_keys(n));
}

TEST_CASE("recipe outputs") {
  RecipeConfig cfg;
  cfg.recipe = "thue-morse-product";
  cfg.params = {{"n", "255"}};
  auto j = Json::parse(run_recipe(cfg));
  CHECK(j.at("match") == true);

  cfg.recipe = "psp-rrl";
  cfg.params = {{"measure", std::string(RRL_DATA_DIR) + "/r4.json"}, {"shifts", "factorial:6"}, {"W", "16"}};
  j = Json::parse(run_recipe(cfg));
  CHECK(j.at("status") == "ok");

  cfg.recipe = "kneading-entropy";
  cfg.params = {{"map", "tent"}, {"N", "1023"}};
  j = Json::parse(run_recipe(cfg));
  CHECK(j.at("s").get<double>() == doctest::Approx(0.5).epsilon(1e-9));

  cfg.recipe = "balance";
  cfg.params = {{"angles", "2/5"}};
  j = Json::parse(run_recipe(cfg));
  CHECK(j.at("defect").get<double>() == 0.0);
}

TEST_CASE("reruns are byte identical and written to out") {
  auto p1 = temp_file("run1.json");
  auto p2 = temp_file("run2.json");
  RecipeConfig cfg;
  cfg.recipe = "hecke-two";
  cfg.params = {{"theta", "golden"}, {"K_max", "20000"}};
  cfg.out = p1.string();
  auto a = run_recipe(cfg);
  cfg.out = p2.string();
  auto b = run_recipe(cfg);
  CHECK(a == b);
  CHECK(read_text(p1) == read_text(p2));
  CHECK(read_text(p1) == a);

  cfg.format = "csv";
  cfg.out.clear();
  auto csv = run_recipe(cfg);
  CHECK(csv.rfind("shift,residual_pos,residual_neg_vs_cluster,cluster_id", 0) == 0);
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}
