#include "rrl/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "rrl/boundary_probe.hpp"
#include "rrl/diophantine.hpp"
#include "rrl/dynamics.hpp"
#include "rrl/serialize.hpp"

namespace rrl {

namespace {

const std::map<std::string, std::vector<std::string>>& key_table() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"psp-rrl", {"measure", "shifts", "W", "j_cap"}},
      {"hecke-unique", {"theta", "gamma", "W", "K_max", "tol", "N"}},
      {"hecke-two", {"theta", "W", "K_max", "tol", "N"}},
      {"kneading-entropy", {"map", "c", "N", "tol", "r_cap"}},
      {"thue-morse-product", {"n"}},
      {"balance", {"angles", "eps", "size_cap", "n_cap", "grid"}},
      {"probe-arc", {"source", "omega1", "omega2", "radii", "quadrature_n", "threshold"}},
  };
  return table;
}

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& p) : p_(p) {}

  bool has(const std::string& k) const { return p_.count(k) != 0; }
  std::string str(const std::string& k, const std::string& def) const {
    auto it = p_.find(k);
    return it == p_.end() ? def : it->second;
  }
  double real(const std::string& k, double def) const { return has(k) ? parse_real(p_.at(k)) : def; }
  std::uint64_t nat(const std::string& k, std::uint64_t def) const {
    if (!has(k)) return def;
    double v = parse_real(p_.at(k));
    if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15) fail(ErrorCode::Parse, k + " must be a nonnegative integer");
    return static_cast<std::uint64_t>(v);
  }

 private:
  const std::map<std::string, std::string>& p_;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string{} : cur.substr(b, e - b + 1));
  }
  return out;
}

std::pair<unsigned, unsigned> parse_range(const std::string& spec, unsigned default_lo) {
  auto dots = spec.find("..");
  auto to_u = [&](const std::string& s) {
    double v = parse_real(s);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1000.0) fail(ErrorCode::Parse, "bad shift range '" + spec + "'");
    return static_cast<unsigned>(v);
  };
  if (dots == std::string::npos) return {default_lo, to_u(spec)};
  return {to_u(spec.substr(0, dots)), to_u(spec.substr(dots + 2))};
}

// Smallest j with the common order of an exact measure dividing j!.
unsigned first_annihilating_factorial(const PoleMeasure& m) {
  std::int64_t q = m.common_order();
  if (q <= 1) return 1;
  BigInt f = 1;
  for (unsigned j = 1; j <= 1000; ++j) {
    f *= j;
    if (f % q == 0) return j;
  }
  return 1;
}

std::string key_value_csv(const Json& j) {
  std::ostringstream os;
  os << "key,value\n";
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_structured()) continue;
    os << it.key() << ',';
    if (it->is_string()) {
      os << it->get<std::string>();
    } else if (it->is_number_float()) {
      os << format_double(it->get<double>());
    } else {
      os << it->dump();
    }
    os << '\n';
  }
  return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string run_psp_rrl(const Params& p, const std::string& format) {
  if (!p.has("measure")) fail(ErrorCode::InvalidArgument, "psp-rrl: 'measure' is required");
  PoleMeasure m = load_measure(p.str("measure", ""));
  const std::size_t W = p.nat("W", 32);
  const auto j_cap = static_cast<unsigned>(p.nat("j_cap", kDefaultPigeonholeCap));
  const std::string spec = p.str("shifts", "factorial:8");

  struct Row {
    unsigned j = 0;
    double bound = -1.0;
    RrlResidualRow r;
  };
  std::vector<Row> rows;
  bool exact = m.all_exact();
  if (spec.rfind("pigeonhole:", 0) == 0) {
    auto [lo, hi] = parse_range(spec.substr(11), 2);
    std::vector<CirclePoint> pts;
    for (const auto& a : m.atoms()) pts.push_back(a.point);
    for (unsigned j = lo; j <= hi; ++j) {
      std::uint64_t k = pigeonhole_shift(pts, j, j_cap);
      auto t = verify_rrl_on_psp(m, {BigInt(k)}, W);
      rows.push_back({j, m.total_mass() * 2.0 * std::numbers::pi / j, t.rows.front()});
    }
  } else {
    std::vector<BigInt> shifts;
    std::vector<unsigned> js;
    if (spec.rfind("factorial:", 0) == 0) {
      auto [lo, hi] = parse_range(spec.substr(10), first_annihilating_factorial(m));
      require(lo <= hi, "psp-rrl: empty factorial range");
      auto f = factorial_shifts(hi);
      for (unsigned j = lo; j <= hi; ++j) {
        shifts.push_back(f[j - 1]);
        js.push_back(j);
      }
    } else {
      for (const auto& s : split(spec, ',')) {
        try {
          shifts.emplace_back(s);
        } catch (const std::exception&) {
          fail(ErrorCode::Parse, "psp-rrl: bad shift '" + s + "'");
        }
        js.push_back(0);
      }
    }
    auto t = verify_rrl_on_psp(m, shifts, W);
    for (std::size_t i = 0; i < t.rows.size(); ++i) rows.push_back({js[i], -1.0, t.rows[i]});
  }

  double max_res = 0.0;
  bool within = true;
  for (const auto& r : rows) {
    max_res = std::max(max_res, r.r.residual());
    if (r.bound >= 0.0 && r.r.residual() > r.bound) within = false;
  }
  if (format == "csv") {
    std::ostringstream os;
    os << "j,shift,residual_neg,residual_pos,residual,bound\n";
    for (const auto& r : rows) {
      os << r.j << ',' << r.r.shift.str() << ',' << format_double(r.r.residual_neg) << ','
         << format_double(r.r.residual_pos) << ',' << format_double(r.r.residual()) << ','
         << (r.bound >= 0.0 ? format_double(r.bound) : std::string{}) << '\n';
    }
    return os.str();
  }
  Json out{{"recipe", "psp-rrl"}, {"atoms", m.size()}, {"exact", exact}, {"half_width", W}, {"shifts", spec}};
  Json jrows = Json::array();
  for (const auto& r : rows) {
    Json row{{"shift", r.r.shift.str()},
             {"residual_neg", r.r.residual_neg},
             {"residual_pos", r.r.residual_pos},
             {"residual", r.r.residual()}};
    if (r.j != 0) row["j"] = r.j;
    if (r.bound >= 0.0) row["bound"] = r.bound;
    jrows.push_back(row);
  }
  out["rows"] = jrows;
  out["max_residual"] = max_res;
  out["all_zero"] = max_res == 0.0;
  out["within_bounds"] = within;
  out["status"] = "ok";
  return dump(out);
}

const std::vector<Complex>& identity_points() {
  static const std::vector<Complex> z{Complex{2.0, 0.0}, std::polar(3.0, std::numbers::pi / 5), Complex{1.5, 1.5}};
  return z;
}

Json cluster_json(const ShiftReport& report, const ClusterResult& cl) {
  Json clusters = Json::array();
  for (const auto& c : cl.clusters) {
    Json neg = Json::array();
    for (std::int64_t n = -static_cast<std::int64_t>(report.half_width); n < 0; ++n) {
      neg.push_back(c.representative.at(n).real());
    }
    clusters.push_back(Json{{"shift", c.representative.shift}, {"members", c.members}, {"negative_side", neg}});
  }
  return clusters;
}

std::string run_hecke(const Params& p, const std::string& format, bool shifted) {
  const double theta = p.real("theta", parse_real("golden"));
  const double gamma = shifted ? theta : p.real("gamma", 0.0);
  const std::size_t W = p.nat("W", 10);
  const std::uint64_t K = p.nat("K_max", 100000);
  const double tol = p.real("tol", 5e-3);
  const std::size_t N = p.nat("N", 200);

  CoeffStream stream = hecke_stream(theta, gamma);
  ShiftReport report = renascent_shift_search(stream, W, K, tol);
  if (report.entries.empty()) fail(ErrorCode::NonConvergent, "no renascent shift found below K_max");
  ClusterResult cl = window_cluster(report, tol);
  if (format == "csv") return shift_report_csv(report, cl);

  Json out{{"recipe", shifted ? "hecke-two" : "hecke-unique"},
           {"theta", theta},
           {"gamma", gamma},
           {"half_width", W},
           {"K_max", K},
           {"tol", tol},
           {"shift_count", report.entries.size()},
           {"cluster_count", cl.clusters.size()},
           {"clusters", cluster_json(report, cl)}};

  if (shifted && cl.clusters.size() == 2) {
    const auto& a = cl.clusters[0].representative;
    const auto& b = cl.clusters[1].representative;
    double at_minus_one = std::abs(a.at(-1).real() - b.at(-1).real());
    double elsewhere = 0.0;
    for (std::int64_t n = -static_cast<std::int64_t>(W); n < -1; ++n) {
      elsewhere = std::max(elsewhere, std::abs(a.at(n).real() - b.at(n).real()));
    }
    out["difference_at_minus_one"] = at_minus_one;
    out["max_difference_elsewhere"] = elsewhere;
  }

  Json ident = Json::array();
  double worst = 0.0;
  for (Complex z : identity_points()) {
    Evaluation lhs = hecke_outer_direct(theta, shifted ? 0.0 : gamma, z, N);
    Evaluation rhs = (shifted || gamma == 0.0) ? hecke_outer_eval(theta, z, N) : hecke_gamma_outer(theta, gamma, z, N);
    double diff = std::abs(lhs.value - rhs.value);
    worst = std::max(worst, diff);
    ident.push_back(Json{{"z_re", z.real()}, {"z_im", z.imag()}, {"difference", diff}, {"bound", lhs.bound + rhs.bound}});
  }
  out["identity"] = ident;
  out["identity_residual"] = worst;
  out["status"] = "ok";
  return dump(out);
}

UnimodalMap parse_map(const std::string& spec, double feigenbaum_c) {
  if (spec == "tent") return UnimodalMap::tent();
  if (spec == "feigenbaum") return UnimodalMap::quadratic(feigenbaum_c);
  if (spec.rfind("quadratic:", 0) == 0) return UnimodalMap::quadratic(parse_real(spec.substr(10)));
  fail(ErrorCode::InvalidArgument, "unknown map '" + spec + "' (tent, feigenbaum, quadratic:c, product)");
}

std::string run_kneading(const Params& p, const std::string& format) {
  const std::string map = p.str("map", "tent");
  const std::size_t N = p.nat("N", 4095);
  const double tol = p.real("tol", 1e-9);
  const double r_cap = p.real("r_cap", 0.99);
  require(N >= 1, "kneading-entropy: N must be >= 1");

  std::vector<std::int64_t> d;
  if (map == "product") {
    d = feigenbaum_product(N);
  } else {
    d = kneading_data(parse_map(map, p.real("c", kFeigenbaumParameter)), N).d_coeffs;
  }
  std::vector<double> coeffs(d.begin(), d.end());
  RealZero z = smallest_real_zero(coeffs, tol, r_cap);

  auto tm = thue_morse(N);
  std::size_t agree = 0;
  while (agree <= N && d[agree] == (tm[agree] ? -1 : 1)) ++agree;

  Json out{{"recipe", "kneading-entropy"},
           {"map", map},
           {"N", N},
           {"tol", tol},
           {"zero_status", z.status == ZeroStatus::Found ? "found" : "no-zero"},
           {"r_max", z.r_max}};
  if (z.status == ZeroStatus::Found) {
    out["s"] = z.s;
    out["lo"] = z.lo;
    out["hi"] = z.hi;
    out["entropy"] = z.entropy;
  } else {
    out["entropy"] = 0.0;
    out["entropy_upper_bound"] = z.entropy_upper;
  }
  out["tail_bound"] = z.tail;
  out["thue_morse_prefix"] = agree;
  out["status"] = "ok";
  return format == "csv" ? key_value_csv(out) : dump(out);
}

std::string run_thue_morse(const Params& p, const std::string& format) {
  const std::size_t n = p.nat("n", 1023);
  require(n <= 100'000'000, "thue-morse-product: n too large");
  auto tm = thue_morse(n);
  auto prod = feigenbaum_product(n);
  std::int64_t first_mismatch = -1;
  for (std::size_t i = 0; i <= n; ++i) {
    if (prod[i] != (tm[i] ? -1 : 1)) {
      first_mismatch = static_cast<std::int64_t>(i);
      break;
    }
  }
  Json out{{"recipe", "thue-morse-product"}, {"n", n}, {"match", first_mismatch < 0}};
  if (first_mismatch >= 0) out["first_mismatch"] = first_mismatch;
  std::string prefix;
  for (std::size_t i = 0; i <= std::min<std::size_t>(n, 63); ++i) prefix += static_cast<char>('0' + tm[i]);
  out["prefix"] = prefix;
  out["status"] = "ok";
  return format == "csv" ? key_value_csv(out) : dump(out);
}

std::string run_balance(const Params& p, const std::string& format) {
  std::vector<CirclePoint> G;
  for (const auto& s : split(p.str("angles", "sqrt2"), ',')) G.push_back(parse_angle(s));
  const double eps = p.real("eps", 0.5);
  const std::size_t size_cap = p.nat("size_cap", kDefaultBalanceSizeCap);
  const std::uint64_t n_cap = p.nat("n_cap", kDefaultBalanceNCap);
  const std::size_t grid = p.nat("grid", 4096);

  BalancedSet b = balance_completion(G, eps, size_cap, n_cap);
  BalanceBounds bb = balance_bounds(b.points, eps, grid);
  Json out{{"recipe", "balance"},
           {"epsilon", eps},
           {"certified", b.certified},
           {"defect", b.defect},
           {"exact", b.exact},
           {"N", b.N},
           {"M", b.M},
           {"collision_gap", b.collision_gap},
           {"max_q_on_circle", bb.max_on_circle},
           {"upper_limit", bb.upper_limit},
           {"min_q_at_root", bb.min_at_root},
           {"lower_limit", bb.lower_limit},
           {"max_norm_ratio", bb.max_norm_ratio},
           {"bounds_hold", bb.holds}};
  Json pts = Json::array();
  for (const auto& q : b.points) pts.push_back(point_to_json(q));
  out["points"] = pts;
  out["replaced"] = b.replaced;
  out["status"] = "ok";
  return format == "csv" ? key_value_csv(out) : dump(out);
}

Evaluator probe_source(const std::string& spec) {
  if (spec.rfind("roots:", 0) == 0) {
    double m = parse_real(spec.substr(6));
    require(m >= 1 && m <= 1e6 && m == std::floor(m), "probe-arc: roots:M needs a positive integer M");
    auto M = static_cast<std::int64_t>(m);
    PoleMeasure pm;
    for (std::int64_t k = 0; k < M; ++k) pm.add(CirclePoint::rational(k, M), Complex{1.0 / M, 0.0});
    return psp_evaluator(pm);
  }
  if (spec.rfind("measure:", 0) == 0) return psp_evaluator(load_measure(spec.substr(8)));
  if (spec.rfind("hecke:", 0) == 0) {
    double theta = parse_real(spec.substr(6));
    return [theta](Complex z) {
      // Enough terms for the tail to drop below 1e-12 at |z|.
      double r = std::abs(z);
      auto N = static_cast<std::size_t>(std::ceil(std::log(1e-12 * (1.0 - r)) / std::log(r)));
      return hecke_inner_eval(theta, 0.0, z, N).value;
    };
  }
  fail(ErrorCode::InvalidArgument, "probe-arc: unknown source '" + spec + "' (roots:M, measure:PATH, hecke:THETA)");
}

std::string run_probe(const Params& p, const std::string& format) {
  const std::string source = p.str("source", "roots:16");
  const double w1 = p.real("omega1", 0.0);
  const double w2 = p.real("omega2", std::numbers::pi / 4);
  std::vector<double> radii;
  if (p.has("radii")) {
    for (const auto& s : split(p.str("radii", ""), ',')) radii.push_back(parse_real(s));
  } else {
    radii = default_radii();
  }
  const std::size_t n = p.nat("quadrature_n", 1 << 16);
  const double threshold = p.real("threshold", 3.0);

  ArcProbeResult r = arc_l1_growth(probe_source(source), w1, w2, radii, n);
  if (format == "csv") return probe_csv(r);
  double ratio = r.ratio();
  Json out{{"recipe", "probe-arc"},
           {"source", source},
           {"omega1", w1},
           {"omega2", w2},
           {"quadrature_n", n},
           {"radii", r.radii},
           {"integrals", r.integrals},
           {"ratio", ratio},
           {"threshold", threshold},
           {"growth_evidence", ratio > threshold},
           {"note", "finite radius schedule: evidence only"},
           {"status", "ok"}};
  return dump(out);
}

std::string strip_quotes(std::string v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') || (v.front() == '\'' && v.back() == '\''))) {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

}  // namespace

const std::vector<std::string>& recipe_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : key_table()) n.push_back(k);
    return n;
  }();
  return names;
}

const std::vector<std::string>& recipe_keys(const std::string& recipe) {
  auto it = key_table().find(recipe);
  if (it == key_table().end()) fail(ErrorCode::UnknownRecipe, "unknown recipe '" + recipe + "'");
  return it->second;
}

void validate_config(const RecipeConfig& cfg) {
  if (cfg.recipe.empty()) fail(ErrorCode::InvalidArgument, "no recipe given");
  const auto& keys = recipe_keys(cfg.recipe);
  for (const auto& [k, v] : cfg.params) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      fail(ErrorCode::InvalidArgument, "recipe '" + cfg.recipe + "' has no parameter '" + k + "'");
    }
  }
  if (cfg.format != "json" && cfg.format != "csv") {
    fail(ErrorCode::InvalidArgument, "format must be json or csv");
  }
}

RecipeConfig load_config(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    if (!std::ifstream(path)) fail(ErrorCode::Io, "cannot open config '" + path + "'");
    fail(ErrorCode::Parse, std::string("config: ") + e.what());
  }
  RecipeConfig cfg;
  cfg.format.clear();
  auto take_run_key = [&](const std::string& k, const std::string& v) {
    if (k == "recipe") {
      cfg.recipe = v;
    } else if (k == "out") {
      cfg.out = v;
    } else if (k == "format") {
      cfg.format = v;
    } else {
      return false;
    }
    return true;
  };
  std::vector<std::pair<std::string, const boost::property_tree::ptree*>> sections;
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      std::string v = strip_quotes(node.data());
      if (!take_run_key(key, v)) cfg.params[key] = v;
    } else {
      sections.emplace_back(key, &node);
    }
  }
  for (const auto& [name, node] : sections) {
    for (const auto& [key, leaf] : *node) {
      std::string v = strip_quotes(leaf.data());
      if (name == "run") {
        if (!take_run_key(key, v)) fail(ErrorCode::InvalidArgument, "config: unknown key '" + key + "' in [run]");
      } else if (name == "params" || name == cfg.recipe) {
        cfg.params[key] = v;
      } else {
        fail(ErrorCode::InvalidArgument, "config: unexpected section [" + name + "]");
      }
    }
  }
  return cfg;
}

RecipeConfig merge_config(RecipeConfig base, const RecipeConfig& flags) {
  if (!flags.recipe.empty()) base.recipe = flags.recipe;
  if (!flags.out.empty()) base.out = flags.out;
  if (!flags.format.empty()) base.format = flags.format;
  for (const auto& [k, v] : flags.params) base.params[k] = v;
  if (base.format.empty()) base.format = "json";
  return base;
}

std::string run_recipe(const RecipeConfig& cfg) {
  validate_config(cfg);
  Params p(cfg.params);
  std::string text;
  const std::string& r = cfg.recipe;
  if (r == "psp-rrl") {
    text = run_psp_rrl(p, cfg.format);
  } else if (r == "hecke-unique") {
    text = run_hecke(p, cfg.format, false);
  } else if (r == "hecke-two") {
    text = run_hecke(p, cfg.format, true);
  } else if (r == "kneading-entropy") {
    text = run_kneading(p, cfg.format);
  } else if (r == "thue-morse-product") {
    text = run_thue_morse(p, cfg.format);
  } else if (r == "balance") {
    text = run_balance(p, cfg.format);
  } else {
    text = run_probe(p, cfg.format);
  }
  if (!cfg.out.empty()) {
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) fail(ErrorCode::Io, "cannot write '" + cfg.out + "'");
    os << text;
    if (!os) fail(ErrorCode::Io, "write failed for '" + cfg.out + "'");
  }
  return text;
}

}  // namespace rrl
