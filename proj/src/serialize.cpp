#include "rrl/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rrl {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

bool parse_int(const std::string& s, std::int64_t& out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == s.size();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

double parse_real(const std::string& raw) {
  std::string s = trim(raw);
  if (s == "golden") return (std::sqrt(5.0) - 1.0) / 2.0;
  if (s == "sqrt2") return std::sqrt(2.0) - 1.0;
  if (s == "sqrt3") return std::sqrt(3.0) - 1.0;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail(ErrorCode::Parse, "not a number: '" + raw + "'");
  }
  if (pos != s.size() || !std::isfinite(v)) fail(ErrorCode::Parse, "not a finite number: '" + raw + "'");
  return v;
}

CirclePoint parse_angle(const std::string& raw) {
  std::string s = trim(raw);
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::int64_t p = 0, q = 0;
    if (!parse_int(trim(s.substr(0, slash)), p) || !parse_int(trim(s.substr(slash + 1)), q)) {
      fail(ErrorCode::Parse, "bad rational angle: '" + raw + "'");
    }
    return CirclePoint::rational(p, q);
  }
  return CirclePoint::real(parse_real(s));
}

Json point_to_json(const CirclePoint& p) {
  if (p.is_exact()) return Json{{"p", p.numerator()}, {"q", p.denominator()}};
  return p.turns();
}

CirclePoint point_from_json(const Json& j) {
  try {
    if (j.is_object()) return CirclePoint::rational(j.at("p").get<std::int64_t>(), j.at("q").get<std::int64_t>());
    if (j.is_number()) return CirclePoint::real(j.get<double>());
    if (j.is_string()) return parse_angle(j.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("bad angle: ") + e.what());
  }
  fail(ErrorCode::Parse, "angle must be an object {p, q}, a number or a string");
}

Json measure_to_json(const PoleMeasure& m) {
  Json atoms = Json::array();
  for (const auto& a : m.atoms()) {
    atoms.push_back(Json{{"angle", point_to_json(a.point)}, {"re", a.weight.real()}, {"im", a.weight.imag()}});
  }
  if (m.tail_mass() == 0.0) return atoms;
  return Json{{"atoms", atoms}, {"tail_mass", m.tail_mass()}};
}

PoleMeasure measure_from_json(const Json& j) {
  const Json* atoms = &j;
  double tail = 0.0;
  try {
    if (j.is_object()) {
      atoms = &j.at("atoms");
      if (j.contains("tail_mass")) tail = j.at("tail_mass").get<double>();
    }
    if (!atoms->is_array()) fail(ErrorCode::Parse, "measure: expected an array of atoms");
    PoleMeasure m;
    for (const auto& a : *atoms) {
      double re = a.at("re").get<double>();
      double im = a.contains("im") ? a.at("im").get<double>() : 0.0;
      m.add(point_from_json(a.at("angle")), Complex{re, im});
    }
    m.set_tail_mass(tail);
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("measure: ") + e.what());
  }
}

PoleMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open measure file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, "measure file '" + path + "': " + e.what());
  }
  return measure_from_json(j);
}

Json cpoly_to_json(const CPoly& p) {
  Json out = Json::array();
  for (auto c : p.coeffs()) out.push_back(Json{{"re", c.real()}, {"im", c.imag()}});
  return out;
}

std::string shift_report_csv(const ShiftReport& report, const ClusterResult& clusters) {
  require(clusters.assignment.size() == report.entries.size(), "shift_report_csv: cluster data does not match report");
  std::ostringstream os;
  os << "shift,residual_pos,residual_neg_vs_cluster,cluster_id\n";
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    os << report.entries[i].shift << ',' << format_double(report.entries[i].residual_pos) << ','
       << format_double(clusters.distance_to_rep[i]) << ',' << clusters.assignment[i] << '\n';
  }
  return os.str();
}

std::string probe_csv(const ArcProbeResult& probe) {
  std::ostringstream os;
  os << "radius,integral,ratio_to_first\n";
  for (std::size_t i = 0; i < probe.radii.size(); ++i) {
    double ratio = probe.integrals.front() > 0.0 ? probe.integrals[i] / probe.integrals.front() : 0.0;
    os << format_double(probe.radii[i]) << ',' << format_double(probe.integrals[i]) << ',' << format_double(ratio)
       << '\n';
  }
  return os.str();
}

}  // namespace rrl
