#pragma once

#include <string>

#include "json.hpp"
#include "rrl/boundary_probe.hpp"
#include "rrl/diophantine.hpp"
#include "rrl/right_limits.hpp"

namespace rrl {

using Json = nlohmann::ordered_json;

/// Round-trip decimal form of a double ("%.17g").
std::string format_double(double x);

/// Angle in turns from text: "p/q" (exact), "golden", "sqrt2", "sqrt3"
/// (the fractional parts (sqrt5-1)/2, sqrt2-1, sqrt3-1), or a decimal.
CirclePoint parse_angle(const std::string& text);
/// A real number, also accepting the named angles above.
double parse_real(const std::string& text);

Json point_to_json(const CirclePoint& p);
/// {"p": .., "q": ..}, a number of turns, or a string accepted by parse_angle.
CirclePoint point_from_json(const Json& j);

/// Array of {"angle", "re", "im"} atoms, or {"atoms": [...], "tail_mass": t}.
Json measure_to_json(const PoleMeasure& m);
PoleMeasure measure_from_json(const Json& j);
PoleMeasure load_measure(const std::string& path);

Json cpoly_to_json(const CPoly& p);

/// Columns shift,residual_pos,residual_neg_vs_cluster,cluster_id.
std::string shift_report_csv(const ShiftReport& report, const ClusterResult& clusters);
/// Columns radius,integral,ratio_to_first.
std::string probe_csv(const ArcProbeResult& probe);

}  // namespace rrl
