#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "condtree/distributions.hpp"
#include "condtree/plane_tree.hpp"
#include "condtree/quadmap.hpp"
#include "condtree/spatial_tree.hpp"

namespace condtree {

/// "geometric-half", or a comma-separated pmf "p0,p1,..." of rationals or
/// decimals ("1/2,0,1/2"). Throws Error(ParseError) or
/// Error(InvalidDistribution).
OffspringDistribution parse_offspring(std::string_view text);
/// A JSON string as above, or an array of masses (numbers or strings).
OffspringDistribution parse_offspring_json(const nlohmann::json& j);

/// "uniform3", "pm1", "gaussian:<sd>", or atoms "value:mass,..."
/// ("-1:1/4,0:1/2,1:1/4").
StepDistribution parse_step(std::string_view text);
/// A JSON string as above, or an object {"value": mass, ...}.
StepDistribution parse_step_json(const nlohmann::json& j);

nlohmann::json to_json(const PlaneTree& t);
PlaneTree tree_from_json(const nlohmann::json& j);

/// {"counts": [...], "labels": [...]} in preorder.
template <class Label>
nlohmann::json to_json(const SpatialTree<Label>& s) {
  return {{"counts", to_json(s.tree)}, {"labels", s.labels}};
}
SpatialTree<double> spatial_tree_from_json(const nlohmann::json& j);

/// Two-column CSV "t,V" over the integer contour times.
std::string spatial_contour_csv(const SpatialTree<double>& s);
/// Single-column CSV with a header line.
std::string column_csv(std::string_view header, std::span<const double> values);
/// Reads one value per line; a first line starting with a letter is a header.
std::vector<double> read_column_csv(std::istream& in);
/// "k,count" rows of a distance profile.
std::string profile_csv(const DistanceProfile& p);

/// Writes `content` to `path`, or to stdout when path is "-". Throws
/// Error(InvalidArgument) if the file cannot be written.
void write_text(const std::string& path, std::string_view content);
std::string read_text(const std::string& path);

}  // namespace condtree
