#include "condtree/io.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "condtree/error.hpp"

namespace condtree {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Rational mass_of(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return parse_rational(j.dump());
  throw Error(ErrorCode::ParseError, "mass must be a number or a string");
}

}  // namespace

OffspringDistribution parse_offspring(std::string_view text) {
  text = trim(text);
  if (text == "geometric-half" || text == "geometric") return OffspringDistribution::geometric_half();
  std::vector<Rational> pmf;
  for (auto part : split(text, ',')) pmf.push_back(parse_rational(trim(part)));
  return OffspringDistribution::from_pmf(std::move(pmf));
}

OffspringDistribution parse_offspring_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_offspring(j.get<std::string>());
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "mu must be a string or an array");
  std::vector<Rational> pmf;
  for (const auto& x : j) pmf.push_back(mass_of(x));
  return OffspringDistribution::from_pmf(std::move(pmf));
}

StepDistribution parse_step(std::string_view text) {
  text = trim(text);
  if (text == "uniform3") return StepDistribution::uniform3();
  if (text == "pm1" || text == "plus-minus-one") return StepDistribution::plus_minus_one();
  if (text.starts_with("gaussian")) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) return StepDistribution::gaussian(1.0);
    return StepDistribution::gaussian(parse_rational(trim(text.substr(colon + 1))).get_d());
  }
  std::vector<StepDistribution::Atom> atoms;
  for (auto part : split(text, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorCode::ParseError, "atom needs value:mass");
    atoms.push_back({parse_rational(trim(part.substr(0, colon))), parse_rational(trim(part.substr(colon + 1)))});
  }
  return StepDistribution::from_atoms(std::move(atoms));
}

StepDistribution parse_step_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_step(j.get<std::string>());
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "gamma must be a string or an object");
  std::vector<StepDistribution::Atom> atoms;
  for (const auto& [value, mass] : j.items()) atoms.push_back({parse_rational(value), mass_of(mass)});
  return StepDistribution::from_atoms(std::move(atoms));
}

nlohmann::json to_json(const PlaneTree& t) {
  nlohmann::json counts = nlohmann::json::array();
  for (std::size_t v = 0; v < t.size(); ++v) counts.push_back(t.child_count(v));
  return counts;
}

PlaneTree tree_from_json(const nlohmann::json& j) {
  try {
    return PlaneTree::from_preorder(j.get<std::vector<std::uint32_t>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

SpatialTree<double> spatial_tree_from_json(const nlohmann::json& j) {
  try {
    return {tree_from_json(j.at("counts")), j.at("labels").get<std::vector<double>>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string spatial_contour_csv(const SpatialTree<double>& s) {
  std::ostringstream out;
  out.precision(17);
  out << "t,V\n";
  const auto v = spatial_contour(s);
  for (std::size_t t = 0; t < v.size(); ++t) out << t << ',' << v[t] << '\n';
  return out.str();
}

std::string column_csv(std::string_view header, std::span<const double> values) {
  std::ostringstream out;
  out.precision(17);
  out << header << '\n';
  for (double x : values) out << x << '\n';
  return out.str();
}

std::vector<double> read_column_csv(std::istream& in) {
  std::vector<double> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const auto s = trim(line);
    if (s.empty()) continue;
    if (first && std::isalpha(static_cast<unsigned char>(s.front()))) {
      first = false;
      continue;
    }
    try {
      std::size_t used = 0;
      const double x = std::stod(std::string(s), &used);
      if (used != s.size()) throw std::invalid_argument("trailing text");
      out.push_back(x);
    } catch (const std::exception&) {
      if (!first) throw Error(ErrorCode::ParseError, "not a number: " + std::string(s));
    }
    first = false;
  }
  return out;
}

std::string profile_csv(const DistanceProfile& p) {
  std::ostringstream out;
  out << "k,count\n";
  for (const auto& [k, c] : p.counts) out << k << ',' << c << '\n';
  return out.str();
}

void write_text(const std::string& path, std::string_view content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace condtree
