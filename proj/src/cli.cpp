#include "condtree/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "condtree/error.hpp"
#include "condtree/exact_enum.hpp"
#include "condtree/experiments.hpp"
#include "condtree/gw_sampler.hpp"
#include "condtree/io.hpp"
#include "condtree/quadmap.hpp"
#include "condtree/snake_limit.hpp"

namespace condtree {

namespace {

using nlohmann::json;

struct Options {
  std::optional<std::size_t> n;
  double x = 0.0;
  std::string mu = "geometric-half";
  std::string gamma = "uniform3";
  std::optional<std::uint64_t> seed;
  std::size_t samples = 1;
  std::size_t workers = 1;
  std::string out = "-";
  std::size_t grid = 4096;
  std::string identity = "reroot";
  std::string measure = "PNx";
  std::size_t discrete_n = 2000;
  std::string manifest;
  // sample
  std::string format = "json";
  std::uint64_t max_rejections = 100'000'000;
  bool closed = false;
  // quad
  std::string csv;
  std::string profile;
  // snake
  bool conditioned = false;
  std::string functional = "range";
  // compare
  std::string target = "tree-range";
  double threshold = 0.05;
  std::optional<std::size_t> continuum_samples;
  bool smooth = false;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t require_seed(const Options& o) {
  if (!o.seed) throw UsageError("this subcommand needs --seed");
  return *o.seed;
}

void emit(const std::string& path, std::string_view content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
  } else {
    write_text(path, content);
  }
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Flattens a JSON config object into "--key value" arguments for keys not
// already given on the command line.
std::vector<std::string> with_config(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      path = args[++i];
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
    } else {
      kept.push_back(args[i]);
    }
  }
  if (path.empty()) return kept;
  json config;
  try {
    config = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!config.is_object()) throw UsageError("config must be a JSON object");
  auto given = [&](const std::string& flag) {
    return std::any_of(kept.begin(), kept.end(),
                       [&](const std::string& a) { return a == flag || a.starts_with(flag + "="); });
  };
  for (const auto& [key, value] : config.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    if (key == "subcommand" || given(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) kept.push_back(flag);
      continue;
    }
    std::string text;
    if (value.is_array()) {
      for (const auto& v : value) text += (text.empty() ? "" : ",") + scalar_text(v);
    } else if (value.is_object()) {
      for (const auto& [k, v] : value.items()) text += (text.empty() ? "" : ",") + k + ":" + scalar_text(v);
    } else {
      text = scalar_text(value);
    }
    kept.push_back(flag);
    kept.push_back(text);
  }
  return kept;
}

json options_json(const CLI::App& sub) {
  json config = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "-h" || opt->count() == 0) continue;
    const auto& results = opt->results();
    std::string key = name.substr(name.find_first_not_of('-'));
    config[key] = results.size() == 1 ? json(results.front()) : json(results);
  }
  return config;
}

void write_manifest(const Options& o, const std::string& subcommand, const CLI::App& sub,
                    std::vector<std::string> outputs, double seconds) {
  if (o.manifest.empty()) return;
  json m{{"subcommand", subcommand},
         {"config", options_json(sub)},
         {"seed", o.seed ? json(*o.seed) : json(nullptr)},
         {"outputs", outputs},
         {"timing_seconds", seconds}};
  write_text(o.manifest, m.dump(2) + "\n");
}

int cmd_sample(const Options& o, std::ostream& out) {
  SampleConfig config;
  config.seed = require_seed(o);
  config.measure = parse_measure(o.measure);
  config.n = o.n;
  config.x = o.x;
  config.max_rejections = o.max_rejections;
  config.strict = !o.closed;
  config.validate();
  const auto mu = parse_offspring(o.mu);
  const auto gamma = parse_step(o.gamma);
  if (o.format != "json" && o.format != "csv") throw UsageError("--format must be json or csv");
  std::vector<std::string> lines(o.samples);
  parallel_for(o.samples, o.workers, [&](std::size_t i) {
    Rng rng = make_stream(config.seed, i);
    const auto s = sample_measure(config, mu, gamma, rng);
    lines[i] = o.format == "json" ? to_json(s).dump() : to_csv_line(s.tree);
  });
  std::string text;
  for (const auto& l : lines) text += l + "\n";
  emit(o.out, text, out);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const std::size_t n = o.n.value_or(3);
  json report;
  bool ok = false;
  if (o.identity == "reroot" || o.identity == "reroot-closed") {
    const auto mu = parse_offspring(o.mu);
    const auto gamma = parse_step(o.gamma);
    if (n < 1 || n > 7) throw UsageError("identity checks support 1 <= n <= 7");
    const auto r = o.identity == "reroot" ? verify_reroot_identity(n, mu, gamma)
                                          : verify_reroot_identity_closed(n, mu, gamma);
    report = r.to_json();
    ok = r.equal;
  } else if (o.identity == "size-law") {
    const auto mu = parse_offspring(o.mu);
    if (n < 1 || n > 12) throw UsageError("size-law supports 1 <= n <= 12");
    ok = true;
    json rows = json::array();
    for (const auto& row : verify_size_law(mu, n)) {
      rows.push_back({{"size", row.size},
                      {"enumerated", to_string(row.enumerated)},
                      {"walk", to_string(row.walk)},
                      {"equal", row.equal}});
      ok = ok && row.equal;
    }
    report = {{"identity", "size-law"}, {"n", n}, {"mu", mu.name()}, {"rows", rows}, {"equal", ok}};
  } else if (o.identity == "counts") {
    if (n < 1 || n > 10) throw UsageError("counts supports 1 <= n <= 10");
    ok = true;
    json rows = json::array();
    for (std::size_t k = 1; k <= n; ++k) {
      const auto c = count_well_labelled(k);
      rows.push_back({{"n", k},
                      {"all", c.count_all.get_str()},
                      {"well_labelled", c.count_well_labelled.get_str()},
                      {"ratio", to_string(c.ratio)},
                      {"tutte", c.tutte.get_str()},
                      {"equal", c.matches_formulas}});
      ok = ok && c.matches_formulas;
    }
    report = {{"identity", "counts"}, {"n", n}, {"rows", rows}, {"equal", ok}};
  } else {
    throw UsageError("unknown identity '" + o.identity + "' (reroot, reroot-closed, size-law, counts)");
  }
  emit(o.out, report.dump(2) + "\n", out);
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_quad(const Options& o, std::ostream& out) {
  const std::uint64_t seed = require_seed(o);
  const std::size_t n = o.n.value_or(2);
  if (n < 1) throw UsageError("--n must be at least 1");
  std::vector<std::string> codes(o.samples);
  std::vector<double> radius(o.samples), distance(o.samples);
  std::string first_profile;
  parallel_for(o.samples, o.workers, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    const auto q = sample_uniform_quad(n, rng);
    const auto d = distances_from_root(q);
    codes[i] = canonical_code(q);
    radius[i] = static_cast<double>(*std::max_element(d.begin(), d.end()));
    distance[i] = static_cast<double>(d[uniform_below(rng, n + 1)]);
    if (i == 0) first_profile = profile_csv(distance_profile(q));
  });
  std::map<std::string, std::size_t> freq;
  for (const auto& c : codes) ++freq[c];
  json report{{"n", n}, {"samples", o.samples}, {"distinct_codes", freq.size()}};
  bool ok = true;
  double mean_radius = 0;
  for (double r : radius) mean_radius += r / static_cast<double>(std::max<std::size_t>(o.samples, 1));
  report["mean_radius"] = mean_radius;
  if (n <= 12) {
    const BigInt tutte = tutte_count(n);
    report["tutte"] = tutte.get_str();
    if (freq.size() <= 256) {
      json table = json::array();
      for (const auto& [code, c] : freq) table.push_back(c);
      report["frequencies"] = table;
      const double expected = static_cast<double>(o.samples) / tutte.get_d();
      double chi2 = 0;
      for (const auto& [code, c] : freq) chi2 += std::pow(static_cast<double>(c) - expected, 2) / expected;
      chi2 += (tutte.get_d() - static_cast<double>(freq.size())) * expected;
      report["chi_square"] = chi2;
      report["degrees_of_freedom"] = tutte.get_d() - 1;
    }
    if (static_cast<double>(o.samples) >= 20.0 * tutte.get_d()) {
      ok = tutte == BigInt(static_cast<unsigned long>(freq.size()));
      report["all_codes_seen"] = ok;
    }
  }
  if (!o.csv.empty()) {
    std::ostringstream s;
    s << "radius,distance\n";
    for (std::size_t i = 0; i < o.samples; ++i) s << radius[i] << ',' << distance[i] << '\n';
    write_text(o.csv, s.str());
  }
  if (!o.profile.empty() && o.samples > 0) write_text(o.profile, first_profile);
  emit(o.out, report.dump(2) + "\n", out);
  return ok ? kExitOk : kExitCheckFailed;
}

const std::vector<double>& pick(const SnakeSamples& s, const std::string& functional) {
  if (functional == "sup") return s.sup;
  if (functional == "inf") return s.inf;
  if (functional == "range") return s.range;
  throw UsageError("unknown functional '" + functional + "' (sup, inf, range)");
}

int cmd_snake(const Options& o, std::ostream& out) {
  const std::uint64_t seed = require_seed(o);
  if (o.grid < 2) throw UsageError("--grid must be at least 2");
  const auto s = snake_samples(o.grid, o.conditioned, {o.samples, seed, o.workers, 0});
  const auto& values = pick(s, o.functional);
  double mean = 0;
  for (double v : values) mean += v / static_cast<double>(std::max<std::size_t>(values.size(), 1));
  if (!o.csv.empty()) write_text(o.csv, column_csv(o.functional, values));
  json report{{"grid", o.grid},
              {"samples", o.samples},
              {"conditioned", o.conditioned},
              {"functional", o.functional},
              {"mean", mean}};
  emit(o.out, report.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const std::uint64_t seed = require_seed(o);
  const std::size_t n = o.discrete_n, nb = o.continuum_samples.value_or(o.samples);
  if (n < 1 || o.samples == 0 || nb == 0) throw UsageError("--discrete-n and sample counts must be positive");
  const SampleRun discrete{o.samples, seed, o.workers, 0};
  const SampleRun continuum{nb, seed, o.workers, std::uint64_t{1} << 40};
  const double quad_const = std::pow(8.0 / 9.0, 0.25);
  std::vector<double> a, b;
  json extra = json::object();
  if (o.target == "tree-range") {
    const auto mu = parse_offspring(o.mu);
    const auto gamma = parse_step(o.gamma);
    const double kappa = snake_kappa(mu.sigma(), gamma.rho());
    a = tree_range_samples(mu, gamma, n, discrete);
    b = snake_samples(o.grid, false, continuum).range;
    for (double& v : b) v /= kappa;
    extra["kappa"] = kappa;
  } else if (o.target == "quad-radius" || o.target == "quad-distance") {
    const auto q = quad_samples(n, discrete);
    const auto z = snake_samples(o.grid, false, continuum);
    a = o.target == "quad-radius" ? q.radius : q.distance;
    b = o.target == "quad-radius" ? z.range : z.sup;
    for (double& v : b) v *= quad_const;
    extra["scale"] = quad_const;
  } else {
    throw UsageError("unknown target '" + o.target + "' (tree-range, quad-radius, quad-distance)");
  }
  const double statistic = ks_two_sample(a, b);
  const bool pass = statistic <= o.threshold;
  json report{{"target", o.target},
              {"statistic", statistic},
              {"n_a", a.size()},
              {"n_b", b.size()},
              {"threshold", o.threshold},
              {"pass", pass},
              {"discrete_n", n},
              {"grid", o.grid}};
  report.update(extra);
  if (o.smooth) {
    // Integer distances sit on a lattice of spacing n^{-1/4}.
    const auto smoothed = lattice_jitter(a, std::pow(static_cast<double>(n), -0.25), seed);
    report["smoothed_statistic"] = ks_two_sample(smoothed, b);
  }
  if (!o.csv.empty()) write_text(o.csv, column_csv("discrete", a));
  emit(o.out, report.dump(2) + "\n", out);
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conditioned spatial trees, quadrangulations and the Brownian snake", "condtree"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "RNG seed (required for randomized subcommands)");
    sub->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "output path, '-' for stdout");
    sub->add_option("--manifest", o.manifest, "write a JSON run manifest here");
  };
  auto laws = [&](CLI::App* sub) {
    sub->add_option("--mu", o.mu, "offspring law: geometric-half or p0,p1,...");
    sub->add_option("--gamma", o.gamma, "step law: uniform3, pm1, gaussian:<sd> or v:m,...");
  };

  auto* sample = app.add_subcommand("sample", "draw labelled trees");
  common(sample);
  laws(sample);
  sample->add_option("--measure", o.measure, "Pi, PiN, Px, PNx, PBarNx, Q, QN, QBarN");
  sample->add_option("--n", o.n, "edges (size-conditioned measures)");
  sample->add_option("--x", o.x, "root label");
  sample->add_option("--samples", o.samples, "number of trees");
  sample->add_option("--format", o.format, "json (one object per line) or csv (child counts)");
  sample->add_option("--max-rejections", o.max_rejections, "rejection budget for positive conditioning");
  sample->add_flag("--closed", o.closed, "condition on labels >= 0 instead of > 0");

  auto* verify = app.add_subcommand("verify", "exact checks by enumeration");
  common(verify);
  laws(verify);
  verify->add_option("--identity", o.identity, "reroot, reroot-closed, size-law or counts");
  verify->add_option("--n", o.n, "edges (or maximal size)");

  auto* quad = app.add_subcommand("quad", "uniform quadrangulations");
  common(quad);
  quad->add_option("--n", o.n, "faces");
  quad->add_option("--samples", o.samples, "number of maps");
  quad->add_option("--csv", o.csv, "per-sample radius and distance to a uniform vertex");
  quad->add_option("--profile", o.profile, "distance profile CSV of the first map");

  auto* snake = app.add_subcommand("snake", "Brownian snake functionals");
  common(snake);
  snake->add_option("--grid", o.grid, "grid size m");
  snake->add_option("--samples", o.samples, "number of paths");
  snake->add_flag("--conditioned", o.conditioned, "re-root at the minimum");
  snake->add_option("--functional", o.functional, "sup, inf or range");
  snake->add_option("--csv", o.csv, "single-column CSV of the functional");

  auto* compare = app.add_subcommand("compare", "KS comparison of discrete and continuum functionals");
  common(compare);
  laws(compare);
  compare->add_option("--discrete-n", o.discrete_n, "tree edges or map faces");
  compare->add_option("--grid", o.grid, "snake grid size");
  compare->add_option("--samples", o.samples, "discrete samples");
  compare->add_option("--continuum-samples", o.continuum_samples, "snake samples (default: --samples)");
  compare->add_option("--target", o.target, "tree-range, quad-radius or quad-distance");
  compare->add_option("--threshold", o.threshold, "pass if the statistic is at most this");
  compare->add_flag("--smooth", o.smooth, "also report the statistic after lattice jitter");
  compare->add_option("--csv", o.csv, "single-column CSV of the discrete sample");

  const auto started = std::chrono::steady_clock::now();
  try {
    auto args = with_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    int status = kExitOk;
    if (name == "sample") status = cmd_sample(o, out);
    if (name == "verify") status = cmd_verify(o, out);
    if (name == "quad") status = cmd_quad(o, out);
    if (name == "snake") status = cmd_snake(o, out);
    if (name == "compare") status = cmd_compare(o, out);
    std::vector<std::string> outputs;
    for (const auto& p : {o.out, o.csv, o.profile}) {
      if (!p.empty() && p != "-") outputs.push_back(p);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_manifest(o, name, *chosen, outputs, seconds);
    return status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    const auto code = e.code();
    const bool usage = code == ErrorCode::InvalidArgument || code == ErrorCode::ParseError ||
                       code == ErrorCode::InvalidDistribution || code == ErrorCode::UnreachableSize;
    return usage ? kExitUsage : kExitCheckFailed;
  }
}

}  // namespace condtree
