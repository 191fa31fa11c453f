#include "condtree/exact_enum.hpp"

#include <algorithm>
#include <set>

#include "condtree/error.hpp"

namespace condtree {

Rational tree_weight(const PlaneTree& t, const OffspringDistribution& mu) {
  Rational w = 1;
  for (std::uint32_t k : t.counts()) w *= mu.exact_pmf(k);
  return w;
}

Rational q_tree_weight(const PlaneTree& t, const OffspringDistribution& mu) {
  if (t.child_count(0) != 1) return 0;
  Rational w = 1;
  for (std::size_t i = 1; i < t.size(); ++i) w *= mu.exact_pmf(t.child_count(i));
  return w;
}

void for_each_labelling(const PlaneTree& t, const StepDistribution& gamma, const Rational& x,
                        const std::function<void(const std::vector<Rational>&, const Rational&)>& visit) {
  if (!gamma.finite()) throw Error(ErrorCode::IrrationalMass, gamma.name() + " has no exact atoms");
  const auto& atoms = gamma.atoms();
  const std::size_t size = t.size();
  std::vector<std::size_t> step(size, 0);
  std::vector<Rational> labels(size);
  labels[0] = x;
  for (;;) {
    Rational w = 1;
    for (std::size_t i = 1; i < size; ++i) {
      labels[i] = labels[t.parent(i)] + atoms[step[i]].value;
      w *= atoms[step[i]].mass;
    }
    visit(labels, w);
    std::size_t i = 1;
    while (i < size && step[i] + 1 == atoms.size()) step[i++] = 0;
    if (i >= size) return;
    ++step[i];
  }
}

Rational walk_hit_probability(const OffspringDistribution& mu, std::size_t k) {
  if (k == 0) return 0;
  // S_k = -1 iff the k offspring numbers sum to k - 1.
  const std::size_t target = k - 1;
  std::vector<Rational> dist(target + 1, 0), next(target + 1);
  dist[0] = 1;
  for (std::size_t step = 0; step < k; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t s = 0; s <= target; ++s) {
      if (dist[s] == 0) continue;
      for (std::size_t j = 0; s + j <= target; ++j) next[s + j] += dist[s] * mu.exact_pmf(j);
    }
    dist.swap(next);
  }
  return dist[target];
}

std::vector<SizeLawRow> verify_size_law(const OffspringDistribution& mu, std::size_t max_size) {
  std::vector<SizeLawRow> rows;
  for (std::size_t size = 1; size <= max_size; ++size) {
    SizeLawRow row;
    row.size = size;
    for_each_tree(size, false, [&](const PlaneTree& t) { row.enumerated += tree_weight(t, mu); });
    row.walk = walk_hit_probability(mu, size) / Rational(static_cast<long>(size));
    row.equal = row.enumerated == row.walk;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_string(FunctionalFamily f) {
  switch (f) {
    case FunctionalFamily::Mass: return "mass";
    case FunctionalFamily::Shape: return "shape";
    case FunctionalFamily::Leaves: return "leaves";
    case FunctionalFamily::ChildPattern: return "child-pattern";
    case FunctionalFamily::LabelHistogram: return "label-histogram";
    case FunctionalFamily::ContourCell: return "contour-cell";
    case FunctionalFamily::Atom: return "atom";
  }
  return "?";
}

std::vector<FunctionalFamily> all_families() {
  return {FunctionalFamily::Mass,           FunctionalFamily::Shape,       FunctionalFamily::Leaves,
          FunctionalFamily::ChildPattern,   FunctionalFamily::LabelHistogram,
          FunctionalFamily::ContourCell,    FunctionalFamily::Atom};
}

namespace {

std::string join_labels(const std::vector<Rational>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += to_string(labels[i]);
  }
  return out;
}

// The functionals of a family that take the value 1 on an atom; all others
// vanish there.
std::vector<std::string> indicator_keys(FunctionalFamily family, const AtomKey& atom) {
  const auto& [counts, labels] = atom;
  switch (family) {
    case FunctionalFamily::Mass: return {"1"};
    case FunctionalFamily::Shape: return {to_csv_line(PlaneTree::from_preorder(counts))};
    case FunctionalFamily::Leaves:
      return {std::to_string(std::count(counts.begin(), counts.end(), 0u))};
    case FunctionalFamily::ChildPattern: {
      const std::uint32_t first_child = counts.size() > 1 ? counts[1] : 0;
      return {std::to_string(counts[0]) + "," + std::to_string(first_child)};
    }
    case FunctionalFamily::LabelHistogram: {
      auto sorted = labels;
      std::sort(sorted.begin(), sorted.end());
      return {join_labels(sorted)};
    }
    case FunctionalFamily::ContourCell: {
      const auto t = PlaneTree::from_preorder(counts);
      const auto walk = contour_vertices(t);
      std::vector<std::string> keys;
      for (std::size_t time = 0; time < walk.size(); ++time) {
        keys.push_back(std::to_string(time) + ":" + to_string(labels[walk[time]]));
      }
      return keys;
    }
    case FunctionalFamily::Atom: return {to_csv_line(PlaneTree::from_preorder(counts)) + "|" + join_labels(labels)};
  }
  return {};
}

std::map<std::string, Rational> aggregate(const AtomMeasure& m, FunctionalFamily family) {
  std::map<std::string, Rational> out;
  for (const auto& [atom, w] : m) {
    for (auto& key : indicator_keys(family, atom)) out[key] += w;
  }
  return out;
}

Rational total_mass(const AtomMeasure& m) {
  Rational total = 0;
  for (const auto& [atom, w] : m) total += w;
  return total;
}

}  // namespace

nlohmann::json IdentityReport::to_json() const {
  nlohmann::json families_json = nlohmann::json::array();
  for (const auto& f : families) {
    families_json.push_back({{"family", to_string(f.family)},
                             {"functionals", f.functionals},
                             {"mismatches", f.mismatches}});
  }
  nlohmann::json mismatch_json = nlohmann::json::array();
  for (const auto& m : mismatches) {
    mismatch_json.push_back({{"functional", m.functional}, {"lhs", to_string(m.lhs)}, {"rhs", to_string(m.rhs)}});
  }
  return {{"identity", identity},
          {"n", n},
          {"mu", mu},
          {"gamma", gamma},
          {"lhs", to_string(lhs)},
          {"rhs", to_string(rhs)},
          {"equal", equal},
          {"terms", terms},
          {"families", families_json},
          {"mismatches", mismatch_json}};
}

IdentityReport compare_measures(const AtomMeasure& lhs, const AtomMeasure& rhs,
                                const std::vector<FunctionalFamily>& families) {
  IdentityReport report;
  report.lhs = total_mass(lhs);
  report.rhs = total_mass(rhs);
  report.equal = true;
  for (FunctionalFamily family : families) {
    const auto a = aggregate(lhs, family);
    const auto b = aggregate(rhs, family);
    std::set<std::string> keys;
    for (const auto& [k, v] : a) keys.insert(k);
    for (const auto& [k, v] : b) keys.insert(k);
    FamilyResult result{family, keys.size(), 0};
    for (const auto& key : keys) {
      const auto ia = a.find(key);
      const auto ib = b.find(key);
      const Rational va = ia == a.end() ? Rational(0) : ia->second;
      const Rational vb = ib == b.end() ? Rational(0) : ib->second;
      if (va != vb) {
        ++result.mismatches;
        if (report.mismatches.size() < 8) report.mismatches.push_back({to_string(family) + "=" + key, va, vb});
      }
    }
    report.equal = report.equal && result.mismatches == 0;
    report.families.push_back(result);
  }
  return report;
}

RerootSides reroot_sides(std::size_t n, const OffspringDistribution& mu, const StepDistribution& gamma,
                         bool closed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Q-trees have at least one edge");
  RerootSides sides;
  for_each_tree(n + 1, true, [&](const PlaneTree& t) {
    const Rational qt = q_tree_weight(t, mu);
    if (qt == 0) return;
    const std::size_t leaves = t.leaf_count();
    for_each_labelling(t, gamma, Rational(0), [&](const std::vector<Rational>& labels, const Rational& lw) {
      ++sides.terms;
      const Rational w = qt * lw;
      const SpatialTree<Rational> s(t, labels);
      const auto m = min_label(s, true);
      if (closed) {
        for (std::size_t v0 : m.delta) {
          if (!t.is_leaf(v0)) continue;
          const auto r = reroot_at(s, v0);
          sides.lhs[{{r.tree.counts().begin(), r.tree.counts().end()}, r.labels}] += w;
        }
      } else if (m.delta.size() == 1 && t.is_leaf(m.first)) {
        const auto r = reroot_at(s, m.first);
        sides.lhs[{{r.tree.counts().begin(), r.tree.counts().end()}, r.labels}] += w;
      }
      if (positive_off_root(s, !closed)) {
        sides.rhs[{{t.counts().begin(), t.counts().end()}, labels}] += w * Rational(static_cast<long>(leaves));
      }
    });
  });
  return sides;
}

namespace {

IdentityReport verify(std::size_t n, const OffspringDistribution& mu, const StepDistribution& gamma, bool closed,
                      const std::vector<FunctionalFamily>& families) {
  const auto sides = reroot_sides(n, mu, gamma, closed);
  auto report = compare_measures(sides.lhs, sides.rhs, families);
  report.identity = closed ? "reroot-closed" : "reroot";
  report.n = n;
  report.mu = mu.name();
  report.gamma = gamma.name();
  report.terms = sides.terms;
  return report;
}

}  // namespace

IdentityReport verify_reroot_identity(std::size_t n, const OffspringDistribution& mu, const StepDistribution& gamma,
                                      const std::vector<FunctionalFamily>& families) {
  return verify(n, mu, gamma, false, families);
}

IdentityReport verify_reroot_identity_closed(std::size_t n, const OffspringDistribution& mu,
                                             const StepDistribution& gamma,
                                             const std::vector<FunctionalFamily>& families) {
  return verify(n, mu, gamma, true, families);
}

Rational exact_q_positive_expectation(std::size_t n, const OffspringDistribution& mu, const StepDistribution& gamma,
                                      const std::function<double(const SpatialTree<double>&)>& f) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Q-trees have at least one edge");
  Rational total = 0, weighted = 0;
  for_each_tree(n + 1, true, [&](const PlaneTree& t) {
    const Rational qt = q_tree_weight(t, mu);
    if (qt == 0) return;
    for_each_labelling(t, gamma, Rational(0), [&](const std::vector<Rational>& labels, const Rational& lw) {
      const Rational w = qt * lw;
      total += w;
      const SpatialTree<Rational> s(t, labels);
      if (!positive_off_root(s, true)) return;
      weighted += w * Rational(f(convert_labels<double>(s)));
    });
  });
  return weighted / total;
}

BigInt tutte_count(std::size_t n) {
  BigInt binom, three;
  mpz_bin_uiui(binom.get_mpz_t(), 2 * n, n);
  mpz_ui_pow_ui(three.get_mpz_t(), 3, n);
  const BigInt num = 2 * three * binom;
  const BigInt den = BigInt(static_cast<unsigned long>(n + 1)) * BigInt(static_cast<unsigned long>(n + 2));
  return num / den;
}

namespace {

// Depth-first walk over increments in {-1, 0, 1}; `prune` stops at the first
// label below 1.
template <class Visit>
void label_walk(const PlaneTree& t, std::vector<int>& labels, std::size_t i, bool well, bool prune, Visit& visit) {
  if (i == t.size()) {
    visit(labels, well);
    return;
  }
  for (int step = -1; step <= 1; ++step) {
    const int u = labels[t.parent(i)] + step;
    const bool ok = well && u >= 1;
    if (prune && !ok) continue;
    labels[i] = u;
    label_walk(t, labels, i + 1, ok, prune, visit);
  }
}

}  // namespace

WellLabelledCount count_well_labelled(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "count_well_labelled needs n >= 1");
  WellLabelledCount out;
  out.n = n;
  std::uint64_t all = 0, well = 0;
  auto visit = [&](const std::vector<int>&, bool ok) {
    ++all;
    well += ok;
  };
  for_each_tree(n + 1, false, [&](const PlaneTree& t) {
    std::vector<int> labels(t.size(), 1);
    label_walk(t, labels, 1, true, false, visit);
  });
  out.count_all = BigInt(static_cast<unsigned long>(all));
  out.count_well_labelled = BigInt(static_cast<unsigned long>(well));
  out.ratio = Rational(out.count_well_labelled, out.count_all);
  out.ratio.canonicalize();
  out.tutte = tutte_count(n);
  BigInt three;
  mpz_ui_pow_ui(three.get_mpz_t(), 3, n);
  const bool all_ok = out.count_all == three * BigInt(static_cast<unsigned long>(catalan(n)));
  Rational expected(2, static_cast<unsigned long>(n + 2));
  expected.canonicalize();
  out.matches_formulas = all_ok && out.ratio == expected &&
                         out.count_well_labelled == out.tutte;
  return out;
}

void for_each_well_labelled(std::size_t n, const std::function<void(const SpatialTree<int>&)>& visit) {
  for_each_tree(n + 1, false, [&](const PlaneTree& t) {
    std::vector<int> labels(t.size(), 1);
    auto emit = [&](const std::vector<int>& l, bool) { visit(SpatialTree<int>(t, l)); };
    label_walk(t, labels, 1, true, true, emit);
  });
}

Rational exact_leaf_mean(std::size_t n, const OffspringDistribution& mu) {
  Rational total = 0, leaves = 0;
  for_each_tree(n + 1, false, [&](const PlaneTree& t) {
    const Rational w = tree_weight(t, mu);
    total += w;
    leaves += w * Rational(static_cast<long>(t.leaf_count()));
  });
  return leaves / total;
}

AtomMeasure exact_conditioned_law(std::size_t n, const OffspringDistribution& mu, const StepDistribution& gamma,
                                  const Rational& x, bool strict) {
  AtomMeasure law;
  Rational total = 0;
  for_each_tree(n + 1, false, [&](const PlaneTree& t) {
    const Rational tw = tree_weight(t, mu);
    if (tw == 0) return;
    for_each_labelling(t, gamma, x, [&](const std::vector<Rational>& labels, const Rational& lw) {
      const SpatialTree<Rational> s(t, labels);
      if (!positive_off_root(s, strict)) return;
      const Rational w = tw * lw;
      total += w;
      law[{{t.counts().begin(), t.counts().end()}, labels}] += w;
    });
  });
  for (auto& [atom, w] : law) w /= total;
  return law;
}

}  // namespace condtree
