#include "condtree/quadmap.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <deque>

#include "condtree/error.hpp"
#include "condtree/gw_sampler.hpp"

namespace condtree {

namespace {

constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

[[noreturn]] void not_quad(const std::string& why) { throw Error(ErrorCode::NotAQuadrangulation, why); }

bool is_permutation_of_range(const std::vector<std::uint32_t>& p) {
  std::vector<char> seen(p.size(), 0);
  for (auto x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

PlanarQuadrangulation PlanarQuadrangulation::from_rotation(std::vector<std::uint32_t> sigma,
                                                           std::vector<std::uint32_t> alpha,
                                                           std::uint32_t root_dart) {
  if (!is_permutation_of_range(sigma)) not_quad("sigma is not a permutation");
  std::vector<std::uint32_t> vertex_of(sigma.size(), kNone);
  std::uint32_t next = 0;
  for (std::uint32_t d = 0; d < sigma.size(); ++d) {
    if (vertex_of[d] != kNone) continue;
    for (std::uint32_t e = d; vertex_of[e] == kNone; e = sigma[e]) vertex_of[e] = next;
    ++next;
  }
  return from_rotation(std::move(sigma), std::move(alpha), root_dart, std::move(vertex_of));
}

PlanarQuadrangulation PlanarQuadrangulation::from_rotation(std::vector<std::uint32_t> sigma,
                                                           std::vector<std::uint32_t> alpha,
                                                           std::uint32_t root_dart,
                                                           std::vector<std::uint32_t> vertex_of) {
  PlanarQuadrangulation q;
  q.sigma_ = std::move(sigma);
  q.alpha_ = std::move(alpha);
  q.vertex_of_ = std::move(vertex_of);
  q.root_ = root_dart;
  q.validate();
  q.sigma_inv_.resize(q.sigma_.size());
  for (std::uint32_t d = 0; d < q.sigma_.size(); ++d) q.sigma_inv_[q.sigma_[d]] = d;
  return q;
}

void PlanarQuadrangulation::validate() const {
  const std::size_t m = sigma_.size();
  if (m == 0 || m % 4 != 0) not_quad("dart count must be a positive multiple of 4");
  if (alpha_.size() != m || vertex_of_.size() != m) not_quad("sigma, alpha and vertex ids differ in length");
  if (!is_permutation_of_range(sigma_)) not_quad("sigma is not a permutation");
  for (std::uint32_t d = 0; d < m; ++d) {
    if (alpha_[d] >= m || alpha_[d] == d || alpha_[alpha_[d]] != d) not_quad("alpha is not a fixed-point-free involution");
  }
  if (root_ >= m) not_quad("root dart out of range");

  // Vertex ids: constant on sigma cycles, one id per cycle, ids 0..V-1.
  std::vector<std::uint32_t> cycle_id(m, kNone);
  std::size_t cycles = 0;
  std::vector<char> id_used(m, 0);
  for (std::uint32_t d = 0; d < m; ++d) {
    if (cycle_id[d] != kNone) continue;
    const std::uint32_t id = vertex_of_[d];
    if (id >= m || id_used[id]) not_quad("vertex ids are not one per rotation cycle");
    id_used[id] = 1;
    for (std::uint32_t e = d; cycle_id[e] == kNone; e = sigma_[e]) {
      if (vertex_of_[e] != id) not_quad("vertex id changes along a rotation cycle");
      cycle_id[e] = static_cast<std::uint32_t>(cycles);
    }
    ++cycles;
  }
  for (std::size_t id = 0; id < cycles; ++id) {
    if (!id_used[id]) not_quad("vertex ids are not contiguous");
  }

  std::vector<char> in_face(m, 0);
  std::size_t faces = 0;
  for (std::uint32_t d = 0; d < m; ++d) {
    if (in_face[d]) continue;
    std::size_t degree = 0;
    for (std::uint32_t e = d; !in_face[e]; e = sigma_[alpha_[e]]) {
      in_face[e] = 1;
      ++degree;
    }
    if (degree != 4) not_quad("face of degree " + std::to_string(degree));
    ++faces;
  }
  const std::size_t n = m / 4;
  if (faces != n) not_quad("face count does not match");

  std::vector<char> reached(m, 0);
  std::deque<std::uint32_t> queue{0};
  reached[0] = 1;
  std::size_t count = 1;
  while (!queue.empty()) {
    const std::uint32_t d = queue.front();
    queue.pop_front();
    for (std::uint32_t e : {sigma_[d], alpha_[d]}) {
      if (!reached[e]) {
        reached[e] = 1;
        ++count;
        queue.push_back(e);
      }
    }
  }
  if (count != m) not_quad("map is not connected");
  const auto v = static_cast<std::int64_t>(cycles), e = static_cast<std::int64_t>(m / 2),
             f = static_cast<std::int64_t>(faces);
  if (v - e + f != 2) not_quad("Euler characteristic " + std::to_string(v - e + f));
  const_cast<PlanarQuadrangulation*>(this)->vertex_count_ = cycles;
}

std::vector<std::vector<std::uint32_t>> PlanarQuadrangulation::face_orbits() const {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<char> seen(darts(), 0);
  for (std::uint32_t d = 0; d < darts(); ++d) {
    if (seen[d]) continue;
    auto& face = out.emplace_back();
    for (std::uint32_t e = d; !seen[e]; e = phi(e)) {
      seen[e] = 1;
      face.push_back(e);
    }
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> PlanarQuadrangulation::sigma_cycles() const {
  std::vector<std::vector<std::uint32_t>> out(vertex_count_);
  std::vector<char> seen(darts(), 0);
  for (std::uint32_t d = 0; d < darts(); ++d) {
    if (seen[d]) continue;
    auto& cycle = out[vertex_of_[d]];
    for (std::uint32_t e = d; !seen[e]; e = sigma_[e]) {
      seen[e] = 1;
      cycle.push_back(e);
    }
  }
  return out;
}

PlanarQuadrangulation cvs_build(const SpatialTree<int>& wt) {
  const PlaneTree& t = wt.tree;
  if (t.size() < 2) throw Error(ErrorCode::NotWellLabelled, "the tree needs at least one edge");
  if (wt.root_label() != 1) throw Error(ErrorCode::NotWellLabelled, "root label must be 1");
  for (std::size_t v = 1; v < t.size(); ++v) {
    if (wt.labels[v] < 1) throw Error(ErrorCode::NotWellLabelled, "label below 1");
    if (std::abs(wt.labels[v] - wt.labels[t.parent(v)]) > 1) {
      throw Error(ErrorCode::NotWellLabelled, "neighbour labels differ by more than 1");
    }
  }
  const std::size_t n = t.size() - 1, corners = 2 * n;
  const auto walk = contour_vertices(t);
  std::vector<int> label(corners);
  int max_label = 1;
  for (std::size_t i = 0; i < corners; ++i) {
    label[i] = wt.labels[walk[i]];
    max_label = std::max(max_label, label[i]);
  }

  // succ[i]: next corner cyclically after i with label one less.
  std::vector<std::uint32_t> succ(corners, kNone);
  std::vector<std::uint32_t> next_with(static_cast<std::size_t>(max_label) + 1, kNone);
  for (std::size_t r = 2 * corners; r-- > 0;) {
    const std::size_t i = r % corners;
    if (r < corners && label[i] >= 2) succ[i] = next_with[static_cast<std::size_t>(label[i] - 1)];
    next_with[static_cast<std::size_t>(label[i])] = static_cast<std::uint32_t>(i);
  }

  std::vector<std::vector<std::uint32_t>> incoming(corners);
  for (std::uint32_t i = 0; i < corners; ++i) {
    if (label[i] >= 2) incoming[succ[i]].push_back(i);
  }
  auto offset = [&](std::size_t from, std::size_t to) { return (to + corners - from) % corners; };

  std::vector<std::vector<std::uint32_t>> corners_of(t.size());
  for (std::uint32_t i = 0; i < corners; ++i) corners_of[walk[i]].push_back(i);

  // Counterclockwise around a tree vertex: its corners in contour order; in
  // each corner the arriving arcs by decreasing offset, then the leaving arc.
  const std::size_t darts = 2 * corners;
  std::vector<std::uint32_t> sigma(darts), alpha(darts), vertex_of(darts);
  auto close_cycle = [&](const std::vector<std::uint32_t>& cycle, std::uint32_t id) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      sigma[cycle[k]] = cycle[(k + 1) % cycle.size()];
      vertex_of[cycle[k]] = id;
    }
  };
  for (std::uint32_t v = 0; v < t.size(); ++v) {
    std::vector<std::uint32_t> cycle;
    for (std::uint32_t j : corners_of[v]) {
      auto in = incoming[j];
      std::sort(in.begin(), in.end(), [&](std::uint32_t a, std::uint32_t b) { return offset(j, a) > offset(j, b); });
      for (std::uint32_t i : in) cycle.push_back(2 * i + 1);
      cycle.push_back(2 * j);
    }
    close_cycle(cycle, v);
  }
  std::vector<std::uint32_t> at_a0;
  for (std::uint32_t i = corners; i-- > 0;) {
    if (label[i] == 1) at_a0.push_back(2 * i + 1);
  }
  close_cycle(at_a0, static_cast<std::uint32_t>(n + 1));
  for (std::uint32_t i = 0; i < corners; ++i) {
    alpha[2 * i] = 2 * i + 1;
    alpha[2 * i + 1] = 2 * i;
  }
  return PlanarQuadrangulation::from_rotation(std::move(sigma), std::move(alpha), 1, std::move(vertex_of));
}

PlanarQuadrangulation cvs_build(const SpatialTree<double>& wt) {
  std::vector<int> labels;
  for (double u : wt.labels) {
    if (u != std::round(u)) throw Error(ErrorCode::NotWellLabelled, "labels must be integers");
    labels.push_back(static_cast<int>(u));
  }
  return cvs_build(SpatialTree<int>(wt.tree, std::move(labels)));
}

std::vector<std::size_t> distances_from_root(const PlanarQuadrangulation& q) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(q.vertices(), unset);
  const auto cycles = q.sigma_cycles();
  std::deque<std::uint32_t> queue{q.root_vertex()};
  dist[q.root_vertex()] = 0;
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t d : cycles[v]) {
      const std::uint32_t w = q.origin(q.alpha(d));
      if (dist[w] == unset) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

SpatialTree<int> cvs_inverse(const PlanarQuadrangulation& q) {
  const auto dist = distances_from_root(q);
  const std::size_t darts = q.darts();
  // A tree edge is recorded in the angular sector just before a dart (between
  // sigma^-1(e) and e); partner[e] is the sector at its other end.
  std::vector<std::uint32_t> partner(darts, kNone);
  auto join = [&](std::uint32_t a, std::uint32_t b) {
    if (partner[a] != kNone || partner[b] != kNone) not_quad("two tree edges in one corner");
    partner[a] = b;
    partner[b] = a;
  };
  for (const auto& face : q.face_orbits()) {
    std::array<std::size_t, 4> l{};
    for (std::size_t k = 0; k < 4; ++k) l[k] = dist[q.origin(face[k])];
    if (l[0] == l[2] && l[1] == l[3]) {
      if (l[0] + 1 == l[1]) {
        join(face[1], face[3]);
      } else if (l[1] + 1 == l[0]) {
        join(face[0], face[2]);
      } else {
        not_quad("face labels are not consecutive");
      }
      continue;
    }
    const auto top = static_cast<std::size_t>(std::max_element(l.begin(), l.end()) - l.begin());
    const std::size_t after = (top + 1) % 4, across = (top + 2) % 4, before = (top + 3) % 4;
    if (l[after] + 1 != l[top] || l[before] + 1 != l[top] || l[across] + 2 != l[top]) {
      not_quad("face labels are not of the form l, l+1, l+2, l+1");
    }
    join(face[top], face[before]);
  }

  const std::uint32_t root = q.origin(q.alpha(q.root_dart()));
  const std::size_t tree_vertices = q.vertices() - 1;
  std::vector<std::uint32_t> index(q.vertices(), kNone);  // map vertex -> preorder index
  std::vector<std::int64_t> heights{0};
  std::vector<int> labels{static_cast<int>(dist[root])};
  std::vector<std::uint32_t> stack{root};
  index[root] = 0;
  std::uint32_t position = q.alpha(q.root_dart());
  for (std::size_t step = 0; step < 2 * (tree_vertices - 1); ++step) {
    std::uint32_t e = q.sigma(position);
    while (partner[e] == kNone) {
      if (e == position) not_quad("isolated tree vertex");
      e = q.sigma(e);
    }
    position = partner[e];
    const std::uint32_t w = q.origin(position);
    if (stack.size() >= 2 && stack[stack.size() - 2] == w) {
      stack.pop_back();
    } else {
      if (index[w] != kNone) not_quad("tree edges do not form a tree");
      index[w] = static_cast<std::uint32_t>(labels.size());
      labels.push_back(static_cast<int>(dist[w]));
      stack.push_back(w);
    }
    heights.push_back(static_cast<std::int64_t>(stack.size() - 1));
  }
  if (labels.size() != tree_vertices || stack.size() != 1) not_quad("tree edges do not span the map");
  return {tree_of_contour(std::span<const std::int64_t>(heights)), std::move(labels)};
}

std::vector<std::pair<double, double>> DistanceProfile::rescaled(std::size_t n) const {
  std::vector<std::pair<double, double>> out;
  const double scale = std::pow(static_cast<double>(n), 0.25);
  for (const auto& [k, c] : counts) {
    if (k == 0) continue;
    out.emplace_back(static_cast<double>(k) / scale, static_cast<double>(c) / static_cast<double>(n + 1));
  }
  return out;
}

DistanceProfile distance_profile(const PlanarQuadrangulation& q) {
  DistanceProfile p;
  for (std::size_t d : distances_from_root(q)) {
    ++p.counts[d];
    p.radius = std::max(p.radius, d);
  }
  return p;
}

std::string canonical_code(const PlanarQuadrangulation& q) {
  std::vector<std::uint32_t> order(q.darts(), kNone);
  std::vector<std::uint32_t> discovered{q.root_dart()};
  order[q.root_dart()] = 0;
  for (std::size_t head = 0; head < discovered.size(); ++head) {
    const std::uint32_t d = discovered[head];
    for (std::uint32_t e : {q.sigma(d), q.alpha(d)}) {
      if (order[e] == kNone) {
        order[e] = static_cast<std::uint32_t>(discovered.size());
        discovered.push_back(e);
      }
    }
  }
  std::string code;
  code.reserve(8 * discovered.size());
  auto put = [&](std::uint32_t x) {
    for (int b = 0; b < 4; ++b) code.push_back(static_cast<char>((x >> (8 * b)) & 0xff));
  };
  for (std::uint32_t d : discovered) {
    put(order[q.sigma(d)]);
    put(order[q.alpha(d)]);
  }
  return code;
}

PlanarQuadrangulation sample_uniform_quad(std::size_t n, Rng& rng, std::uint64_t max_rejections) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "quadrangulations need n >= 1");
  static const auto mu = OffspringDistribution::geometric_half();
  static const auto gamma = StepDistribution::uniform3();
  return cvs_build(sample_conditioned(mu, gamma, n, 1.0, rng, max_rejections).tree);
}

nlohmann::json to_json(const PlanarQuadrangulation& q) {
  nlohmann::json pairs = nlohmann::json::array();
  for (std::uint32_t d = 0; d < q.darts(); ++d) {
    if (d < q.alpha(d)) pairs.push_back({d, q.alpha(d)});
  }
  return {{"n", q.faces()},
          {"darts", q.darts()},
          {"sigma", q.sigma_cycles()},
          {"alpha", pairs},
          {"root_dart", q.root_dart()}};
}

PlanarQuadrangulation quad_from_json(const nlohmann::json& j) {
  try {
    const std::size_t darts = j.at("darts").get<std::size_t>();
    std::vector<std::uint32_t> sigma(darts, kNone), alpha(darts, kNone), vertex_of(darts, kNone);
    std::uint32_t id = 0;
    for (const auto& cycle : j.at("sigma")) {
      const auto c = cycle.get<std::vector<std::uint32_t>>();
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] >= darts || vertex_of[c[k]] != kNone) not_quad("bad sigma cycles");
        sigma[c[k]] = c[(k + 1) % c.size()];
        vertex_of[c[k]] = id;
      }
      ++id;
    }
    for (const auto& pair : j.at("alpha")) {
      const auto a = pair.at(0).get<std::uint32_t>(), b = pair.at(1).get<std::uint32_t>();
      if (a >= darts || b >= darts) not_quad("bad alpha pair");
      alpha[a] = b;
      alpha[b] = a;
    }
    auto q = PlanarQuadrangulation::from_rotation(std::move(sigma), std::move(alpha),
                                                  j.at("root_dart").get<std::uint32_t>(), std::move(vertex_of));
    if (j.contains("n") && j.at("n").get<std::size_t>() != q.faces()) not_quad("n does not match the darts");
    return q;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace condtree
