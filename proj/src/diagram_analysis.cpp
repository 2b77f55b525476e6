#include "paretotopo/diagram_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "csv_util.hpp"
#include "paretotopo/parallel.hpp"
#include "paretotopo/rng.hpp"

namespace paretotopo {

namespace {

struct Point {
  double birth, death;
};

double linf(const Point& a, const Point& b) { return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death)); }
double to_diagonal(const Point& p) { return (p.death - p.birth) / 2.0; }

// Hopcroft-Karp on an implicit bipartite graph of n left and n right nodes.
class Matching {
public:
  template <class Adj>
  static bool perfect(std::size_t n, Adj&& adjacent) {
    std::vector<std::vector<std::uint32_t>> g(n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (adjacent(u, v)) g[u].push_back(static_cast<std::uint32_t>(v));
    for (const auto& row : g)
      if (row.empty()) return false;

    constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> match_l(n, kFree), match_r(n, kFree), dist(n);
    std::size_t matched = 0;

    auto bfs = [&] {
      std::queue<std::uint32_t> q;
      bool found = false;
      for (std::uint32_t u = 0; u < n; ++u) {
        if (match_l[u] == kFree) {
          dist[u] = 0;
          q.push(u);
        } else {
          dist[u] = kFree;
        }
      }
      while (!q.empty()) {
        const auto u = q.front();
        q.pop();
        for (auto v : g[u]) {
          const auto w = match_r[v];
          if (w == kFree)
            found = true;
          else if (dist[w] == kFree) {
            dist[w] = dist[u] + 1;
            q.push(w);
          }
        }
      }
      return found;
    };
    std::vector<std::size_t> it(n);
    auto dfs = [&](auto&& self, std::uint32_t u) -> bool {
      for (; it[u] < g[u].size(); ++it[u]) {
        const auto v = g[u][it[u]];
        const auto w = match_r[v];
        if (w == kFree || (dist[w] == dist[u] + 1 && self(self, w))) {
          match_l[u] = v;
          match_r[v] = u;
          return true;
        }
      }
      dist[u] = kFree;
      return false;
    };
    while (bfs()) {
      std::fill(it.begin(), it.end(), 0);
      for (std::uint32_t u = 0; u < n; ++u)
        if (match_l[u] == kFree && dfs(dfs, u)) ++matched;
    }
    return matched == n;
  }
};

std::vector<Point> points_of(const PersistenceDiagram& d, int dim) {
  std::vector<Point> out;
  for (const auto& p : d.pairs)
    if (p.dim == dim) out.push_back({p.birth, p.essential ? d.delta_max : p.death});
  return out;
}

} // namespace

double bottleneck_distance(const PersistenceDiagram& da, const PersistenceDiagram& db, int dim) {
  const auto a = points_of(da, dim);
  const auto b = points_of(db, dim);
  const std::size_t na = a.size(), nb = b.size();
  if (na == 0 && nb == 0) return 0.0;

  // Left: a[0..na) then diagonal copies of b; right: b[0..nb) then diagonal copies of a.
  auto cost = [&](std::size_t u, std::size_t v) -> double {
    const bool real_u = u < na, real_v = v < nb;
    if (real_u && real_v) return linf(a[u], b[v]);
    if (real_u) return (v - nb == u) ? to_diagonal(a[u]) : std::numeric_limits<double>::infinity();
    if (real_v) return (u - na == v) ? to_diagonal(b[v]) : std::numeric_limits<double>::infinity();
    return 0.0;
  };

  std::vector<double> radii{0.0};
  for (const auto& p : a) radii.push_back(to_diagonal(p));
  for (const auto& q : b) radii.push_back(to_diagonal(q));
  for (const auto& p : a)
    for (const auto& q : b) radii.push_back(linf(p, q));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  const std::size_t n = na + nb;
  auto feasible = [&](double r) { return Matching::perfect(n, [&](std::size_t u, std::size_t v) { return cost(u, v) <= r; }); };
  std::size_t lo = 0, hi = radii.size() - 1; // radii[hi] (matching everything to the diagonal) is always feasible
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(radii[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return radii[lo];
}

namespace {

void check_band_args(const DistanceMatrix& dm, double alpha, int replicates) {
  if (replicates < 1) throw Error(Errc::invalid_argument, "bootstrap needs at least one replicate");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::invalid_argument, "alpha must lie in (0, 1)");
  if (dm.size() < 2) throw Error(Errc::invalid_argument, "bootstrap needs at least two points");
  if (dm.max() == 0.0) throw Error(Errc::invalid_argument, "degenerate cloud: all points identical");
}

// Distinct indices of a size-n resample with replacement.
std::vector<Index> resample(std::size_t n, std::uint64_t seed, std::size_t r) {
  CounterRng rng(seed, r);
  std::vector<Index> idx(n);
  for (auto& i : idx) i = static_cast<Index>(rng.below(n));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

void finish_band(ConfidenceBand& band) {
  std::vector<double> sorted = band.bootstrap_distances;
  std::sort(sorted.begin(), sorted.end());
  const double q = std::ceil((1.0 - band.alpha) * static_cast<double>(band.replicates) - 1e-9);
  const std::size_t rank = std::clamp<std::size_t>(static_cast<std::size_t>(q), 1, sorted.size());
  band.half_width = sorted[rank - 1];
}

ConfidenceBand empty_band(double alpha, int replicates, std::uint64_t seed) {
  ConfidenceBand band;
  band.alpha = alpha;
  band.replicates = replicates;
  band.seed = seed;
  band.bootstrap_distances.assign(static_cast<std::size_t>(replicates), 0.0);
  return band;
}

} // namespace

ConfidenceBand confidence_band(const DistanceMatrix& dm, const PersistenceDiagram& full, double alpha,
                               int replicates, int maxdim, std::uint64_t seed, int jobs) {
  check_band_args(dm, alpha, replicates);
  const std::size_t n = dm.size();
  const int hdim = full.max_dim;
  ConfidenceBand band = empty_band(alpha, replicates, seed);

  parallel_for(static_cast<std::size_t>(replicates), jobs, [&](std::size_t r) {
    // Duplicates only add zero-persistence pairs, so the diagram of the
    // distinct points is the replicate's diagram.
    const std::vector<Index> idx = resample(n, seed, r);
    const DistanceMatrix sub = dm.subset(idx);
    const int md = std::min<int>(maxdim, static_cast<int>(idx.size()) - 1);
    const Filtration f = build_filtration(sub, md, full.delta_max);
    PersistenceOptions opt;
    opt.max_dim = std::min(hdim, md);
    PersistenceDiagram rep = compute_persistence(f, opt);
    rep.max_dim = hdim;
    double dist = 0.0;
    for (int k = 0; k <= hdim; ++k) dist = std::max(dist, bottleneck_distance(full, rep, k));
    band.bootstrap_distances[r] = dist;
  });
  finish_band(band);
  return band;
}

ConfidenceBand hausdorff_band(const DistanceMatrix& dm, double alpha, int replicates, std::uint64_t seed, int jobs) {
  check_band_args(dm, alpha, replicates);
  const std::size_t n = dm.size();
  ConfidenceBand band = empty_band(alpha, replicates, seed);

  parallel_for(static_cast<std::size_t>(replicates), jobs, [&](std::size_t r) {
    const std::vector<Index> idx = resample(n, seed, r);
    std::vector<char> drawn(n, 0);
    for (Index i : idx) drawn[static_cast<std::size_t>(i)] = 1;
    // The resample is a subset, so only the sample-to-resample direction counts.
    // Rips diameters move by at most 2 d_H, which bounds the replicate's
    // bottleneck distance.
    double h = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (drawn[i]) continue;
      double nearest = std::numeric_limits<double>::infinity();
      for (Index j : idx) nearest = std::min(nearest, dm(i, static_cast<std::size_t>(j)));
      h = std::max(h, nearest);
    }
    band.bootstrap_distances[r] = 2.0 * h;
  });
  finish_band(band);
  return band;
}

ConfidenceBand confidence_band(const PointCloud& pc, double alpha, int replicates, int maxdim, std::uint64_t seed,
                               const BandOptions& options) {
  if (pc.size() < 2) throw Error(Errc::invalid_argument, "bootstrap needs at least two points");
  const DistanceMatrix dm = pairwise_distances(pc);
  if (dm.max() == 0.0) throw Error(Errc::invalid_argument, "degenerate cloud: all points identical");
  if (options.method == BandMethod::hausdorff) return hausdorff_band(dm, alpha, replicates, seed, options.jobs);
  const Filtration f = build_filtration(dm, maxdim, options.delta_max.value_or(dm.max()));
  PersistenceOptions opt;
  opt.max_dim = options.homology_dim.value_or(std::max(maxdim - 1, 0));
  const PersistenceDiagram full = compute_persistence(f, opt);
  return confidence_band(dm, full, alpha, replicates, maxdim, seed, options.jobs);
}

std::vector<PersistencePair> signal_pairs(const PersistenceDiagram& diagram, const ConfidenceBand& band) {
  std::vector<PersistencePair> out;
  for (const auto& p : diagram.pairs)
    if (p.essential || p.persistence() > 2.0 * band.half_width) out.push_back(p);
  return out;
}

DiameterEstimate estimate_diameter(const std::vector<PersistencePair>& signal, double delta_max) {
  if (signal.empty()) throw Error(Errc::invalid_argument, "signal list is empty");
  DiameterEstimate e;
  e.max_birth = -std::numeric_limits<double>::infinity();
  e.min_death = std::numeric_limits<double>::infinity();
  for (const auto& p : signal) {
    e.max_birth = std::max(e.max_birth, p.birth);
    e.min_death = std::min(e.min_death, p.essential ? delta_max : p.death);
  }
  e.delta = (e.max_birth + e.min_death) / 2.0;
  e.consistent = e.max_birth < e.min_death;
  return e;
}

std::string render_diagram_svg(const PersistenceDiagram& diagram, const ConfidenceBand& band,
                               const SvgOptions& options) {
  const double margin = 48.0;
  const double size = static_cast<double>(options.size);
  const double plot = size - 2 * margin;
  const double top = diagram.delta_max > 0 ? diagram.delta_max * 1.05 : 1.0;
  auto sx = [&](double v) { return margin + v / top * plot; };
  auto sy = [&](double v) { return size - margin - v / top * plot; };
  auto num = [](double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
  };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size << "\" height=\"" << options.size
    << "\" viewBox=\"0 0 " << options.size << ' ' << options.size << "\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << options.size << "\" height=\"" << options.size << "\" fill=\"white\"/>\n";
  if (!options.title.empty())
    o << "<text x=\"" << num(size / 2) << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"14\">" << options.title << "</text>\n";

  // band: {(b, d) : b <= d <= b + 2c}, clipped to the plot
  const double w = 2.0 * band.half_width;
  o << "<polygon class=\"band\" fill=\"#e06666\" fill-opacity=\"0.35\" stroke=\"none\" points=\"" << num(sx(0))
    << ',' << num(sy(0)) << ' ' << num(sx(top)) << ',' << num(sy(top)) << ' ' << num(sx(std::max(0.0, top - w)))
    << ',' << num(sy(top)) << ' ' << num(sx(0)) << ',' << num(sy(std::min(top, w))) << "\"/>\n";
  o << "<line class=\"diagonal\" x1=\"" << num(sx(0)) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(sx(top))
    << "\" y2=\"" << num(sy(top)) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  o << "<rect x=\"" << num(margin) << "\" y=\"" << num(margin) << "\" width=\"" << num(plot) << "\" height=\""
    << num(plot) << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (options.delta) {
    o << "<line class=\"delta\" x1=\"" << num(sx(*options.delta)) << "\" y1=\"" << num(sy(0)) << "\" x2=\""
      << num(sx(*options.delta)) << "\" y2=\"" << num(sy(top)) << "\" stroke=\"#3c78d8\" stroke-dasharray=\"4 3\"/>\n";
  }
  o << "<text x=\"" << num(size / 2) << "\" y=\"" << num(size - 12) << "\" text-anchor=\"middle\" "
    << "font-family=\"sans-serif\" font-size=\"12\">birth</text>\n";
  o << "<text x=\"14\" y=\"" << num(size / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
    << "font-size=\"12\" transform=\"rotate(-90 14 " << num(size / 2) << ")\">death</text>\n";
  o << "<text x=\"" << num(margin) << "\" y=\"" << num(size - margin + 16) << "\" font-family=\"sans-serif\" "
    << "font-size=\"10\">0</text>\n";
  o << "<text x=\"" << num(sx(diagram.delta_max)) << "\" y=\"" << num(size - margin + 16)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << num(diagram.delta_max)
    << "</text>\n";

  const char* colors[] = {"black", "#cc0000", "#1155cc"};
  for (const auto& p : diagram.pairs) {
    const double x = sx(p.birth), y = sy(p.essential ? diagram.delta_max : p.death);
    const char* c = colors[std::min(p.dim, 2)];
    const double r = 4.0;
    if (p.dim == 0) {
      o << "<rect class=\"h0\" x=\"" << num(x - r) << "\" y=\"" << num(y - r) << "\" width=\"" << num(2 * r)
        << "\" height=\"" << num(2 * r) << "\" fill=\"none\" stroke=\"" << c << "\"/>\n";
    } else if (p.dim == 1) {
      o << "<polygon class=\"h1\" points=\"" << num(x) << ',' << num(y - r) << ' ' << num(x - r) << ','
        << num(y + r) << ' ' << num(x + r) << ',' << num(y + r) << "\" fill=\"none\" stroke=\"" << c << "\"/>\n";
    } else {
      o << "<circle class=\"h" << p.dim << "\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r)
        << "\" fill=\"none\" stroke=\"" << c << "\"/>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

} // namespace paretotopo
