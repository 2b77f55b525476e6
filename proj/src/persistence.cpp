#include "paretotopo/persistence.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <string>

#include "csv_util.hpp"

namespace paretotopo {

std::vector<PersistencePair> PersistenceDiagram::in_dim(int dim) const {
  std::vector<PersistencePair> out;
  for (const auto& p : pairs)
    if (p.dim == dim) out.push_back(p);
  return out;
}

std::size_t PersistenceDiagram::count(int dim, bool essential) const {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [&](const PersistencePair& p) {
    return p.dim == dim && p.essential == essential;
  }));
}

namespace {

using Pos = std::uint32_t;
constexpr std::int32_t kAbsent = -1;

class Binomials {
public:
  Binomials(std::size_t n, std::size_t k) : k_(k + 1), table_((n + 1) * (k + 1), 0) {
    for (std::size_t i = 0; i <= n; ++i) {
      at(i, 0) = 1;
      for (std::size_t j = 1; j <= k && j <= i; ++j) {
        const std::uint64_t a = at(i - 1, j - 1), b = j <= i - 1 ? at(i - 1, j) : 0;
        if (a > UINT64_MAX - b) throw Error(Errc::numerical, "binomial overflow in simplex indexing");
        at(i, j) = a + b;
      }
    }
  }
  std::uint64_t operator()(std::size_t n, std::size_t k) const { return k > n ? 0 : table_[n * k_ + k]; }

private:
  std::uint64_t& at(std::size_t n, std::size_t k) { return table_[n * k_ + k]; }
  std::size_t k_;
  std::vector<std::uint64_t> table_;
};

// Maps combinatorial (colex) indices of the simplices of one dimension to
// their filtration positions.
class PositionIndex {
public:
  PositionIndex(const Filtration& f, int dim, const Binomials& binom) : binom_(binom) {
    const std::uint64_t universe = binom(f.num_points(), static_cast<std::size_t>(dim) + 1);
    dense_ = universe <= (std::uint64_t{1} << 25);
    if (dense_) table_.assign(universe, kAbsent);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f.dim(i) != dim) continue;
      const std::uint64_t key = index_of(f.vertices(i));
      if (dense_)
        table_[key] = static_cast<std::int32_t>(i);
      else
        sparse_.emplace_back(key, static_cast<Pos>(i));
    }
    if (!dense_) std::sort(sparse_.begin(), sparse_.end());
  }

  std::uint64_t index_of(std::span<const Index> sorted_vertices) const {
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < sorted_vertices.size(); ++j)
      key += binom_(static_cast<std::size_t>(sorted_vertices[j]), j + 1);
    return key;
  }

  std::int32_t find(std::uint64_t key) const {
    if (dense_) return table_[key];
    auto it = std::lower_bound(sparse_.begin(), sparse_.end(), std::make_pair(key, Pos{0}));
    return (it != sparse_.end() && it->first == key) ? static_cast<std::int32_t>(it->second) : kAbsent;
  }

private:
  const Binomials& binom_;
  bool dense_ = false;
  std::vector<std::int32_t> table_;
  std::vector<std::pair<std::uint64_t, Pos>> sparse_;
};

// Positions of the cofaces of a simplex, ascending.
void coboundary(const Filtration& f, std::size_t pos, const PositionIndex& cofaces, const Binomials& binom,
                std::vector<Pos>& out) {
  out.clear();
  auto v = f.vertices(pos);
  const std::size_t k = v.size();
  // low[j]: contribution of v[0..j) at their own rank; high[j]: v[j..k) shifted up one rank.
  std::vector<std::uint64_t> low(k + 1, 0), high(k + 1, 0);
  for (std::size_t j = 0; j < k; ++j) low[j + 1] = low[j] + binom(static_cast<std::size_t>(v[j]), j + 1);
  for (std::size_t j = k; j-- > 0;) high[j] = high[j + 1] + binom(static_cast<std::size_t>(v[j]), j + 2);
  std::size_t split = 0;
  for (std::size_t w = 0; w < f.num_points(); ++w) {
    while (split < k && static_cast<std::size_t>(v[split]) < w) ++split;
    if (split < k && static_cast<std::size_t>(v[split]) == w) continue;
    const std::uint64_t key = low[split] + binom(w, split + 1) + high[split];
    const std::int32_t p = cofaces.find(key);
    if (p != kAbsent) out.push_back(static_cast<Pos>(p));
  }
  std::sort(out.begin(), out.end());
}

void add_mod2(std::vector<Pos>& col, const std::vector<Pos>& other, std::vector<Pos>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(scratch));
  col.swap(scratch);
}

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Index find(Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
};

class Reducer {
public:
  Reducer(const Filtration& f, const PersistenceOptions& opt, PersistenceDiagram& out)
      : f_(f), opt_(opt), out_(out), cleared_(f.size(), false) {}

  void record(int dim, double birth, double death) {
    if (birth == death) {
      ++out_.zero_persistence[static_cast<std::size_t>(dim)];
      if (!opt_.keep_zero_persistence) return;
    }
    out_.pairs.push_back({dim, birth, death, false});
  }
  void record_essential(int dim, double birth) { out_.pairs.push_back({dim, birth, f_.delta_max(), true}); }

  void dimension_zero() {
    const std::size_t n = f_.num_points();
    std::vector<std::int64_t> vertex_pos(n, -1);
    for (std::size_t i = 0; i < f_.size(); ++i)
      if (f_.dim(i) == 0) vertex_pos[static_cast<std::size_t>(f_.vertices(i)[0])] = static_cast<std::int64_t>(i);
    UnionFind uf(n);
    // Each root is the oldest vertex of its component (elder rule).
    for (std::size_t i = 0; i < f_.size(); ++i) {
      if (f_.dim(i) != 1) continue;
      auto e = f_.vertices(i);
      Index a = uf.find(e[0]), b = uf.find(e[1]);
      if (a == b) continue;
      if (vertex_pos[static_cast<std::size_t>(a)] > vertex_pos[static_cast<std::size_t>(b)]) std::swap(a, b);
      record(0, f_.diameter(static_cast<std::size_t>(vertex_pos[static_cast<std::size_t>(b)])), f_.diameter(i));
      uf.parent[static_cast<std::size_t>(b)] = a;
      cleared_[i] = true;
    }
    for (std::size_t v = 0; v < n; ++v)
      if (vertex_pos[v] >= 0 && uf.find(static_cast<Index>(v)) == static_cast<Index>(v))
        record_essential(0, f_.diameter(static_cast<std::size_t>(vertex_pos[v])));
  }

  void top_dimension(int dim) {
    for (std::size_t i = 0; i < f_.size(); ++i)
      if (f_.dim(i) == dim && !cleared_[i]) record_essential(dim, f_.diameter(i));
  }

  // Reduces the coboundary columns of dim-simplices in reverse filtration order.
  void dimension(int dim, const Binomials& binom) {
    PositionIndex cofaces(f_, dim + 1, binom);
    std::vector<std::int32_t> owner(f_.size(), kAbsent);
    std::vector<std::vector<Pos>> reduced;
    std::vector<Pos> col, scratch;
    for (std::size_t i = f_.size(); i-- > 0;) {
      if (f_.dim(i) != dim || cleared_[i]) continue;
      coboundary(f_, i, cofaces, binom, col);
      for (;;) {
        if (col.empty()) {
          record_essential(dim, f_.diameter(i));
          break;
        }
        const Pos pivot = col.front();
        const std::int32_t o = owner[pivot];
        if (o != kAbsent) {
          add_mod2(col, reduced[static_cast<std::size_t>(o)], scratch);
          continue;
        }
        owner[pivot] = static_cast<std::int32_t>(reduced.size());
        reduced.push_back(col);
        cleared_[pivot] = true;
        record(dim, f_.diameter(i), f_.diameter(pivot));
        break;
      }
    }
  }

private:
  const Filtration& f_;
  const PersistenceOptions& opt_;
  PersistenceDiagram& out_;
  std::vector<bool> cleared_;
};

} // namespace

PersistenceDiagram compute_persistence(const Filtration& filtration, const PersistenceOptions& options) {
  const int top = options.max_dim.value_or(filtration.maxdim());
  if (top < 0 || top > filtration.maxdim())
    throw Error(Errc::invalid_argument, "homology dimension " + std::to_string(top) + " outside [0, " +
                                            std::to_string(filtration.maxdim()) + "]");
  PersistenceDiagram d;
  d.delta_max = filtration.delta_max();
  d.max_dim = top;
  d.zero_persistence.assign(static_cast<std::size_t>(top) + 1, 0);
  if (filtration.empty()) return d;

  Reducer r(filtration, options, d);
  if (filtration.maxdim() == 0) {
    r.top_dimension(0);
    return d;
  }
  r.dimension_zero();
  if (top >= 1) {
    Binomials binom(filtration.num_points(), static_cast<std::size_t>(filtration.maxdim()) + 1);
    for (int k = 1; k <= top; ++k) {
      if (k == filtration.maxdim())
        r.top_dimension(k);
      else
        r.dimension(k, binom);
    }
  }
  return d;
}

std::vector<int> betti_at(const PersistenceDiagram& diagram, double delta) {
  if (!(delta >= 0.0) || delta > diagram.delta_max)
    throw Error(Errc::invalid_argument, "delta outside [0, delta_max]");
  std::vector<int> betti(static_cast<std::size_t>(diagram.max_dim) + 1, 0);
  for (const auto& p : diagram.pairs) {
    const bool alive = p.essential ? p.birth <= delta : (p.birth <= delta && delta < p.death);
    if (alive) ++betti[static_cast<std::size_t>(p.dim)];
  }
  return betti;
}

namespace {

std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> cols) {
  std::size_t rank = 0;
  std::map<std::size_t, std::size_t> pivot_col; // lowest set bit -> reduced column
  std::vector<std::vector<std::uint64_t>> basis;
  for (auto& c : cols) {
    for (;;) {
      std::size_t low = SIZE_MAX;
      for (std::size_t w = c.size(); w-- > 0;)
        if (c[w]) {
          low = w * 64 + (63 - static_cast<std::size_t>(__builtin_clzll(c[w])));
          break;
        }
      if (low == SIZE_MAX) break;
      auto it = pivot_col.find(low);
      if (it == pivot_col.end()) {
        pivot_col.emplace(low, basis.size());
        basis.push_back(c);
        ++rank;
        break;
      }
      const auto& b = basis[it->second];
      for (std::size_t w = 0; w < c.size(); ++w) c[w] ^= b[w];
    }
  }
  return rank;
}

} // namespace

std::vector<int> homology_rank_oracle(const Filtration& complex, std::size_t max_simplices) {
  if (complex.size() > max_simplices)
    throw Error(Errc::guard_exceeded, "rank oracle limited to " + std::to_string(max_simplices) + " simplices");
  const int top = complex.maxdim();
  std::vector<std::map<std::vector<Index>, std::size_t>> index(static_cast<std::size_t>(top) + 1);
  for (std::size_t i = 0; i < complex.size(); ++i) {
    auto v = complex.vertices(i);
    auto& m = index[static_cast<std::size_t>(complex.dim(i))];
    m.emplace(std::vector<Index>(v.begin(), v.end()), m.size());
  }
  // rank of the boundary map from dimension k to k-1
  std::vector<std::size_t> rank(static_cast<std::size_t>(top) + 2, 0);
  for (int k = 1; k <= top; ++k) {
    const auto& rows = index[static_cast<std::size_t>(k - 1)];
    const std::size_t words = (rows.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> cols;
    for (const auto& [verts, _] : index[static_cast<std::size_t>(k)]) {
      std::vector<std::uint64_t> c(words, 0);
      for (std::size_t drop = 0; drop < verts.size(); ++drop) {
        std::vector<Index> face;
        for (std::size_t j = 0; j < verts.size(); ++j)
          if (j != drop) face.push_back(verts[j]);
        const std::size_t r = rows.at(face);
        c[r / 64] ^= std::uint64_t{1} << (r % 64);
      }
      cols.push_back(std::move(c));
    }
    rank[static_cast<std::size_t>(k)] = gf2_rank(std::move(cols));
  }
  std::vector<int> betti(static_cast<std::size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) {
    const std::size_t n = index[static_cast<std::size_t>(k)].size();
    betti[static_cast<std::size_t>(k)] =
        static_cast<int>(n - rank[static_cast<std::size_t>(k)] - rank[static_cast<std::size_t>(k) + 1]);
  }
  return betti;
}

void write_diagram_csv(const std::filesystem::path& path, const PersistenceDiagram& d) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, path.string() + ": cannot open for writing");
  out << "dim,birth,death,essential\n";
  for (const auto& p : d.pairs)
    out << p.dim << ',' << csv::format_double(p.birth) << ',' << csv::format_double(p.death) << ','
        << (p.essential ? 1 : 0) << '\n';
}

} // namespace paretotopo
