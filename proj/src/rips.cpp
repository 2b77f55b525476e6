#include "paretotopo/rips.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <string>

#include "csv_util.hpp"

namespace paretotopo {

std::size_t default_simplex_cap() {
  if (const char* env = std::getenv("PARETOTOPO_SIMPLEX_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultSimplexCap;
}

bool filtration_less(double da, std::span<const Index> va, double db, std::span<const Index> vb) {
  if (da != db) return da < db;
  if (va.size() != vb.size()) return va.size() < vb.size();
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

// Accumulates simplices in flat arrays and sorts them into filtration order.
class FiltrationBuilder {
public:
  FiltrationBuilder(std::size_t num_points, int maxdim, double delta_max, std::size_t cap) : cap_(cap) {
    f_.num_points_ = num_points;
    f_.maxdim_ = maxdim;
    f_.delta_max_ = delta_max;
  }

  void add(std::span<const Index> verts, double diameter) {
    if (f_.diam_.size() >= cap_)
      throw Error(Errc::guard_exceeded, "simplex count exceeds the cap of " + std::to_string(cap_) +
                                            " (set PARETOTOPO_SIMPLEX_CAP or lower maxdim/delta)");
    const std::size_t s = f_.stride();
    for (std::size_t k = 0; k < s; ++k) f_.verts_.push_back(k < verts.size() ? verts[k] : Index{-1});
    f_.diam_.push_back(diameter);
    f_.dim_.push_back(static_cast<std::uint8_t>(verts.size() - 1));
  }

  Filtration finish_sorted() {
    const std::size_t n = f_.diam_.size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [this](std::uint32_t a, std::uint32_t b) {
      return filtration_less(f_.diam_[a], f_.vertices(a), f_.diam_[b], f_.vertices(b));
    });
    return permute(order);
  }

  Filtration finish_as_is() { return std::move(f_); }

private:
  Filtration permute(const std::vector<std::uint32_t>& order) {
    Filtration out;
    out.num_points_ = f_.num_points_;
    out.maxdim_ = f_.maxdim_;
    out.delta_max_ = f_.delta_max_;
    const std::size_t s = f_.stride();
    out.verts_.resize(f_.verts_.size());
    out.diam_.resize(f_.diam_.size());
    out.dim_.resize(f_.dim_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::size_t src = order[i];
      std::copy_n(f_.verts_.begin() + static_cast<std::ptrdiff_t>(src * s), s,
                  out.verts_.begin() + static_cast<std::ptrdiff_t>(i * s));
      out.diam_[i] = f_.diam_[src];
      out.dim_[i] = f_.dim_[src];
    }
    return out;
  }

  Filtration f_;
  std::size_t cap_;
};

Simplex Filtration::simplex(std::size_t i) const {
  auto v = vertices(i);
  return Simplex{{v.begin(), v.end()}, diam_[i]};
}

std::size_t Filtration::prefix_size(double delta) const {
  return static_cast<std::size_t>(std::upper_bound(diam_.begin(), diam_.end(), delta) - diam_.begin());
}

Filtration Filtration::restricted(double delta) const {
  Filtration out;
  const std::size_t n = prefix_size(delta);
  out.maxdim_ = maxdim_;
  out.delta_max_ = delta;
  out.num_points_ = num_points_;
  out.verts_.assign(verts_.begin(), verts_.begin() + static_cast<std::ptrdiff_t>(n * stride()));
  out.diam_.assign(diam_.begin(), diam_.begin() + static_cast<std::ptrdiff_t>(n));
  out.dim_.assign(dim_.begin(), dim_.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

std::size_t Filtration::memory_bytes() const noexcept {
  return verts_.size() * sizeof(Index) + diam_.size() * sizeof(double) + dim_.size();
}

Filtration Filtration::from_simplices(std::span<const Simplex> simplices, std::size_t num_points, int maxdim,
                                      double delta_max) {
  if (maxdim < 0 || maxdim > 10) throw Error(Errc::invalid_argument, "maxdim out of range");
  std::map<std::vector<Index>, std::size_t> seen;
  FiltrationBuilder b(num_points, maxdim, delta_max, std::numeric_limits<std::size_t>::max());
  double last = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const Simplex& s = simplices[i];
    const std::string where = "simplex " + std::to_string(i);
    if (s.vertices.empty() || s.dim() > maxdim) throw Error(Errc::invalid_argument, where + ": bad dimension");
    for (std::size_t k = 0; k < s.vertices.size(); ++k) {
      if (s.vertices[k] < 0 || static_cast<std::size_t>(s.vertices[k]) >= num_points)
        throw Error(Errc::invalid_argument, where + ": vertex out of range");
      if (k && s.vertices[k] <= s.vertices[k - 1])
        throw Error(Errc::invalid_argument, where + ": vertices not strictly increasing");
    }
    if (s.diameter < last) throw Error(Errc::invalid_argument, where + ": diameters not sorted");
    if (s.diameter > delta_max) throw Error(Errc::invalid_argument, where + ": diameter exceeds delta_max");
    last = s.diameter;
    if (s.dim() > 0) {
      for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
        std::vector<Index> face;
        for (std::size_t k = 0; k < s.vertices.size(); ++k)
          if (k != drop) face.push_back(s.vertices[k]);
        if (!seen.contains(face)) throw Error(Errc::invalid_argument, where + ": a facet is missing or comes later");
      }
    }
    if (!seen.emplace(s.vertices, i).second) throw Error(Errc::invalid_argument, where + ": duplicate simplex");
    b.add(s.vertices, s.diameter);
  }
  return b.finish_as_is();
}

namespace {

void check_rips_args(const DistanceMatrix& dm, double delta, int maxdim) {
  if (dm.size() == 0) throw Error(Errc::invalid_argument, "empty distance matrix");
  if (!(delta >= 0.0)) throw Error(Errc::invalid_argument, "delta must be >= 0");
  if (maxdim < 0 || static_cast<std::size_t>(maxdim) > dm.size() - 1 || maxdim > 10)
    throw Error(Errc::invalid_argument, "maxdim " + std::to_string(maxdim) + " out of range [0, " +
                                            std::to_string(std::min<std::size_t>(dm.size() - 1, 10)) + "]");
}

struct CliqueEnumerator {
  const DistanceMatrix& dm;
  double delta;
  int maxdim;
  FiltrationBuilder& out;
  std::vector<Index> simplex;

  void expand(double diam, const std::vector<Index>& candidates) {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const Index w = candidates[c];
      double d = diam;
      for (Index v : simplex) d = std::max(d, dm(static_cast<std::size_t>(v), static_cast<std::size_t>(w)));
      simplex.push_back(w);
      out.add(simplex, d);
      if (static_cast<int>(simplex.size()) <= maxdim) {
        std::vector<Index> next;
        for (std::size_t e = c + 1; e < candidates.size(); ++e)
          if (dm(static_cast<std::size_t>(w), static_cast<std::size_t>(candidates[e])) <= delta)
            next.push_back(candidates[e]);
        if (!next.empty()) expand(d, next);
      }
      simplex.pop_back();
    }
  }
};

Filtration enumerate(const DistanceMatrix& dm, double delta, int maxdim, std::size_t cap) {
  const std::size_t n = dm.size();
  FiltrationBuilder b(n, maxdim, delta, cap);
  for (std::size_t v = 0; v < n; ++v) {
    const Index vi = static_cast<Index>(v);
    b.add(std::span<const Index>(&vi, 1), 0.0);
  }
  if (maxdim >= 1) {
    CliqueEnumerator e{dm, delta, maxdim, b, {}};
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<Index> nbrs;
      for (std::size_t w = v + 1; w < n; ++w)
        if (dm(v, w) <= delta) nbrs.push_back(static_cast<Index>(w));
      e.simplex.assign(1, static_cast<Index>(v));
      e.expand(0.0, nbrs);
    }
  }
  return b.finish_sorted();
}

} // namespace

Filtration build_rips(const DistanceMatrix& dm, double delta, int maxdim, std::size_t simplex_cap) {
  check_rips_args(dm, delta, maxdim);
  return enumerate(dm, delta, maxdim, simplex_cap);
}

Filtration build_filtration(const DistanceMatrix& dm, int maxdim, std::optional<double> delta_max,
                            std::size_t simplex_cap) {
  const double cap = delta_max.value_or(dm.max());
  check_rips_args(dm, cap, maxdim);
  return enumerate(dm, cap, maxdim, simplex_cap);
}

std::vector<std::size_t> simplex_count_profile(const Filtration& f) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(f.maxdim()) + 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) ++counts[static_cast<std::size_t>(f.dim(i))];
  return counts;
}

void write_filtration_csv(const std::filesystem::path& path, const Filtration& f) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, path.string() + ": cannot open for writing");
  out << "dim,diameter";
  for (int k = 0; k <= f.maxdim(); ++k) out << ",v" << k;
  out << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << f.dim(i) << ',' << csv::format_double(f.diameter(i));
    for (Index v : f.vertices(i)) out << ',' << v;
    out << '\n';
  }
}

} // namespace paretotopo
