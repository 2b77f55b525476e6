#include "paretotopo/report.hpp"

#include "json.hpp"

namespace paretotopo {

using nlohmann::ordered_json;

std::string band_method_name(BandMethod m) { return m == BandMethod::hausdorff ? "hausdorff" : "bottleneck"; }

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw Error(Errc::invalid_argument, "config: '" + key + "' " + what);
}

double number(const ordered_json& v, const std::string& key) {
  if (!v.is_number()) bad(key, "must be a number");
  return v.get<double>();
}

long long integer(const ordered_json& v, const std::string& key) {
  if (!v.is_number_integer()) bad(key, "must be an integer");
  return v.get<long long>();
}

bool boolean(const ordered_json& v, const std::string& key) {
  if (!v.is_boolean()) bad(key, "must be true or false");
  return v.get<bool>();
}

ordered_json config_object(const AnalysisConfig& c) {
  ordered_json o;
  switch (c.subsets) {
  case SubsetMode::full: o["subsets"] = "full"; break;
  case SubsetMode::all: o["subsets"] = "all"; break;
  case SubsetMode::up_to: o["subsets"] = c.max_subset_size; break;
  }
  o["alpha"] = c.alpha;
  o["bootstrap"] = c.bootstrap;
  o["maxdim"] = c.maxdim;
  o["delta"] = c.delta ? ordered_json(*c.delta) : ordered_json(nullptr);
  o["delta_max"] = c.delta_max ? ordered_json(*c.delta_max) : ordered_json("auto");
  o["band"] = band_method_name(c.band);
  o["s2"] = c.run_s2;
  o["pair_dim"] = c.s2.pair_dim ? ordered_json(*c.s2.pair_dim) : ordered_json("all");
  o["eps"] = c.s2.eps;
  o["max_witnesses"] = c.s2.max_witnesses;
  o["seed"] = c.seed;
  o["jobs"] = c.jobs;
  return o;
}

ordered_json pair_json(const PersistencePair& p) { return ordered_json::array({p.dim, p.birth, p.death, p.essential}); }

ordered_json subset_names(const std::vector<int>& subset) {
  ordered_json a = ordered_json::array();
  for (int i : subset) a.push_back("f" + std::to_string(i + 1));
  return a;
}

ordered_json result_json(const SubsetResult& r, const AnalysisConfig& config, const ReportOptions& opt) {
  ordered_json o;
  o["objectives"] = subset_names(r.subset);
  o["points"] = r.num_points;
  if (r.skipped) {
    o["status"] = "skipped";
    o["reason"] = *r.skipped;
    return o;
  }
  o["status"] = "ok";
  o["delta_max"] = r.delta_max;
  o["simplex_counts"] = r.simplex_counts;

  ordered_json band;
  band["method"] = band_method_name(config.band);
  band["alpha"] = r.band.alpha;
  band["replicates"] = r.band.replicates;
  band["seed"] = r.band.seed;
  band["half_width"] = r.band.half_width;
  o["band"] = band;

  if (opt.diagram) {
    ordered_json d;
    d["homology_dims"] = r.diagram.max_dim;
    ordered_json pairs = ordered_json::array();
    for (const auto& p : r.diagram.pairs) pairs.push_back(pair_json(p));
    d["pairs"] = pairs;
    d["zero_persistence"] = r.diagram.zero_persistence;
    o["diagram"] = d;
  }
  ordered_json sig = ordered_json::array();
  for (const auto& p : r.signal) sig.push_back(pair_json(p));
  o["signal"] = sig;

  ordered_json est;
  est["delta"] = r.estimate->delta;
  est["max_birth"] = r.estimate->max_birth;
  est["min_death"] = r.estimate->min_death;
  est["consistent"] = r.estimate->consistent;
  o["estimate"] = est;
  o["delta"] = r.delta;
  o["delta_source"] = r.delta_overridden ? "override" : "estimate";
  ordered_json warnings = ordered_json::array();
  if (!r.estimate->consistent)
    warnings.push_back("inconsistent diameter estimate: max birth >= min death among signal pairs");
  o["warnings"] = warnings;

  ordered_json s1;
  s1["violated"] = r.s1.violated;
  s1["betti"] = r.s1.betti;
  s1["reasons"] = r.s1.reasons;
  o["s1"] = s1;

  if (r.s2) {
    const S2Verdict& v = *r.s2;
    ordered_json s2;
    s2["violated"] = v.violated;
    s2["pair_dims"] = v.dims;
    s2["simplices"] = v.simplices;
    s2["pairs_total"] = v.pairs_total;
    s2["pairs_checked"] = v.pairs_checked;
    s2["lp_solves"] = v.lp_solves;
    s2["inconclusive_pairs"] = v.inconclusive_pairs;
    s2["degenerate_images"] = v.degenerate_images;
    s2["early_stop"] = v.early_stop;
    ordered_json ws = ordered_json::array();
    for (const auto& w : v.witnesses) {
      ordered_json wj;
      wj["sigma"] = w.sigma;
      wj["tau"] = w.tau;
      wj["a"] = w.a;
      wj["b"] = w.b;
      wj["t"] = w.t;
      ws.push_back(wj);
    }
    s2["witnesses"] = ws;
    o["s2"] = s2;
  } else {
    o["s2"] = nullptr;
  }

  if (opt.timings) {
    ordered_json t;
    t["distances"] = r.times.distances;
    t["filtration"] = r.times.filtration;
    t["persistence"] = r.times.persistence;
    t["band"] = r.times.band;
    t["s1"] = r.times.s1;
    t["s2"] = r.times.s2;
    o["timings"] = t;
  }
  return o;
}

} // namespace

AnalysisRequest parse_analysis_request(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text.empty() ? std::string_view("{}") : text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(Errc::parse, std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::parse, "config: expected a JSON object");

  AnalysisRequest req;
  AnalysisConfig& c = req.config;
  for (const auto& [key, v] : j.items()) {
    if (key == "subsets") {
      if (v.is_string() && v == "full") c.subsets = SubsetMode::full;
      else if (v.is_string() && v == "all") c.subsets = SubsetMode::all;
      else if (v.is_number_integer() && v.get<long long>() >= 1) {
        c.subsets = SubsetMode::up_to;
        c.max_subset_size = static_cast<int>(v.get<long long>());
      } else bad(key, "must be \"full\", \"all\" or a positive integer");
    } else if (key == "alpha") {
      c.alpha = number(v, key);
    } else if (key == "bootstrap") {
      c.bootstrap = static_cast<int>(integer(v, key));
    } else if (key == "maxdim") {
      c.maxdim = static_cast<int>(integer(v, key));
    } else if (key == "delta") {
      if (v.is_null()) c.delta.reset();
      else c.delta = number(v, key);
    } else if (key == "delta_max") {
      if (v.is_string() && v == "auto") c.delta_max.reset();
      else c.delta_max = number(v, key);
    } else if (key == "band") {
      if (v == "hausdorff") c.band = BandMethod::hausdorff;
      else if (v == "bottleneck") c.band = BandMethod::bottleneck;
      else bad(key, "must be \"hausdorff\" or \"bottleneck\"");
    } else if (key == "s2") {
      c.run_s2 = boolean(v, key);
    } else if (key == "pair_dim") {
      if (v.is_string() && v == "all") c.s2.pair_dim.reset();
      else c.s2.pair_dim = static_cast<int>(integer(v, key));
    } else if (key == "eps") {
      c.s2.eps = number(v, key);
    } else if (key == "max_witnesses") {
      const long long n = integer(v, key);
      if (n < 0) bad(key, "must be >= 0");
      c.s2.max_witnesses = static_cast<std::size_t>(n);
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) bad(key, "must be a non-negative integer");
      c.seed = v.get<std::uint64_t>();
    } else if (key == "jobs") {
      c.jobs = static_cast<int>(integer(v, key));
      if (c.jobs < 1) bad(key, "must be >= 1");
    } else if (key == "timings") {
      req.report.timings = boolean(v, key);
    } else if (key == "diagram") {
      req.report.diagram = boolean(v, key);
    } else if (key == "run") {
      if (!v.is_object()) bad(key, "must be an object");
      req.report.run = v.dump();
    } else {
      bad(key, "is not a recognised option");
    }
  }
  return req;
}

std::string config_to_json(const AnalysisConfig& config) { return config_object(config).dump(); }

std::string report_to_json(const SimplicityReport& report, const ReportOptions& options) {
  ordered_json doc;
  doc["format"] = "paretotopo-report";
  doc["version"] = 1;
  ordered_json run;
  try {
    run = ordered_json::parse(options.run);
  } catch (const ordered_json::parse_error&) {
    throw Error(Errc::invalid_argument, "run description is not valid JSON");
  }
  doc["run"] = run;
  doc["config"] = config_object(report.config);
  ordered_json input;
  input["points"] = report.num_points;
  input["dim"] = report.dim;
  input["objectives"] = report.num_objectives;
  doc["input"] = input;
  ordered_json results = ordered_json::array();
  for (const auto& r : report.results) results.push_back(result_json(r, report.config, options));
  doc["results"] = results;
  return doc.dump(2) + "\n";
}

} // namespace paretotopo
