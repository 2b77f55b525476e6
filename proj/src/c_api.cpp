#include "paretotopo/paretotopo.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "json.hpp"
#include "paretotopo/experiments.hpp"
#include "paretotopo/report.hpp"

using namespace paretotopo;
using nlohmann::json;

struct pt_cloud {
  PointCloud pc;
};

struct pt_report {
  SimplicityReport report;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

pt_status fail(pt_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs fn, translating exceptions to status codes.
template <class Fn>
pt_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PT_OK;
  } catch (const Error& e) {
    return fail(static_cast<pt_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PT_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PT_INTERNAL, e.what());
  }
}

void require(bool ok, const char* msg) {
  if (!ok) throw Error(Errc::invalid_argument, msg);
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

json parse_options(const char* text) {
  if (!text || !*text) return json::object();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, std::string("options: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::parse, "options: expected a JSON object");
  return j;
}

[[noreturn]] void bad_option(const std::string& key, const std::string& what) {
  throw Error(Errc::invalid_argument, "options: '" + key + "' " + what);
}

std::uint64_t unsigned_option(const json& v, const std::string& key) {
  if (!v.is_number_unsigned()) bad_option(key, "must be a non-negative integer");
  return v.get<std::uint64_t>();
}

double number_option(const json& v, const std::string& key) {
  if (!v.is_number()) bad_option(key, "must be a number");
  return v.get<double>();
}

Problem problem_option(const json& v) {
  if (!v.is_string()) bad_option("problem", "must be a string");
  return parse_problem(v.get<std::string>());
}

const SubsetResult& result_at(const pt_report* r, size_t index) {
  require(r != nullptr, "report is null");
  if (index >= r->report.results.size()) throw Error(Errc::invalid_argument, "result index out of range");
  const SubsetResult& s = r->report.results[index];
  if (s.skipped) throw Error(Errc::invalid_argument, "subset was skipped: " + *s.skipped);
  return s;
}

} // namespace

extern "C" {

const char* pt_last_error(void) { return g_last_error.c_str(); }

const char* pt_status_name(pt_status status) {
  if (status == PT_OK) return "ok";
  if (status == PT_INTERNAL) return "internal";
  if (status >= PT_INVALID_ARGUMENT && status <= PT_INSUFFICIENT_SAMPLE) return errc_name(static_cast<Errc>(status));
  return "unknown";
}

const char* pt_version(void) { return "0.1.0"; }

pt_status pt_cloud_load(const char* x_csv, const char* f_csv, pt_cloud** out) {
  return guarded([&] {
    require(x_csv && out, "null argument");
    std::optional<std::filesystem::path> f;
    if (f_csv) f = f_csv;
    *out = new pt_cloud{load_point_cloud(x_csv, f)};
  });
}

pt_status pt_cloud_sample(const char* problem, size_t n, uint64_t seed, double oversample, pt_cloud** out) {
  return guarded([&] {
    require(problem && out, "null argument");
    SampleOptions opt;
    if (oversample > 0) opt.oversample = oversample;
    *out = new pt_cloud{sample_pareto(parse_problem(problem), n, seed, opt)};
  });
}

pt_status pt_cloud_from_arrays(const double* x, size_t n, size_t dim, const double* f, size_t m, pt_cloud** out) {
  return guarded([&] {
    require(x && out, "null argument");
    require(m == 0 || f, "objective array is null");
    Matrix px(n, dim, std::vector<double>(x, x + n * dim));
    std::optional<Matrix> pf;
    if (m > 0) pf = Matrix(n, m, std::vector<double>(f, f + n * m));
    *out = new pt_cloud{PointCloud::make(std::move(px), std::move(pf))};
  });
}

pt_status pt_cloud_save(const pt_cloud* cloud, const char* prefix) {
  return guarded([&] {
    require(cloud && prefix, "null argument");
    const std::string p = prefix;
    write_matrix_csv(p + "_x.csv", cloud->pc.points(), 'x');
    if (cloud->pc.has_objectives()) write_matrix_csv(p + "_f.csv", cloud->pc.objectives(), 'f');
  });
}

size_t pt_cloud_size(const pt_cloud* cloud) { return cloud ? cloud->pc.size() : 0; }
size_t pt_cloud_dim(const pt_cloud* cloud) { return cloud ? cloud->pc.dim() : 0; }
size_t pt_cloud_num_objectives(const pt_cloud* cloud) { return cloud ? cloud->pc.num_objectives() : 0; }
void pt_cloud_free(pt_cloud* cloud) { delete cloud; }

pt_status pt_analyze(const pt_cloud* cloud, const char* config_json, pt_report** out) {
  return guarded([&] {
    require(cloud && out, "null argument");
    const AnalysisRequest req = parse_analysis_request(config_json ? config_json : "");
    auto r = std::make_unique<pt_report>();
    r->report = analyze(cloud->pc, req.config);
    r->json = report_to_json(r->report, req.report);
    *out = r.release();
  });
}

const char* pt_report_json(const pt_report* report) { return report ? report->json.c_str() : ""; }
size_t pt_report_result_count(const pt_report* report) { return report ? report->report.results.size() : 0; }

pt_status pt_report_write_svg(const pt_report* report, size_t index, const char* path) {
  return guarded([&] {
    require(path != nullptr, "null path");
    const SubsetResult& s = result_at(report, index);
    SvgOptions opt;
    opt.delta = s.delta;
    std::string title = "objectives";
    for (int i : s.subset) title += " f" + std::to_string(i + 1);
    opt.title = title;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(Errc::io, std::string("cannot write ") + path);
    os << render_diagram_svg(s.diagram, s.band, opt);
    if (!os) throw Error(Errc::io, std::string("write failed: ") + path);
  });
}

pt_status pt_report_write_diagram_csv(const pt_report* report, size_t index, const char* path) {
  return guarded([&] {
    require(path != nullptr, "null path");
    write_diagram_csv(path, result_at(report, index).diagram);
  });
}

void pt_report_free(pt_report* report) { delete report; }

pt_status pt_run_trials(const char* options_json, char** summary_csv, char** rows_csv) {
  return guarded([&] {
    require(summary_csv || rows_csv, "no output requested");
    const json j = parse_options(options_json);
    TrialConfig c;
    for (const auto& [key, v] : j.items()) {
      if (key == "problem") c.problem = problem_option(v);
      else if (key == "trials") c.trials = static_cast<int>(unsigned_option(v, key));
      else if (key == "base_seed") c.base_seed = unsigned_option(v, key);
      else if (key == "n") c.n_points = unsigned_option(v, key);
      else if (key == "oversample") c.sample.oversample = number_option(v, key);
      else if (key == "jobs") c.jobs = static_cast<int>(unsigned_option(v, key));
      else if (key == "analysis") {
        if (!v.is_object()) bad_option(key, "must be an object");
        c.analysis = parse_analysis_request(v.dump()).config;
      } else bad_option(key, "is not a recognised option");
    }
    require(c.jobs >= 1, "options: 'jobs' must be >= 1");
    const TrialsResult r = run_trials(c);
    const std::string s = trial_summary_csv(r.summary), rows = trial_rows_csv(r.rows);
    char* ps = summary_csv ? dup_string(s) : nullptr;
    try {
      if (rows_csv) *rows_csv = dup_string(rows);
    } catch (...) {
      std::free(ps);
      throw;
    }
    if (summary_csv) *summary_csv = ps;
  });
}

pt_status pt_run_bench(const char* options_json, char** csv) {
  return guarded([&] {
    require(csv != nullptr, "null argument");
    const json j = parse_options(options_json);
    BenchConfig c;
    for (const auto& [key, v] : j.items()) {
      if (key == "problem") c.problem = problem_option(v);
      else if (key == "n") {
        if (!v.is_array()) bad_option(key, "must be an array");
        c.n_list.clear();
        for (const auto& x : v) c.n_list.push_back(unsigned_option(x, key));
      } else if (key == "maxdim") {
        if (!v.is_array()) bad_option(key, "must be an array");
        c.maxdim_list.clear();
        for (const auto& x : v) c.maxdim_list.push_back(static_cast<int>(unsigned_option(x, key)));
      } else if (key == "delta_max") {
        if (v.is_string() && v == "auto") c.delta_max.reset();
        else c.delta_max = number_option(v, key);
      } else if (key == "repeats") c.repeats = static_cast<int>(unsigned_option(v, key));
      else if (key == "seed") c.seed = unsigned_option(v, key);
      else if (key == "simplex_cap") c.simplex_cap = unsigned_option(v, key);
      else bad_option(key, "is not a recognised option");
    }
    *csv = dup_string(bench_csv(run_bench(c), c));
  });
}

void pt_string_free(char* s) { std::free(s); }

} // extern "C"
