// Command-line front end. Talks to the library only through paretotopo.h.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "paretotopo/paretotopo.h"

using nlohmann::ordered_json;

namespace {

struct CliError {
  std::string status;
  std::string message;
  int exit_code = 1;
};

void check(pt_status s) {
  if (s != PT_OK) throw CliError{pt_status_name(s), pt_last_error()};
}

void usage_error(const std::string& msg) { throw CliError{"usage", msg, 2}; }

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw CliError{"io", "cannot write " + path};
  os << text;
  if (!os) throw CliError{"io", "write failed: " + path};
}

// Analysis flags shared by analyze and trials. Only flags given on the
// command line reach the library; the rest keep library defaults.
struct AnalysisFlags {
  std::optional<double> alpha, delta, eps;
  std::optional<int> bootstrap, maxdim, max_witnesses;
  std::optional<std::string> delta_max, band, pair_dim, subsets;
  std::optional<bool> s2;
  bool timings = false;
  bool no_diagram = false;

  void add(CLI::App* app) {
    app->add_option("--alpha", alpha, "Confidence level of the band (default 0.05)");
    app->add_option("--bootstrap", bootstrap, "Bootstrap replicates B (default 100)");
    app->add_option("--maxdim", maxdim, "Largest simplex dimension (default 2)");
    app->add_option("--delta", delta, "Fixed Rips diameter instead of the estimate");
    app->add_option("--delta-max", delta_max, "Filtration cap: number or 'auto' (default 1.0)");
    app->add_option("--band", band, "Band method: hausdorff or bottleneck")
        ->check(CLI::IsMember({"hausdorff", "bottleneck"}));
    app->add_option("--pair-dim", pair_dim, "Simplex dimension for S2: k or 'all' (default 1)");
    app->add_option("--subsets", subsets, "Objective subsets: full, all or k (default full)");
    app->add_option("--eps", eps, "Strictness margin of the S2 LP");
    app->add_option("--max-witnesses", max_witnesses, "Stop S2 after this many witnesses (default 16)");
    app->add_flag("--s2,!--no-s2", s2, "Run or skip the S2 test");
    app->add_flag("--timings", timings, "Include wall times in the report");
    app->add_flag("--no-diagram", no_diagram, "Omit the full diagram from the report");
  }

  ordered_json to_json() const {
    ordered_json j = ordered_json::object();
    if (subsets) {
      if (*subsets == "full" || *subsets == "all") j["subsets"] = *subsets;
      else j["subsets"] = parse_int("--subsets", *subsets);
    }
    if (alpha) j["alpha"] = *alpha;
    if (bootstrap) j["bootstrap"] = *bootstrap;
    if (maxdim) j["maxdim"] = *maxdim;
    if (delta) j["delta"] = *delta;
    if (delta_max) {
      if (*delta_max == "auto") j["delta_max"] = "auto";
      else j["delta_max"] = parse_double("--delta-max", *delta_max);
    }
    if (band) j["band"] = *band;
    if (s2) j["s2"] = *s2;
    if (pair_dim) {
      if (*pair_dim == "all") j["pair_dim"] = "all";
      else j["pair_dim"] = parse_int("--pair-dim", *pair_dim);
    }
    if (eps) j["eps"] = *eps;
    if (max_witnesses) j["max_witnesses"] = *max_witnesses;
    if (timings) j["timings"] = true;
    if (no_diagram) j["diagram"] = false;
    return j;
  }

  static long long parse_int(const std::string& flag, const std::string& s) {
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(s, &pos);
      if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    usage_error(flag + ": expected an integer, got '" + s + "'");
    return 0;
  }

  static double parse_double(const std::string& flag, const std::string& s) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    usage_error(flag + ": expected a number, got '" + s + "'");
    return 0;
  }
};

template <class T>
std::vector<T> parse_list(const std::string& flag, const std::string& s) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<T>(AnalysisFlags::parse_int(flag, item)));
  if (out.empty()) usage_error(flag + ": empty list");
  return out;
}

ordered_json argv_json(int argc, char** argv) {
  ordered_json a = ordered_json::array();
  for (int i = 1; i < argc; ++i) a.push_back(argv[i]);
  return a;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological simplicity analysis of sampled Pareto sets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pt_version());

  const CLI::IsMember kProblems({"med", "gapped-med", "gapped_med", "dtlz5", "dtlz7"});

  // sample
  auto* sample = app.add_subcommand("sample", "Write a Pareto-set sample as <prefix>_x.csv and <prefix>_f.csv");
  std::string s_problem, s_out;
  std::size_t s_n = 300;
  std::uint64_t s_seed = 1;
  double s_oversample = 0.0;
  sample->add_option("--problem", s_problem, "med, gapped-med, dtlz5 or dtlz7")->required()->check(kProblems);
  sample->add_option("--n", s_n, "Number of points")->capture_default_str();
  sample->add_option("--seed", s_seed, "Random seed")->capture_default_str();
  sample->add_option("--out", s_out, "Output prefix (default: problem name)");
  sample->add_option("--oversample", s_oversample, "DTLZ7 candidates per point (default 64)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Run the S1/S2 simplicity tests on a sample");
  std::string a_x, a_f, a_out = "-", a_svg, a_csv;
  std::uint64_t a_seed = 0;
  int a_jobs = 1;
  AnalysisFlags a_flags;
  analyze->add_option("--x", a_x, "Decision CSV (x1..xn)")->required();
  analyze->add_option("--f", a_f, "Objective CSV (f1..fm)");
  analyze->add_option("--out", a_out, "Report path ('-' for stdout)")->capture_default_str();
  analyze->add_option("--svg", a_svg, "Persistence diagram SVG of the full objective set");
  analyze->add_option("--diagram-csv", a_csv, "Persistence pairs CSV of the full objective set");
  analyze->add_option("--seed", a_seed, "Bootstrap seed")->capture_default_str();
  analyze->add_option("--jobs", a_jobs, "Worker threads")->capture_default_str();
  a_flags.add(analyze);

  // trials
  auto* trials = app.add_subcommand("trials", "Repeat sample + analyze and aggregate the verdicts");
  std::string t_problem, t_out = "-", t_rows;
  int t_trials = 10, t_jobs = 1;
  std::uint64_t t_seed = 1;
  std::size_t t_n = 300;
  double t_oversample = 0.0;
  AnalysisFlags t_flags;
  trials->add_option("--problem", t_problem, "med, gapped-med, dtlz5 or dtlz7")->required()->check(kProblems);
  trials->add_option("--trials", t_trials, "Number of trials")->capture_default_str();
  trials->add_option("--seed,--base-seed", t_seed, "Seed of the first trial")->capture_default_str();
  trials->add_option("--n", t_n, "Points per trial")->capture_default_str();
  trials->add_option("--oversample", t_oversample, "DTLZ7 candidates per point (default 64)");
  trials->add_option("--jobs", t_jobs, "Concurrent trials")->capture_default_str();
  trials->add_option("--out", t_out, "Aggregate table CSV ('-' for stdout)")->capture_default_str();
  trials->add_option("--rows", t_rows, "Per-trial CSV");
  t_flags.add(trials);

  // bench
  auto* bench = app.add_subcommand("bench", "Wall time and simplex counts over sample sizes and maxdims");
  std::string b_problem = "med", b_n = "50,100,200", b_maxdim = "1,2", b_delta_max, b_out = "-";
  int b_repeats = 3;
  std::uint64_t b_seed = 1, b_cap = 0;
  bench->add_option("--problem", b_problem, "Problem to sample")->capture_default_str()->check(kProblems);
  bench->add_option("--n", b_n, "Comma-separated sample sizes")->capture_default_str();
  bench->add_option("--maxdim", b_maxdim, "Comma-separated maxdims")->capture_default_str();
  bench->add_option("--delta-max", b_delta_max, "Filtration cap: number or 'auto' (default 1.0)");
  bench->add_option("--repeats", b_repeats, "Timing repeats (median)")->capture_default_str();
  bench->add_option("--seed", b_seed, "Sample seed")->capture_default_str();
  bench->add_option("--simplex-cap", b_cap, "Simplex guard cap (default: PARETOTOPO_SIMPLEX_CAP or built-in)");
  bench->add_option("--out", b_out, "CSV path ('-' for stdout)")->capture_default_str();

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      usage_error(e.what());
    }

    if (*sample) {
      pt_cloud* cloud = nullptr;
      check(pt_cloud_sample(s_problem.c_str(), s_n, s_seed, s_oversample, &cloud));
      const std::string prefix = s_out.empty() ? s_problem : s_out;
      const pt_status st = pt_cloud_save(cloud, prefix.c_str());
      pt_cloud_free(cloud);
      check(st);
    } else if (*analyze) {
      ordered_json cfg = a_flags.to_json();
      if (!a_flags.s2 && a_f.empty()) cfg["s2"] = false; // S2 only on request without objectives
      cfg["seed"] = a_seed;
      cfg["jobs"] = a_jobs;
      ordered_json run;
      run["command"] = "analyze";
      run["x"] = a_x;
      run["f"] = a_f.empty() ? ordered_json(nullptr) : ordered_json(a_f);
      run["args"] = argv_json(argc, argv);
      cfg["run"] = run;

      pt_cloud* cloud = nullptr;
      check(pt_cloud_load(a_x.c_str(), a_f.empty() ? nullptr : a_f.c_str(), &cloud));
      pt_report* report = nullptr;
      const pt_status st = pt_analyze(cloud, cfg.dump().c_str(), &report);
      pt_cloud_free(cloud);
      check(st);
      struct Guard {
        pt_report* r;
        ~Guard() { pt_report_free(r); }
      } guard{report};
      write_text(a_out, pt_report_json(report));
      const std::size_t last = pt_report_result_count(report) - 1;
      if (!a_svg.empty()) check(pt_report_write_svg(report, last, a_svg.c_str()));
      if (!a_csv.empty()) check(pt_report_write_diagram_csv(report, last, a_csv.c_str()));
    } else if (*trials) {
      ordered_json opt;
      opt["problem"] = t_problem;
      opt["trials"] = t_trials;
      opt["base_seed"] = t_seed;
      opt["n"] = t_n;
      if (t_oversample > 0) opt["oversample"] = t_oversample;
      opt["jobs"] = t_jobs;
      ordered_json an = t_flags.to_json();
      an.erase("timings");
      an.erase("diagram");
      opt["analysis"] = an;
      char* summary = nullptr;
      char* rows = nullptr;
      check(pt_run_trials(opt.dump().c_str(), &summary, &rows));
      const std::string s = summary, r = rows;
      pt_string_free(summary);
      pt_string_free(rows);
      write_text(t_out, s);
      if (!t_rows.empty()) write_text(t_rows, r);
    } else if (*bench) {
      ordered_json opt;
      opt["problem"] = b_problem;
      opt["n"] = parse_list<std::size_t>("--n", b_n);
      opt["maxdim"] = parse_list<int>("--maxdim", b_maxdim);
      if (!b_delta_max.empty()) {
        if (b_delta_max == "auto") opt["delta_max"] = "auto";
        else opt["delta_max"] = AnalysisFlags::parse_double("--delta-max", b_delta_max);
      }
      opt["repeats"] = b_repeats;
      opt["seed"] = b_seed;
      if (b_cap) opt["simplex_cap"] = b_cap;
      char* csv = nullptr;
      check(pt_run_bench(opt.dump().c_str(), &csv));
      const std::string s = csv;
      pt_string_free(csv);
      write_text(b_out, s);
    }
  } catch (const CliError& e) {
    ordered_json err;
    err["error"]["status"] = e.status;
    err["error"]["message"] = e.message;
    std::cerr << err.dump() << '\n';
    return e.exit_code;
  }
  return 0;
}
