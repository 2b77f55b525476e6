#include "paretotopo/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "csv_util.hpp"
#include "paretotopo/parallel.hpp"

namespace paretotopo {

namespace {

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

// Quotes a CSV field when needed.
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

TrialsResult run_trials(const TrialConfig& config) {
  if (config.trials < 1) throw Error(Errc::invalid_argument, "trials must be >= 1");
  TrialsResult out;
  out.rows.resize(static_cast<std::size_t>(config.trials));

  parallel_for(out.rows.size(), config.jobs, [&](std::size_t i) {
    TrialRow& row = out.rows[i];
    row.trial = static_cast<int>(i) + 1;
    row.seed = config.base_seed + i;
    const auto t = Clock::now();
    try {
      const PointCloud pc = sample_pareto(config.problem, config.n_points, row.seed, config.sample);
      AnalysisConfig ac = config.analysis;
      ac.seed = row.seed;
      const SimplicityReport rep = analyze(pc, ac);
      const SubsetResult& full = rep.results.back();
      if (full.skipped) throw Error(Errc::insufficient_sample, *full.skipped);
      row.points = full.num_points;
      row.delta = full.delta;
      row.consistent = full.estimate->consistent;
      row.betti = full.s1.betti;
      row.s1_violated = full.s1.violated;
      if (full.s2) {
        row.s2_violated = full.s2->violated;
        row.witnesses = full.s2->witnesses.size();
      }
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    row.seconds = seconds_since(t);
  });

  TrialSummary& s = out.summary;
  s.problem = problem_name(config.problem);
  s.trials = config.trials;
  double sum = 0.0;
  for (const auto& r : out.rows) {
    if (!r.ok) continue;
    ++s.completed;
    sum += r.delta;
    s.s1_unsatisfied += r.s1_violated;
    s.s2_unsatisfied += r.s2_violated.value_or(false);
  }
  s.average_delta = s.completed ? sum / s.completed : 0.0;
  return out;
}

std::string trial_summary_csv(const TrialSummary& s) {
  std::ostringstream o;
  o << "Problem,Trials,Completed,Average delta,S1_unsatisfied,S2_unsatisfied\n";
  o << s.problem << ',' << s.trials << ',' << s.completed << ',' << csv::format_double(s.average_delta) << ','
    << s.s1_unsatisfied << ',' << s.s2_unsatisfied << '\n';
  return o.str();
}

std::string trial_rows_csv(const std::vector<TrialRow>& rows) {
  std::ostringstream o;
  o << "trial,seed,status,points,delta,consistent,betti,S1_violated,S2_violated,witnesses,seconds,error\n";
  for (const auto& r : rows) {
    o << r.trial << ',' << r.seed << ',' << (r.ok ? "ok" : "failed") << ',';
    if (r.ok) {
      o << r.points << ',' << csv::format_double(r.delta) << ',' << r.consistent << ',' << join(r.betti) << ','
        << r.s1_violated << ',' << (r.s2_violated ? std::to_string(*r.s2_violated) : std::string()) << ','
        << r.witnesses;
    } else {
      o << ",,,,,,";
    }
    o << ',' << csv::format_double(r.seconds) << ',' << field(r.error) << '\n';
  }
  return o.str();
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.repeats < 1) throw Error(Errc::invalid_argument, "repeats must be >= 1");
  if (config.n_list.empty() || config.maxdim_list.empty())
    throw Error(Errc::invalid_argument, "bench needs at least one n and one maxdim");
  const std::size_t cap = config.simplex_cap ? config.simplex_cap : default_simplex_cap();

  std::vector<BenchRow> rows;
  for (std::size_t n : config.n_list) {
    const PointCloud pc = sample_pareto(config.problem, n, config.seed);
    for (int maxdim : config.maxdim_list) {
      BenchRow row;
      row.n = pc.size();
      row.maxdim = maxdim;
      row.record_bytes = static_cast<std::size_t>(maxdim + 1) * sizeof(Index) + sizeof(double) + 1;
      std::vector<double> td, tf, tp, tt;
      try {
        for (int r = 0; r < config.repeats; ++r) {
          auto t0 = Clock::now();
          const DistanceMatrix dm = pairwise_distances(pc);
          td.push_back(seconds_since(t0));
          row.delta_max = config.delta_max.value_or(dm.max());
          auto t1 = Clock::now();
          const Filtration f = build_filtration(dm, maxdim, row.delta_max, cap);
          tf.push_back(seconds_since(t1));
          auto t2 = Clock::now();
          PersistenceOptions opt;
          opt.max_dim = std::max(maxdim - 1, 0);
          const PersistenceDiagram d = compute_persistence(f, opt);
          tp.push_back(seconds_since(t2));
          tt.push_back(seconds_since(t0));
          row.counts = simplex_count_profile(f);
          row.simplices = f.size();
        }
        row.finished = true;
        row.memory_bytes = row.simplices * row.record_bytes;
        row.t_distances = median(td);
        row.t_filtration = median(tf);
        row.t_persistence = median(tp);
        row.t_total = median(tt);
      } catch (const Error& e) {
        if (e.code() != Errc::guard_exceeded) throw;
        row.finished = false;
        row.note = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows, const BenchConfig& config) {
  std::ostringstream o;
  o << "problem,n,maxdim,delta_max,status,simplices,counts,record_bytes,memory_bytes,time_distances,"
       "time_filtration,time_persistence,time_total,repeats,note\n";
  for (const auto& r : rows) {
    o << problem_name(config.problem) << ',' << r.n << ',' << r.maxdim << ',' << csv::format_double(r.delta_max)
      << ',' << (r.finished ? "ok" : "DNF") << ',';
    if (r.finished) {
      o << r.simplices << ',' << join(r.counts) << ',' << r.record_bytes << ',' << r.memory_bytes << ','
        << csv::format_double(r.t_distances) << ',' << csv::format_double(r.t_filtration) << ','
        << csv::format_double(r.t_persistence) << ',' << csv::format_double(r.t_total);
    } else {
      o << ",," << r.record_bytes << ",,,,,";
    }
    o << ',' << config.repeats << ',' << field(r.note) << '\n';
  }
  return o.str();
}

} // namespace paretotopo
