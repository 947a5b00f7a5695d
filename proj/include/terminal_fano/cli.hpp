#pragma once

// Subcommand implementations behind the terminal-fano executable. Each
// command reads and writes plain streams so it can be driven from tests.
//
// Exit codes: 0 success, 1 bad input or I/O failure, 2 checker
// disagreement, 3 classifier endpoint unavailable.

#include "terminal_fano/classifier_client.hpp"
#include "terminal_fano/datagen.hpp"
#include "terminal_fano/io.hpp"
#include "terminal_fano/terminality.hpp"
#include "terminal_fano/weights.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace terminal_fano::cli {

enum ExitCode : int { kOk = 0, kBadInput = 1, kDisagreement = 2, kClassifierUnavailable = 3 };

enum class CheckMethod { prop1, fan, polytope, all };
enum class Format { jsonl, csv };

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

struct CliConfig {
  std::string subcommand;
  std::string input = "-";
  std::string output = "-";
  std::size_t n = 10;
  std::int64_t bound = 7;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  CheckMethod method = CheckMethod::prop1;
  Filter filter = Filter::exact;
  double threshold = 0.5;
  std::size_t threads = default_threads();
  Format format = Format::jsonl;
  bool keep_all = false;
  std::string classifier;   // falls back to $TERMINAL_FANO_CLASSIFIER
  std::size_t batch = 4096;  // classifier batch size
};

namespace detail {

inline bool skip_line(const std::string& line) {
  auto p = line.find_first_not_of(" \t\r");
  return p == std::string::npos || line[p] == '#';
}

inline std::string describe_failures(const ValidationReport& r) {
  std::string s;
  auto add = [&](bool ok, const char* what) {
    if (ok) return;
    if (!s.empty()) s += ", ";
    s += what;
  };
  add(r.columns_nonzero, "zero column");
  add(r.strictly_convex, "columns not in a strictly convex cone");
  add(r.q_factorial, "column sum parallel to a column");
  add(r.picard_rank_two, "a column-sum side holds more than N - 2 columns");
  add(r.well_formed, "not well-formed (a column-deleted submatrix has 2x2 minors with a common factor)");
  return s;
}

inline TerminalityVerdict run_method(CheckMethod m, const StandardWeightMatrix& w) {
  switch (m) {
    case CheckMethod::fan: return oracle_terminal_fan(w);
    case CheckMethod::polytope: return oracle_terminal_polytope(w);
    default: return terminal_prop1(w);
  }
}

inline void write_header(std::ostream& out) { out << kFormatHeader << '\n'; }

inline Json stats_json(const GenerationStats& st) {
  return Json{{"candidates", st.candidates},
              {"invalid", st.invalid},
              {"filtered", st.filtered},
              {"duplicates", st.duplicates}};
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// One verdict per input matrix. Matrices need not be in standard form;
/// witnesses refer to the standard form, which is echoed as "standard" when it
/// differs from the input.
inline int cmd_check(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  std::string line;
  std::size_t lineno = 0;
  bool disagreement = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::skip_line(line)) continue;
    std::optional<WeightMatrix> w;
    try {
      w = parse_matrix_line(line);
    } catch (const std::exception& e) {
      err << "line " << lineno << ": " << e.what() << '\n';
      return kBadInput;
    }
    ValidationReport rep = validate(*w);
    if (!rep.ok()) {
      err << "line " << lineno << ": invalid weight matrix (" << detail::describe_failures(rep) << ")\n";
      return kBadInput;
    }
    StandardWeightMatrix sw = standardize(*w);

    TerminalityVerdict verdict;
    Json extra = Json::object();
    try {
      if (cfg.method == CheckMethod::all) {
        TerminalityVerdict p = terminal_prop1(sw), f = oracle_terminal_fan(sw);
        std::optional<TerminalityVerdict> q;
        if (sw.size() - 2 <= kPolytopeOracleMaxDim) q = oracle_terminal_polytope(sw);
        bool agree = p.terminal == f.terminal && (!q || q->terminal == p.terminal);
        extra["verdicts"] = Json{{"prop1", p.terminal},
                                 {"fan_oracle", f.terminal},
                                 {"polytope_oracle", q ? Json(q->terminal) : Json(nullptr)}};
        extra["agree"] = agree;
        if (!agree) {
          disagreement = true;
          err << "line " << lineno << ": checkers disagree on " << format_text(*w) << '\n';
        }
        verdict = p;
      } else {
        verdict = detail::run_method(cfg.method, sw);
      }
    } catch (const std::invalid_argument& e) {
      err << "line " << lineno << ": " << e.what() << '\n';
      return kBadInput;
    }

    if (cfg.format == Format::csv) {
      out << format_text(*w) << ';' << (verdict.terminal ? 1 : 0) << '\n';
      continue;
    }
    Json j = verdict_json(*w, verdict);
    if (cfg.method == CheckMethod::all) j["method"] = "all";
    if (sw.matrix() != *w) j["standard"] = matrix_json(sw);
    for (auto& [k, v] : extra.items()) j[k] = v;
    out << j.dump() << '\n';
  }
  if (in.bad()) {
    err << "read error on input\n";
    return kBadInput;
  }
  return disagreement ? kDisagreement : kOk;
}

/// Balanced labelled records; summary JSON on `err`.
inline int cmd_generate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.count % 2 != 0) {
    err << "generate: --count must be even\n";
    return kBadInput;
  }
  auto t0 = std::chrono::steady_clock::now();
  GenerationStats st;
  auto recs = generate_balanced({cfg.count, cfg.n, cfg.bound, cfg.seed, cfg.threads}, &st);
  detail::write_header(out);
  if (cfg.format == Format::csv) out << "a;b;terminal\n";
  std::size_t terminal = 0;
  for (const auto& r : recs) {
    terminal += r.terminal;
    out << (cfg.format == Format::csv ? labeled_csv_row(r) : labeled_json(r).dump()) << '\n';
  }
  double secs = detail::seconds_since(t0);
  Json s{{"records", recs.size()}, {"terminal", terminal}, {"non_terminal", recs.size() - terminal}};
  s.update(detail::stats_json(st));
  s["seconds"] = secs;
  s["records_per_second"] = secs > 0 ? static_cast<double>(recs.size()) / secs : 0.0;
  err << s.dump() << '\n';
  return out ? kOk : kBadInput;
}

/// Every isomorphism class with a standard form bounded by `bound`.
inline int cmd_enumerate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!enumeration_feasible(cfg.n, cfg.bound)) {
    err << "enumerate: bound^(2N-3) exceeds the enumeration budget\n";
    return kBadInput;
  }
  auto t0 = std::chrono::steady_clock::now();
  EnumerationSummary sum;
  auto recs = enumerate_all(cfg.n, cfg.bound, &sum);
  detail::write_header(out);
  if (cfg.format == Format::csv) out << "a;b;terminal\n";
  for (const auto& r : recs) out << (cfg.format == Format::csv ? labeled_csv_row(r) : labeled_json(r).dump()) << '\n';
  err << Json{{"n", cfg.n},
              {"bound", cfg.bound},
              {"candidates", sum.candidates},
              {"valid", sum.valid},
              {"classes", sum.classes},
              {"terminal_classes", sum.terminal_classes},
              {"seconds", detail::seconds_since(t0)}}
             .dump()
      << '\n';
  return out ? kOk : kBadInput;
}

/// Landscape records with growth coefficients. CSV columns a;b;prob_terminal;fano_index;A;B.
inline int cmd_landscape(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  LandscapeOptions opt;
  opt.count = cfg.count;
  opt.n = cfg.n;
  opt.bound = cfg.bound;
  opt.seed = cfg.seed;
  opt.filter = cfg.filter;
  opt.threshold = cfg.threshold;
  opt.keep_all = cfg.keep_all;
  opt.shards = cfg.threads;
  opt.classifier = cfg.classifier;
  opt.batch = cfg.batch;

  auto t0 = std::chrono::steady_clock::now();
  GenerationStats st;
  std::vector<LandscapeRecord> recs;
  try {
    recs = generate_landscape(opt, &st);
  } catch (const classifier_unavailable& e) {
    err << "landscape: " << e.what() << '\n';
    return kClassifierUnavailable;
  }
  detail::write_header(out);
  if (cfg.format == Format::csv) out << kLandscapeColumns << '\n';
  for (const auto& r : recs) out << (cfg.format == Format::csv ? landscape_csv_row(r) : landscape_json(r).dump()) << '\n';
  Json s{{"records", recs.size()}};
  s.update(detail::stats_json(st));
  s["seconds"] = detail::seconds_since(t0);
  err << s.dump() << '\n';
  return out ? kOk : kBadInput;
}

struct LatencySummary {
  double median_ms = 0;
  double mean_ms = 0;
  double batched_ms = 0;  // wall time for the whole sample divided by its size
};

struct BenchReport {
  std::size_t n = 0;
  std::int64_t bound = 0;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  LatencySummary prop1, fan_oracle;
  double speedup = 0;  // fan_oracle.mean_ms / prop1.mean_ms
  std::size_t disagreements = 0;
};

namespace detail {

template <class Check>
LatencySummary time_checker(const std::vector<StandardWeightMatrix>& sample, Check check, std::vector<char>& verdicts) {
  using clock = std::chrono::steady_clock;
  std::vector<double> single;
  single.reserve(sample.size());
  verdicts.assign(sample.size(), 0);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    auto t0 = clock::now();
    verdicts[i] = check(sample[i]);
    single.push_back(std::chrono::duration<double, std::milli>(clock::now() - t0).count());
  }
  auto t0 = clock::now();
  std::size_t sink = 0;
  for (const auto& w : sample) sink += check(w);
  double batched = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  if (sink > sample.size()) throw std::logic_error("unreachable");

  LatencySummary s;
  s.mean_ms = std::accumulate(single.begin(), single.end(), 0.0) / static_cast<double>(single.size());
  std::sort(single.begin(), single.end());
  const std::size_t m = single.size() / 2;
  s.median_ms = single.size() % 2 ? single[m] : (single[m - 1] + single[m]) / 2;
  s.batched_ms = batched / static_cast<double>(sample.size());
  return s;
}

}  // namespace detail

/// Times terminal_prop1 against the fan oracle on `sample_size` fresh valid
/// matrices. Throws std::invalid_argument for samples below 1000.
inline BenchReport run_bench(std::size_t n, std::int64_t bound, std::size_t sample_size, std::uint64_t seed) {
  if (sample_size < 1000) throw std::invalid_argument("bench: sample size must be at least 1000");
  Rng rng = make_rng(seed, 1);
  std::vector<StandardWeightMatrix> sample;
  sample.reserve(sample_size);
  while (sample.size() < sample_size) {
    StandardWeightMatrix w = sample_random(n, bound, rng);
    if (validate(w).ok()) sample.push_back(std::move(w));
  }
  BenchReport r{n, bound, sample_size, seed, {}, {}, 0, 0};
  std::vector<char> vp, vf;
  r.prop1 = detail::time_checker(sample, [](const StandardWeightMatrix& w) { return terminal_prop1(w).terminal; }, vp);
  r.fan_oracle =
      detail::time_checker(sample, [](const StandardWeightMatrix& w) { return oracle_terminal_fan(w).terminal; }, vf);
  r.speedup = r.prop1.mean_ms > 0 ? r.fan_oracle.mean_ms / r.prop1.mean_ms : 0;
  for (std::size_t i = 0; i < sample_size; ++i) r.disagreements += vp[i] != vf[i];
  return r;
}

inline Json bench_json(const BenchReport& r) {
  auto lat = [](const LatencySummary& s) {
    return Json{{"median_ms", s.median_ms}, {"mean_ms", s.mean_ms}, {"batched_ms", s.batched_ms}};
  };
  return Json{{"n", r.n},
              {"bound", r.bound},
              {"sample_size", r.sample_size},
              {"seed", r.seed},
              {"prop1", lat(r.prop1)},
              {"fan_oracle", lat(r.fan_oracle)},
              {"speedup", r.speedup},
              {"disagreements", r.disagreements}};
}

/// The JSON report goes to `out`; exit 2 if the two checkers disagree anywhere.
inline int cmd_bench(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  BenchReport r;
  try {
    r = run_bench(cfg.n, cfg.bound, cfg.count, cfg.seed);
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kBadInput;
  }
  out << bench_json(r).dump(2) << '\n';
  return r.disagreements ? kDisagreement : kOk;
}

}  // namespace terminal_fano::cli
