// Copyright 2026 The LGE Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lge/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lge/analytics.hpp"
#include "lge/montecarlo.hpp"
#include "lge/occupancy.hpp"
#include "lge/protocol.hpp"
#include "lge/report_io.hpp"

namespace lge::cli {
namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kDefault, kCsv, kJson };

struct RunConfig {
  std::string command;
  std::uint64_t n = 0;
  std::vector<unsigned> n_list;
  std::vector<unsigned> urn_list;
  double p = 0.01;
  std::optional<std::uint64_t> a;
  std::optional<std::uint64_t> k;
  std::optional<double> C;
  std::optional<unsigned> L;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::uint64_t budget = 2000;
  unsigned starts = 32;
  unsigned threads = 0;
  int rice_k = 20;
  double eps_exp = 20.0;
  std::uint64_t n_max = 600;
  std::string method = "series";
  std::string what = "pmf";
  std::string output;
  Format format = Format::kDefault;
};

const CLI::Validator kOpenUnit(
    [](std::string& s) -> std::string {
      try {
        const double v = std::stod(s);
        if (v > 0.0 && v < 1.0) return {};
      } catch (const std::exception&) {
      }
      return "value must lie strictly between 0 and 1";
    },
    "(0,1)");

// Resolves --output against $LGE_OUTPUT_DIR and writes through `emit`.
void deliver(const RunConfig& cfg, std::ostream& out, std::ostream& err,
             const std::function<void(std::ostream&)>& emit) {
  if (cfg.output.empty() || cfg.output == "-") {
    emit(out);
    return;
  }
  std::filesystem::path path(cfg.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / path;
    }
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  emit(file);
  file.flush();
  if (!file) throw IoError("write to " + path.string() + " failed");
  err << "wrote " << path.string() << '\n';
}

void emit_json(const RunConfig& cfg, std::ostream& out, std::ostream& err, const io::Json& j) {
  deliver(cfg, out, err, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

void emit_scalar(const RunConfig& cfg, std::ostream& out, std::ostream& err, const std::string& name,
                 double value) {
  switch (cfg.format) {
    case Format::kDefault:
      deliver(cfg, out, err, [&](std::ostream& os) { os << io::format_real(value) << '\n'; });
      break;
    case Format::kCsv:
      deliver(cfg, out, err, [&](std::ostream& os) {
        io::CsvWriter csv(os);
        csv.row({name});
        csv.row({io::format_real(value)});
      });
      break;
    case Format::kJson: {
      io::Json j;
      j[name] = value;
      emit_json(cfg, out, err, j);
      break;
    }
  }
}

int cmd_pmf(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GeoParam param(cfg.p);
  const bool alternating = cfg.method == "alternating";
  if (cfg.a) {
    double value;
    if (alternating) {
      const auto alt = survivor_pmf_alternating(cfg.n, param, *cfg.a);
      if (alt.precision_lost) {
        err << "alternating sum lost precision (cancellation ratio "
            << io::format_real(alt.cancellation_ratio) << "); use --method series\n";
        return kNumericSentinel;
      }
      value = alt.value;
    } else {
      value = survivor_pmf_series(cfg.n, param, *cfg.a);
    }
    emit_scalar(cfg, out, err, "prob", value);
    return kSuccess;
  }
  const SurvivorPmf pmf =
      survivor_pmf(cfg.n, param, alternating ? PmfMethod::kAlternatingSum : PmfMethod::kSeriesInK);
  if (cfg.format == Format::kJson) {
    io::Json j;
    j["n"] = cfg.n;
    j["p"] = cfg.p;
    j["method"] = alternating ? "alternating" : "series";
    j["probs"] = std::vector<double>(pmf.probs.data(), pmf.probs.data() + pmf.probs.size());
    emit_json(cfg, out, err, j);
  } else {
    deliver(cfg, out, err, [&](std::ostream& os) {
      io::CsvWriter csv(os);
      csv.row({"a", "prob"});
      for (std::uint64_t a = 1; a <= cfg.n; ++a) csv.row({std::to_string(a), io::format_real(pmf(a))});
    });
  }
  err << "sum of probabilities: " << io::format_real(pmf.probs.sum()) << '\n';
  return kSuccess;
}

int cmd_expect(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GeoParam param(cfg.p);
  io::Json j;
  j["n"] = cfg.n;
  j["p"] = cfg.p;
  j["expectedSurvivors"] = expected_survivors(cfg.n, param);
  j["probOneOverQ"] = survivor_pmf_series(cfg.n, param, 1) / param.q();
  j["expectedMaxExact"] = expected_max_exact(cfg.n, param);
  j["expectedMaxApprox"] = expected_max_approx(cfg.n, param);
  if (cfg.format == Format::kCsv) {
    deliver(cfg, out, err, [&](std::ostream& os) {
      io::CsvWriter csv(os);
      std::vector<std::string> keys, values;
      for (const auto& [key, v] : j.items()) {
        keys.push_back(key);
        values.push_back(v.is_number_float() ? io::format_real(v.get<double>()) : v.dump());
      }
      csv.row(keys);
      csv.row(values);
    });
  } else {
    emit_json(cfg, out, err, j);
  }
  return kSuccess;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GeoParam param(cfg.p);
  const std::uint64_t a = cfg.a.value_or(1);
  io::Json j;
  j["p"] = cfg.p;
  j["a"] = a;
  j["phi"] = phi_bound(param, a);
  if (cfg.k) {
    j["k"] = *cfg.k;
    j["tailBound"] = survivor_tail_bound(param, *cfg.k);
  }
  if (cfg.n != 0) {
    j["n"] = cfg.n;
    if (a < cfg.n) {
      const RiceApprox r = pmf_rice_approx(cfg.n, param, a, cfg.rice_k);
      j["exact"] = survivor_pmf_series(cfg.n, param, a);
      j["central"] = r.central;
      j["errorBound"] = r.error_bound;
      j["fluctuation"] = r.fluctuation;
      j["truncationK"] = r.truncation_k;
      j["residualBound"] = r.residual_bound;
    }
    if (cfg.C) {
      const MaxTailBound b = max_geo_tail_bound(cfg.n, param, *cfg.C);
      j["C"] = *cfg.C;
      j["maxThreshold"] = b.threshold;
      j["maxTailBound"] = b.bound;
      j["maxExactTail"] = max_geo_exact_tail(cfg.n, param, b.threshold);
    }
  }
  emit_json(cfg, out, err, j);
  return kSuccess;
}

int cmd_rounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const RoundsPlan plan = rounds_required(cfg.n, GeoParam(cfg.p), cfg.eps_exp);
  switch (cfg.format) {
    case Format::kDefault:
      deliver(cfg, out, err, [&](std::ostream& os) { os << plan.slots << '\n'; });
      break;
    case Format::kCsv:
      deliver(cfg, out, err, [&](std::ostream& os) {
        io::CsvWriter csv(os);
        csv.row({"slots", "L"});
        csv.row({std::to_string(plan.slots), std::to_string(plan.digit_index)});
      });
      break;
    case Format::kJson: {
      io::Json j;
      j["slots"] = plan.slots;
      j["L"] = plan.digit_index;
      emit_json(cfg, out, err, j);
      break;
    }
  }
  err << "L = " << plan.digit_index << '\n';
  return kSuccess;
}

unsigned default_digit_index(const RunConfig& cfg) {
  if (cfg.L) return *cfg.L;
  return rounds_required(std::max<std::uint64_t>(cfg.n, 2), GeoParam(cfg.p), cfg.eps_exp).digit_index;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GeoParam param(cfg.p);
  const unsigned L = default_digit_index(cfg);
  const PhaseResult r = lge_phase(cfg.n, param, L, cfg.seed, true);
  if (cfg.format == Format::kCsv) {
    deliver(cfg, out, err, [&](std::ostream& os) { io::write_trace_csv(os, *r.trace); });
  } else {
    emit_json(cfg, out, err, io::phase_summary(cfg.n, cfg.p, L, r.survivor_count));
  }
  err << r.survivor_count << " survivor(s) after " << 2 * (L + 1) << " slots\n";
  return kSuccess;
}

int cmd_montecarlo(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GeoParam param(cfg.p);
  const McOptions opts{cfg.seed, cfg.threads};
  std::vector<EstimateReport> reports;
  io::Json j;
  if (cfg.what == "pmf") {
    reports = estimate_survivor_pmf(cfg.n, param, cfg.trials, opts);
  } else if (cfg.what == "means") {
    reports = estimate_means(cfg.n, param, cfg.trials, opts);
  } else if (cfg.what == "max-tail") {
    if (!cfg.C) throw std::invalid_argument("--what max-tail needs --C");
    const MaxTailReport r = estimate_max_tail(cfg.n, param, *cfg.C, cfg.trials, opts);
    reports.push_back(r.estimate);
    j = io::Json::array({io::to_json(r)});
    err << (r.pass ? "PASS" : "FAIL") << ": empirical " << io::format_real(r.estimate.empirical)
        << " vs bound " << io::format_real(r.estimate.analytic) << '\n';
  } else if (cfg.what == "phase") {
    const PhaseSurvivorReport r =
        estimate_phase_survivors(cfg.n, param, default_digit_index(cfg), cfg.trials, opts);
    reports = r.bins;
    j = io::to_json(r);
    if (r.regime_mismatch) {
      err << "warning: truncation budget " << io::format_real(r.truncation_budget)
          << " is visible at this sample size; the counts need not follow W\n";
    }
  } else {
    throw std::invalid_argument("unknown --what: " + cfg.what);
  }

  if (cfg.format == Format::kCsv) {
    deliver(cfg, out, err, [&](std::ostream& os) { io::write_histogram_csv(os, reports); });
  } else {
    if (j.is_null()) {
      j = io::Json::array();
      for (const auto& r : reports) j.push_back(io::to_json(r));
    }
    emit_json(cfg, out, err, j);
  }
  return kSuccess;
}

int cmd_msp(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<MspResult> results;
  const MspOptions opts{cfg.starts, cfg.threads};
  for (unsigned L : cfg.urn_list) {
    for (unsigned n : cfg.n_list) results.push_back(msp_search(L, n, cfg.budget, cfg.seed, opts));
  }
  for (const auto& r : results) {
    err << "L=" << r.L << " n=" << r.n << ": value " << io::format_real(r.value) << " < bound "
        << io::format_real(r.bound) << (r.budget_exhausted ? " (budget exhausted)" : "") << '\n';
  }
  if (cfg.format == Format::kCsv) {
    deliver(cfg, out, err, [&](std::ostream& os) { io::write_msp_sweep_csv(os, results); });
    return kSuccess;
  }
  if (results.size() == 1) {
    emit_json(cfg, out, err, io::to_json(results.front()));
  } else {
    io::Json j = io::Json::array();
    for (const auto& r : results) j.push_back(io::to_json(r));
    emit_json(cfg, out, err, j);
  }
  return kSuccess;
}

int cmd_figure1(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GeoParam param(cfg.p);
  std::vector<double> probs;
  probs.reserve(cfg.n_max);
  for (std::uint64_t n = 1; n <= cfg.n_max; ++n) probs.push_back(survivor_pmf_series(n, param, 1));
  if (cfg.format == Format::kJson) {
    io::Json j = io::Json::array();
    for (std::uint64_t n = 1; n <= cfg.n_max; ++n) j.push_back({{"n", n}, {"prob", probs[n - 1]}});
    emit_json(cfg, out, err, j);
  } else {
    deliver(cfg, out, err, [&](std::ostream& os) {
      io::CsvWriter csv(os);
      csv.row({"n", "prob"});
      for (std::uint64_t n = 1; n <= cfg.n_max; ++n) {
        csv.row({std::to_string(n), io::format_real(probs[n - 1])});
      }
    });
  }
  err << cfg.n_max << " rows, central level " << io::format_real(cfg.p / param.log_Q()) << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Leader election analytics: survivor distribution, bounds, simulation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", cfg.threads, "Worker threads (0: all cores)");

  const std::map<std::string, Format> formats{{"csv", Format::kCsv}, {"json", Format::kJson}};
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format (csv|json)")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("-o,--output", cfg.output, "Output file (relative to $" + std::string(kOutputDirEnv) + ")");
  };
  auto add_n = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--n", cfg.n, "Number of contenders")->check(CLI::PositiveNumber);
    if (required) opt->required();
  };

  std::map<std::string, std::function<int(const RunConfig&, std::ostream&, std::ostream&)>> handlers;

  auto* pmf = app.add_subcommand("pmf", "Survivor count distribution Pr[W=a]");
  add_n(pmf, true);
  pmf->add_option("--p", cfg.p, "Geometric parameter p in (0,1)")->check(kOpenUnit);
  pmf->add_option("--a", cfg.a, "Survivor count (omit for the whole table)")->check(CLI::PositiveNumber);
  pmf->add_option("--method", cfg.method, "series|alternating")
      ->check(CLI::IsMember({"series", "alternating"}));
  add_format(pmf);
  handlers["pmf"] = cmd_pmf;

  auto* expect = app.add_subcommand("expect", "E[W] and E[M]");
  add_n(expect, true);
  expect->add_option("--p", cfg.p, "Geometric parameter p in (0,1)")->check(kOpenUnit);
  add_format(expect);
  handlers["expect"] = cmd_expect;

  auto* bounds = app.add_subcommand("bounds", "phi envelope, tail bound, Rice approximation");
  add_n(bounds, false);
  bounds->add_option("--p", cfg.p, "Geometric parameter p in (0,1)")->check(kOpenUnit);
  bounds->add_option("--a", cfg.a, "Survivor count")->check(CLI::PositiveNumber);
  bounds->add_option("--k", cfg.k, "Tail threshold for Pr[W >= k]")->check(CLI::PositiveNumber);
  bounds->add_option("--C", cfg.C, "Multiplier for the maximum tail bound")->check(CLI::Range(1.0, 1e9));
  bounds->add_option("--K", cfg.rice_k, "Fluctuation truncation")->check(CLI::PositiveNumber);
  add_format(bounds);
  handlers["bounds"] = cmd_bounds;

  auto* rounds = app.add_subcommand("rounds", "Slot budget for one election phase");
  add_n(rounds, true);
  rounds->add_option("--p", cfg.p, "Geometric parameter p in (0,1)")->check(kOpenUnit);
  rounds->add_option("--eps-exp", cfg.eps_exp, "Failure probability 10^-eps")->check(CLI::PositiveNumber);
  add_format(rounds);
  handlers["rounds"] = cmd_rounds;

  auto* simulate = app.add_subcommand("simulate", "One slot-level election phase");
  add_n(simulate, true);
  simulate->add_option("--p", cfg.p, "Geometric parameter p in (0,1)")->check(kOpenUnit);
  simulate->add_option("--L", cfg.L, "Digit index (default from rounds)")->check(CLI::Range(0u, kMaxDigitIndex));
  simulate->add_option("--eps-exp", cfg.eps_exp, "Failure exponent for the default L");
  simulate->add_option("--seed", cfg.seed, "Random seed");
  add_format(simulate);
  handlers["simulate"] = cmd_simulate;

  auto* mc = app.add_subcommand("montecarlo", "Empirical estimates against analytic values");
  add_n(mc, true);
  mc->add_option("--p", cfg.p, "Geometric parameter p in (0,1)")->check(kOpenUnit);
  mc->add_option("--what", cfg.what, "pmf|means|max-tail|phase")
      ->check(CLI::IsMember({"pmf", "means", "max-tail", "phase"}));
  mc->add_option("--trials", cfg.trials, "Number of trials")->check(CLI::PositiveNumber);
  mc->add_option("--seed", cfg.seed, "Master seed");
  mc->add_option("--C", cfg.C, "Multiplier for --what max-tail")->check(CLI::Range(1.0, 1e9));
  mc->add_option("--L", cfg.L, "Digit index for --what phase")->check(CLI::Range(0u, kMaxDigitIndex));
  mc->add_option("--eps-exp", cfg.eps_exp, "Failure exponent for the default L");
  add_format(mc);
  handlers["montecarlo"] = cmd_montecarlo;

  auto* msp = app.add_subcommand("msp", "Max-min singleton probability search");
  msp->add_option("--L", cfg.urn_list, "Urn count(s)")->required()->check(CLI::Range(1u, 6u));
  msp->add_option("--n", cfg.n_list, "Largest ball count(s)")->required()->check(CLI::Range(2u, 200u));
  msp->add_option("--budget", cfg.budget, "Iterations per start")->check(CLI::PositiveNumber);
  msp->add_option("--starts", cfg.starts, "Number of starts")->check(CLI::PositiveNumber);
  msp->add_option("--seed", cfg.seed, "Random seed");
  add_format(msp);
  handlers["msp"] = cmd_msp;

  auto* fig = app.add_subcommand("figure1", "Pr[W_{n,p}=1] for n = 1..n-max");
  double figure_p = 1.0 / 3.0;
  fig->add_option("--p", figure_p, "Geometric parameter p in (0,1)")->check(kOpenUnit);
  fig->add_option("--n-max", cfg.n_max, "Largest n")->check(CLI::PositiveNumber);
  add_format(fig);
  handlers["figure1"] = cmd_figure1;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationError;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (cfg.command == "figure1") cfg.p = figure_p;
  try {
    return handlers.at(cfg.command)(cfg, out, err);
  } catch (const CancellationError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericSentinel;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
}

}  // namespace lge::cli
