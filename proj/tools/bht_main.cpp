// bht: finite-length binary hypothesis testing bounds toolkit.
// Subcommands: info, synth, bounds, gap-table, css, exact, mc, validate.
// Exit codes: 0 success, 1 validation found violations, 2 usage error,
// 3 domain error, 4 not found / infeasible.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bht/bounds.hpp"
#include "bht/css.hpp"
#include "bht/distribution.hpp"
#include "bht/exact_np.hpp"
#include "bht/model_io.hpp"
#include "bht/monte_carlo.hpp"
#include "bht/schedule.hpp"

namespace {

constexpr const char* kVersion = "bht 0.1.0";

std::string fmt_sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

std::string fmt_log10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

std::string join_argv(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

struct OutputTarget {
  std::string path;  // empty: stdout
  bht::RunManifest manifest;

  void write(const std::string& contents) const {
    if (path.empty()) {
      std::cout << contents;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bht::Error(bht::Errc::bad_model_file, "cannot write " + path);
    out << contents;
    out.close();
    bht::write_manifest(path, manifest);
  }
};

std::vector<bht::EpsilonSchedule> parse_schedules(const std::string& list) {
  std::vector<bht::EpsilonSchedule> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) {
      // "pow:0.1" style entries contain no commas, so a plain split works
      out.push_back(bht::EpsilonSchedule::parse(item));
    }
  if (out.empty()) throw bht::Error(bht::Errc::bad_argument, "no schedules given");
  return out;
}

struct NRange {
  long begin = 1, end = 1, step = 1;
};

NRange parse_n_range(const std::string& text) {
  NRange r;
  std::stringstream ss(text);
  std::string part;
  std::vector<long> parts;
  while (std::getline(ss, part, ':')) parts.push_back(std::stol(part));
  if (parts.size() == 1) {
    r.begin = r.end = parts[0];
  } else if (parts.size() == 2) {
    r.begin = parts[0];
    r.end = parts[1];
  } else if (parts.size() == 3) {
    r.begin = parts[0];
    r.end = parts[1];
    r.step = parts[2];
  } else {
    throw bht::Error(bht::Errc::bad_argument, "bad n range: " + text);
  }
  if (r.begin < 1 || r.end < r.begin || r.step < 1)
    throw bht::Error(bht::Errc::bad_argument, "bad n range: " + text);
  return r;
}

// measures from either a model file or scalar overrides; warns when the
// scalars are not realizable by any actual pair
struct MeasureSource {
  std::string model_path;
  double d = 0.0, cx = -1.0;

  bool has_model() const { return !model_path.empty(); }

  bht::ScalarMeasures resolve(std::optional<bht::HypothesisPair>& pair_out) const {
    if (has_model()) {
      pair_out = bht::read_model(model_path);
      return {pair_out->d(), pair_out->c_x()};
    }
    bht::ScalarMeasures m{d, cx};
    if (!m.consistent())
      std::cerr << "warning: D=" << d << " with C_X=" << cx
                << " is not realizable by any pair (D <= C_X must hold); "
                   "evaluating anyway\n";
    return m;
  }
};

int run_info(const MeasureSource& src, std::optional<double> rate) {
  std::optional<bht::HypothesisPair> pair;
  (void)src.resolve(pair);
  if (!pair) throw bht::Error(bht::Errc::bad_argument, "info requires --model");
  std::cout << "d   = " << fmt_sci(pair->d()) << "\n";
  std::cout << "v   = " << fmt_sci(pair->v()) << "\n";
  std::cout << "c_x = " << fmt_sci(pair->c_x()) << "\n";
  std::cout << "stein_exponent = " << fmt_sci(pair->d()) << "\n";
  if (rate)
    std::cout << "nakagawa_exponent(r=" << *rate
              << ") = " << fmt_sci(bht::nakagawa_exponent(*pair, *rate)) << "\n";
  return 0;
}

int run_bounds(const MeasureSource& src, const std::string& schedule_text,
               const std::string& n_text, OutputTarget& target) {
  std::optional<bht::HypothesisPair> pair;
  bht::ScalarMeasures m = src.resolve(pair);
  auto schedule = bht::EpsilonSchedule::parse(schedule_text);
  NRange range = parse_n_range(n_text);
  std::ostringstream csv;
  csv << "n,epsilon_n,delta_n,exp_lower,exp_upper,log10_LB,log10_UB,log10_gap,lb_valid\n";
  for (long n = range.begin; n <= range.end; n += range.step) {
    if (!schedule.admissible(n)) continue;
    auto b = bht::bounds_at_abstract(m, schedule, n);
    auto g = bht::gap(b);
    csv << n << ',' << fmt_sci(b.epsilon_n) << ',' << fmt_sci(b.delta_n) << ','
        << fmt_sci(b.exp_lower) << ',' << fmt_sci(b.exp_upper) << ','
        << fmt_log10(b.log_lb.log10()) << ',' << fmt_log10(b.log_ub.log10()) << ','
        << fmt_log10(g.log10()) << ',' << (b.lb_valid ? 1 : 0) << "\n";
  }
  target.write(csv.str());
  return 0;
}

int run_gap_table(const MeasureSource& src, const std::string& schedules_text,
                  const std::string& n_text, OutputTarget& target) {
  std::optional<bht::HypothesisPair> pair;
  bht::ScalarMeasures m = src.resolve(pair);
  auto schedules = parse_schedules(schedules_text);
  NRange range = parse_n_range(n_text);
  std::ostringstream csv;
  csv << "schedule,n,epsilon_n,gap,log10_gap\n";
  for (const auto& s : schedules) {
    for (long n = range.begin; n <= range.end; n += range.step) {
      if (!s.admissible(n)) continue;
      auto b = bht::bounds_at_abstract(m, s, n);
      auto g = bht::gap(b);
      csv << s.to_string() << ',' << n << ',' << fmt_sci(b.epsilon_n) << ','
          << bht::sci_string(g) << ',' << fmt_log10(g.log10()) << "\n";
    }
  }
  target.write(csv.str());
  return 0;
}

int run_css(const MeasureSource& src, const std::string& schedule_text, int kmin, int kmax,
            long nmax, OutputTarget& target) {
  std::optional<bht::HypothesisPair> pair;
  bht::ScalarMeasures m = src.resolve(pair);
  if (kmin > kmax) throw bht::Error(bht::Errc::bad_argument, "--kmin must be <= --kmax");
  std::vector<int> ks;
  for (int k = kmin; k <= kmax; ++k) ks.push_back(k);
  std::ostringstream csv;
  csv << "schedule,delta,css,criterion_at_css\n";
  bool any_not_found = false;
  for (const auto& s : parse_schedules(schedule_text)) {
    bht::CssQuery base{m, s, 1e-8, nmax, false};
    for (auto& [delta, res] : bht::css_sweep(base, ks)) {
      csv << s.to_string() << ',' << fmt_sci(delta) << ',';
      if (res.css) {
        csv << *res.css << ',' << fmt_sci(res.criterion_at_css) << "\n";
      } else {
        csv << "not_found," << fmt_sci(0.0) << "\n";
        any_not_found = true;
      }
    }
  }
  target.write(csv.str());
  if (any_not_found) {
    std::cerr << "css: some entries exceeded n_max=" << nmax << "\n";
    return 4;
  }
  return 0;
}

int run_exact(const std::string& model_path, long n, std::optional<double> epsilon,
              const std::string& schedule_text, std::size_t cap, bool threshold_only) {
  auto pair = bht::read_model(model_path);
  double eps = epsilon ? *epsilon
                       : bht::EpsilonSchedule::parse(schedule_text).epsilon_at(n);
  auto r = bht::beta_exact(pair, n, eps, cap);
  nlohmann::json j;
  j["n"] = n;
  j["epsilon"] = eps;
  j["beta_log10"] = threshold_only ? r.beta_threshold.log10() : r.beta.log10();
  j["achieved_type1"] = threshold_only ? r.type1_threshold : r.achieved_type1;
  j["threshold_llr"] = r.threshold_llr;
  std::cout << j.dump() << "\n";
  return 0;
}

int run_mc(const std::string& model_path, long n, std::optional<double> epsilon,
           const std::string& schedule_text, const bht::McConfig& config) {
  auto pair = bht::read_model(model_path);
  double eps = epsilon ? *epsilon
                       : bht::EpsilonSchedule::parse(schedule_text).epsilon_at(n);
  auto r = bht::estimate_beta(pair, n, eps, config);
  if (r.est.estimate == 0.0)
    std::cerr << "mc: no Q-sample reached the threshold; the estimate is "
                 "unresolvable at this sample budget\n";
  nlohmann::json j;
  j["estimate"] = r.est.estimate;
  j["stderr"] = r.est.stderr_;
  j["threshold"] = r.threshold;
  j["samples"] = r.est.num_samples;
  j["seed"] = config.seed;
  std::cout << j.dump() << "\n";
  return 0;
}

int run_synth(std::size_t m, double d, double min_mass, std::uint64_t seed,
              const std::string& out_path, const bht::RunManifest& manifest) {
  auto pair = bht::synthesize_pair(m, d, min_mass, seed);
  bht::write_model(out_path, pair);
  bht::write_manifest(out_path, manifest);
  std::cerr << "wrote " << out_path << " (d=" << pair.d() << ", c_x=" << pair.c_x()
            << ")\n";
  return 0;
}

int run_validate(const std::string& model_path, long nmax, std::int64_t samples,
                 std::uint64_t seed) {
  auto pair = bht::read_model(model_path);
  long violations = 0, cells = 0;

  // sandwich: exact beta inside [LB, UB] for every admissible n and schedule
  for (const auto& s : {bht::EpsilonSchedule::constant(0.1), bht::EpsilonSchedule::reciprocal(),
                        bht::EpsilonSchedule::power(0.1),
                        bht::EpsilonSchedule::log_reciprocal()}) {
    long bad = 0;
    std::vector<long> bad_ns;
    for (long n = s.first_admissible(); n <= nmax; ++n) {
      auto levels = bht::enumerate_levels(pair, n);
      double eps = s.epsilon_at(n);
      auto np = bht::np_from_levels(levels, eps);
      auto b = bht::bounds_at(pair, eps, n);
      ++cells;
      bool ok = np.beta.ln() <= b.log_ub.ln() + 1e-9 &&
                (!b.lb_valid || np.beta.ln() >= b.log_lb.ln() - 1e-9);
      if (!ok) {
        ++bad;
        if (bad_ns.size() < 8) bad_ns.push_back(n);
      }
    }
    violations += bad;
    std::cout << "sandwich " << s.to_string() << ": " << (bad == 0 ? "ok" : "VIOLATED")
              << " (n <= " << nmax << (bad ? ", cells:" : "");
    for (long n : bad_ns) std::cout << ' ' << n;
    std::cout << ")\n";
  }

  // concentration: empirical tail vs the bounded-difference bound
  for (long n : {10L, 50L, 200L}) {
    bht::McConfig cfg{samples, seed + static_cast<std::uint64_t>(n), 8};
    auto sums = bht::sample_llr_sums(pair, n, bht::Hypothesis::P, cfg);
    for (int j = 1; j <= 6; ++j) {
      double delta = pair.c_x() > 0.0 ? 0.25 * j * pair.c_x() : 0.1 * j;
      auto r = bht::concentration_from_sums(sums, n, pair.d(), pair.c_x(), delta);
      ++cells;
      if (!r.pass) ++violations;
      std::cout << "concentration n=" << n << " delta=" << fmt_sci(delta) << ": "
                << (r.pass ? "ok" : "VIOLATED") << " (empirical "
                << fmt_sci(r.empirical.estimate) << " vs bound " << fmt_sci(r.bound)
                << (r.degenerate ? ", degenerate" : "") << ")\n";
    }
  }

  std::cout << (violations == 0 ? "validate: all checks passed over "
                                : "validate: VIOLATIONS in ")
            << (violations == 0 ? cells : violations) << " cells\n";
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-length binary hypothesis testing bounds"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  bht::RunManifest manifest;
  manifest.command_line = join_argv(argc, argv);
  manifest.tool_version = kVersion;
  manifest.timestamp = iso_timestamp();
  manifest.model_hash = "none";

  MeasureSource src;
  std::string schedule_text = "recip";
  std::string n_text = "50:750:100";
  std::string out_path;
  long n_single = 10;
  std::optional<double> epsilon_opt;
  std::optional<double> rate_opt;

  auto add_measures = [&](CLI::App* cmd, bool model_only = false) {
    auto* model = cmd->add_option("--model", src.model_path, "model JSON file");
    if (!model_only) {
      auto* d = cmd->add_option("--d", src.d, "divergence override (nats)");
      auto* cx = cmd->add_option("--cx", src.cx, "C_X override (nats)");
      d->needs(cx);
      cx->needs(d);
      model->excludes(d);
      d->excludes(model);
    } else {
      model->required();
    }
  };

  // info
  auto* info = app.add_subcommand("info", "print a model's information measures");
  add_measures(info, true);
  double rate_val = 0.0;
  auto* rate_flag = info->add_option("--rate", rate_val, "rate for the Nakagawa exponent");

  // synth
  auto* synth = app.add_subcommand("synth", "synthesize a model with a target divergence");
  std::size_t synth_m = 15;
  double synth_d = 1.0, synth_min_mass = 0.001;
  std::uint64_t synth_seed = 0;
  synth->add_option("--m", synth_m, "alphabet size")->required();
  synth->add_option("--d", synth_d, "target divergence (nats)")->required();
  synth->add_option("--min-mass", synth_min_mass, "mass floor per symbol");
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--out", out_path, "output model path")->required();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "feasibility interval sweep (CSV)");
  add_measures(bounds);
  bounds->add_option("--schedule", schedule_text, "epsilon schedule");
  bounds->add_option("--n", n_text, "n range begin:end[:step]");
  bounds->add_option("--out", out_path, "output CSV path (default stdout)");

  // gap-table
  auto* gap_table = app.add_subcommand("gap-table", "UB-LB magnitude table (CSV)");
  add_measures(gap_table);
  std::string schedules_text = "recip,pow:0.1,logrecip";
  gap_table->add_option("--schedules", schedules_text, "comma-separated schedules");
  gap_table->add_option("--n", n_text, "n range begin:end[:step]");
  gap_table->add_option("--out", out_path, "output CSV path (default stdout)");

  // css
  auto* css = app.add_subcommand("css", "critical sample size sweep (CSV)");
  add_measures(css);
  int kmin = 1, kmax = 8;
  long css_nmax = 1'000'000;
  css->add_option("--schedule", schedule_text, "schedule (comma list allowed)");
  css->add_option("--kmin", kmin, "smallest k in delta = 10^-k");
  css->add_option("--kmax", kmax, "largest k in delta = 10^-k");
  css->add_option("--nmax", css_nmax, "scan cap");
  css->add_option("--out", out_path, "output CSV path (default stdout)");

  // exact
  auto* exact = app.add_subcommand("exact", "exact Neyman-Pearson beta (JSON)");
  add_measures(exact, true);
  double eps_val = 0.1;
  exact->add_option("--n", n_single, "block length")->required();
  auto* exact_eps = exact->add_option("--epsilon", eps_val, "Type I budget");
  exact->add_option("--schedule", schedule_text, "schedule supplying epsilon_n");
  std::size_t cap = 5'000'000;
  exact->add_option("--cap", cap, "type-class cap");
  bool threshold_only = false;
  exact->add_flag("--threshold-only", threshold_only,
                  "report the pure threshold test instead of the minimal slice");

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo beta estimate (JSON)");
  add_measures(mc, true);
  bht::McConfig mc_cfg;
  mc->add_option("--n", n_single, "block length")->required();
  auto* mc_eps = mc->add_option("--epsilon", eps_val, "Type I budget");
  mc->add_option("--schedule", schedule_text, "schedule supplying epsilon_n");
  mc->add_option("--samples", mc_cfg.num_samples, "samples per hypothesis");
  mc->add_option("--seed", mc_cfg.seed, "generator seed");
  mc->add_option("--chunks", mc_cfg.stream_chunks, "substream count");

  // validate
  auto* validate = app.add_subcommand("validate", "sandwich + concentration checks");
  add_measures(validate, true);
  long val_nmax = 150;
  std::int64_t val_samples = 1'000'000;
  std::uint64_t val_seed = 0;
  validate->add_option("--nmax", val_nmax, "sandwich scan cap");
  validate->add_option("--samples", val_samples, "concentration trials");
  validate->add_option("--seed", val_seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    if (!src.model_path.empty()) {
      manifest.model_hash = [&] {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                      static_cast<unsigned long long>(bht::fnv1a_file(src.model_path)));
        return std::string(buf);
      }();
    }
    if (*rate_flag) rate_opt = rate_val;

    OutputTarget target;
    target.path = out_path;
    target.manifest = manifest;

    if (info->parsed()) return run_info(src, rate_opt);
    if (synth->parsed()) {
      manifest.seed = synth_seed;
      return run_synth(synth_m, synth_d, synth_min_mass, synth_seed, out_path, manifest);
    }
    if (bounds->parsed()) return run_bounds(src, schedule_text, n_text, target);
    if (gap_table->parsed()) return run_gap_table(src, schedules_text, n_text, target);
    if (css->parsed()) return run_css(src, schedule_text, kmin, kmax, css_nmax, target);
    if (exact->parsed()) {
      if (*exact_eps) epsilon_opt = eps_val;
      return run_exact(src.model_path, n_single, epsilon_opt, schedule_text, cap,
                       threshold_only);
    }
    if (mc->parsed()) {
      if (*mc_eps) epsilon_opt = eps_val;
      manifest.seed = mc_cfg.seed;
      return run_mc(src.model_path, n_single, epsilon_opt, schedule_text, mc_cfg);
    }
    if (validate->parsed()) return run_validate(src.model_path, val_nmax, val_samples, val_seed);
  } catch (const bht::Error& e) {
    std::cerr << "error [" << bht::errc_name(e.code()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case bht::Errc::not_found:
      case bht::Errc::oracle_infeasible:
      case bht::Errc::enumeration_too_large:
      case bht::Errc::too_large:
      case bht::Errc::target_unreachable: return 4;
      default: return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
