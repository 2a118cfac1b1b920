// olsenmf: inhomogeneous multinomial measures, their Olsen functions and
// Gray-code pushforwards, from the command line. Every run writes its
// artifacts plus a manifest.json echoing the fully resolved configuration;
// re-running with --config <manifest> reproduces the artifacts byte for
// byte.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "olsen/config.hpp"
#include "olsen/dirichlet.hpp"
#include "olsen/errors.hpp"
#include "olsen/graycode.hpp"
#include "olsen/measure.hpp"
#include "olsen/olsen_functions.hpp"
#include "olsen/tangency.hpp"
#include "olsen/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(const fs::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw olsen::InputError("cannot open " + path.string() + " for writing");
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

json load_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw olsen::InputError("cannot read config file " + path.string());
  json j;
  in >> j;
  return j;
}

// Fetch cfg[section][key], writing the default back so the emitted
// manifest carries the fully resolved value.
template <typename T>
T resolve(json& cfg, const std::string& section, const std::string& key, T fallback) {
  json& sec = cfg[section];
  if (!sec.contains(key)) sec[key] = fallback;
  return sec.at(key).get<T>();
}

json& require_section(json& cfg, const std::string& section) {
  if (!cfg.contains(section))
    throw olsen::InputError("config: missing required section \"" + section + "\"");
  return cfg.at(section);
}

json zero_report_to_json(const olsen::ZeroReport& r) {
  json zeros = json::array();
  for (const auto& z : r.zeros)
    zeros.push_back({{"location", z.location},
                     {"order", z.order},
                     {"order_at_ceiling", z.order_at_ceiling}});
  return json{{"zeros", zeros},
              {"total_order", r.total_order},
              {"interval", {r.lo, r.hi}},
              {"degenerate", r.degenerate},
              {"recursion_truncated", r.recursion_truncated},
              {"tail_certified", {r.tail_certified_left, r.tail_certified_right}},
              {"tolerances",
               {{"order_threshold_factor", r.options.order_threshold_factor},
                {"cluster_radius", r.options.cluster_radius},
                {"refine_tolerance", r.options.refine_tolerance},
                {"derivative_ceiling", r.options.derivative_ceiling}}}};
}

json certificate_to_json(const olsen::CertifyOutcome& out) {
  const auto& c = out.certificate;
  const char* status = out.status == olsen::CertifyOutcome::Status::certified ? "certified"
                       : out.status == olsen::CertifyOutcome::Status::degenerate ? "degenerate"
                                                                                 : "failed";
  return json{{"status", status},
              {"failure", out.failure},
              {"params_a", c.params_a},
              {"params_b", c.params_b},
              {"residuals",
               {{"f_at_0", c.f_at_0},
                {"f_prime_at_0", c.f_prime_at_0},
                {"f_at_1", c.f_at_1},
                {"f_prime_at_1", c.f_prime_at_1}}},
              {"curvatures", {c.curvature_at_0, c.curvature_at_1}},
              {"grid_sign", c.grid_sign},
              {"single_signed", c.single_signed},
              {"zero_report", zero_report_to_json(c.zero_report)}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw olsen::InputError("cannot open " + path.string() + " for writing");
  out << text;
}

struct Emitter {
  fs::path out_dir;

  void json_artifact(const std::string& name, const json& payload) const {
    write_text(out_dir / name, payload.dump(2) + "\n");
  }
};

olsen::MeasureSpec measure_from_config(json& cfg) {
  return olsen::measure_from_json(require_section(cfg, "measure"));
}

olsen::BaseQuadruple base_from_config(const json& solver) {
  if (!solver.contains("base")) throw olsen::InputError("solver config: missing \"base\"");
  const json& b = solver.at("base");
  if (b.is_string()) return olsen::BaseQuadruple::preset(b.get<std::string>());
  const auto v = b.get<std::vector<double>>();
  if (v.size() != 4)
    throw olsen::InputError("solver config: custom base needs exactly 4 entries");
  return {v[0], v[1], v[2], v[3]};
}

// --- subcommand handlers; each returns the artifacts it wrote ---

void run_solve(json& cfg, const Emitter& emit) {
  json& solver = require_section(cfg, "solver");
  const olsen::BaseQuadruple base = base_from_config(solver);
  const double t = resolve(cfg, "solver", "t", 1e-3);
  const double w = resolve(cfg, "solver", "w", 1e-3);

  const auto [pa, pb] = olsen::build_measure_pair(t, w, base);
  const auto outcome = olsen::certify_tangency(pa.entries(), pb.entries());
  const auto sol = olsen::solve_uv(t, w, base);

  json payload{{"params_a", pa.entries()},
               {"params_b", pb.entries()},
               {"u", sol.u},
               {"v", sol.v},
               {"solver_residual", sol.residual},
               {"certificate", certificate_to_json(outcome)}};
  emit.json_artifact("solve.json", payload);
  std::cout << payload.dump(2) << "\n";
  if (outcome.status != olsen::CertifyOutcome::Status::certified)
    throw olsen::NumericError("tangency certification failed: " + outcome.failure);
}

void run_zeros(json& cfg, const Emitter& emit) {
  json& section = require_section(cfg, "zeros");
  if (!section.contains("terms"))
    throw olsen::InputError("zeros config: missing \"terms\" ([[coefficient, exponent], ...])");
  std::vector<olsen::DirichletTerm> terms;
  for (const auto& pair : section.at("terms")) {
    const auto v = pair.get<std::vector<double>>();
    if (v.size() != 2)
      throw olsen::InputError("zeros config: each term is a [coefficient, exponent] pair");
    terms.push_back({v[0], v[1]});
  }
  const double lo = resolve(cfg, "zeros", "lo", -20.0);
  const double hi = resolve(cfg, "zeros", "hi", 20.0);
  const olsen::DirichletPolynomial f(terms);
  const auto report = olsen::count_zeros(f, lo, hi);
  const json payload = zero_report_to_json(report);
  emit.json_artifact("zeros.json", payload);
  std::cout << payload.dump(2) << "\n";
}

void run_tau(json& cfg, const Emitter& emit) {
  const olsen::MeasureSpec spec = measure_from_config(cfg);
  const double q_min = resolve(cfg, "grid", "q_min", -10.0);
  const double q_max = resolve(cfg, "grid", "q_max", 10.0);
  const int points = resolve(cfg, "grid", "q_points", 401);
  if (points < 2 || !(q_min < q_max))
    throw olsen::InputError("grid: need q_min < q_max and at least 2 points");

  const olsen::OlsenPair pair{olsen::FreeEnergyCurve(spec.probs_a),
                              olsen::FreeEnergyCurve(spec.probs_b)};
  CsvWriter csv(emit.out_dir / "tau.csv");
  csv.row({"q", "b", "B", "b_prime", "B_prime"});
  for (int i = 0; i < points; ++i) {
    const double q = q_min + (q_max - q_min) * i / (points - 1.0);
    csv.row({format_double(q), format_double(pair.b(q)), format_double(pair.B(q)),
             format_double(pair.b_derivative(q).right),
             format_double(pair.B_derivative(q).right)});
  }
  std::cout << "tau.csv: " << points << " rows\n";
}

void run_spectrum(json& cfg, const Emitter& emit) {
  const olsen::MeasureSpec spec = measure_from_config(cfg);
  if (spec.space.alphabet_1.size != spec.space.alphabet_2.size)
    throw olsen::InputError("spectrum: requires equal alphabet sizes");
  const olsen::OlsenPair pair = olsen::make_spectrum_pair(spec.probs_a, spec.probs_b);
  const auto [win_lo, win_hi] = olsen::spectrum_window(pair);
  const double inset = 0.005 * (win_hi - win_lo);
  const double alpha_min = resolve(cfg, "grid", "alpha_min", win_lo + inset);
  const double alpha_max = resolve(cfg, "grid", "alpha_max", win_hi - inset);
  const int points = resolve(cfg, "grid", "alpha_points", 100);
  if (points < 2 || !(alpha_min < alpha_max))
    throw olsen::InputError("grid: need alpha_min < alpha_max and at least 2 points");

  CsvWriter csv(emit.out_dir / "spectrum.csv");
  csv.row({"alpha", "dim", "Dim", "q_a", "q_b"});
  for (int i = 0; i < points; ++i) {
    const double alpha = alpha_min + (alpha_max - alpha_min) * i / (points - 1.0);
    const auto pt = olsen::spectrum(pair, alpha);
    csv.row({format_double(pt.alpha), format_double(pt.dim), format_double(pt.Dim),
             format_double(pt.q_a), format_double(pt.q_b)});
  }
  std::cout << "spectrum.csv: " << points << " rows\n";
}

void run_gray(json& cfg, const Emitter& emit) {
  const std::uint32_t c = resolve(cfg, "gray", "c", std::uint32_t{2});
  json& section = require_section(cfg, "gray");
  if (!section.contains("word")) throw olsen::InputError("gray config: missing \"word\"");
  const olsen::Alphabet alphabet(c);
  const olsen::Word w = olsen::Word::parse(section.at("word").get<std::string>());
  const json payload{{"c", c},
                     {"word", w.str()},
                     {"gray", olsen::gray_code(w, alphabet).str()},
                     {"gray_reflected", olsen::gray_code_reflected(w, alphabet).str()},
                     {"gray_inverse", olsen::gray_code_inverse(w, alphabet).str()}};
  emit.json_artifact("gray.json", payload);
  std::cout << payload.dump(2) << "\n";
}

void run_pushforward(json& cfg, const Emitter& emit) {
  const olsen::MeasureSpec spec = measure_from_config(cfg);
  const std::uint64_t level = resolve(cfg, "pushforward", "level", std::uint64_t{1});
  const std::uint64_t index = resolve(cfg, "pushforward", "index", std::uint64_t{0});
  const std::string code = resolve(cfg, "pushforward", "code", std::string("gray"));
  const olsen::PushforwardMeasure pf(spec, olsen::code_from_string(code));
  const olsen::CadicInterval interval(level, index, spec.space.alphabet_1.size);
  const double log_mass = olsen::pushforward_log_mass(pf, interval);
  const json payload{{"level", level},
                     {"index", index},
                     {"code", code},
                     {"log_mass", log_mass},
                     {"mass", std::exp(log_mass)},
                     {"endpoints", {interval.lower_value(), interval.upper_value()}}};
  emit.json_artifact("pushforward.json", payload);
  std::cout << payload.dump(2) << "\n";
}

void run_doubling(json& cfg, const Emitter& emit) {
  const olsen::MeasureSpec spec = measure_from_config(cfg);
  const std::uint32_t max_level = resolve(cfg, "doubling", "max_level", std::uint32_t{10});
  const std::string code = resolve(cfg, "doubling", "code", std::string("gray"));
  const olsen::PushforwardMeasure pf(spec, olsen::code_from_string(code));
  const auto report = olsen::doubling_estimate(pf, max_level);
  CsvWriter csv(emit.out_dir / "doubling.csv");
  csv.row({"level", "ratio", "running_max"});
  for (std::size_t m = 0; m < report.per_level_ratio.size(); ++m)
    csv.row({std::to_string(m + 1), format_double(report.per_level_ratio[m]),
             format_double(report.running_max[m])});
  std::cout << "doubling.csv: overall ratio " << format_double(report.overall) << "\n";
}

void run_sample_exponent(json& cfg, const Emitter& emit) {
  const olsen::MeasureSpec spec = measure_from_config(cfg);
  const std::uint64_t depth = resolve(cfg, "sample", "depth", std::uint64_t{100});
  const std::uint64_t count = resolve(cfg, "sample", "count", std::uint64_t{10});
  const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
  const auto words = olsen::sample_words(spec, depth, count, seed);
  CsvWriter csv(emit.out_dir / "sample_exponent.csv");
  csv.row({"word", "depth", "exponent"});
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::uint64_t n = 1; n <= depth; ++n)
      csv.row({std::to_string(i), std::to_string(n),
               format_double(olsen::running_exponent(spec, words[i], n))});
  std::cout << "sample_exponent.csv: " << count << " words to depth " << depth << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inhomogeneous multinomial measures: Olsen functions, tangent parameter"
               " families, Dirichlet zero counting and Gray-code pushforwards"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path, out_dir = "out";
  std::uint64_t seed = 0;
  int threads = 1;
  app.add_option("--config", config_path, "JSON config (or a previously emitted manifest)");
  app.add_option("--out", out_dir, "output directory for artifacts");
  app.add_option("--seed", seed, "seed for sampling subcommands");
  app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);

  auto* solve = app.add_subcommand("solve", "solve for a tangent parameter pair and certify it");
  std::string solve_base;
  double solve_t = 0.0, solve_w = 0.0;
  solve->add_option("--base", solve_base, "paper-110, paper-9 or a,b,c,d");
  solve->add_option("--t", solve_t, "first perturbation coordinate");
  solve->add_option("--w", solve_w, "second perturbation coordinate");

  auto* zeros = app.add_subcommand("zeros", "count zeros of a Dirichlet polynomial with orders");
  std::string zeros_terms;
  double zeros_lo = -20.0, zeros_hi = 20.0;
  zeros->add_option("--terms", zeros_terms, "JSON [[coefficient, exponent], ...]");
  zeros->add_option("--lo", zeros_lo, "window start");
  zeros->add_option("--hi", zeros_hi, "window end");

  auto* tau = app.add_subcommand("tau", "emit the Olsen b/B curves over a q grid");
  auto* spectrum = app.add_subcommand("spectrum", "emit the dimension spectrum over alpha");
  double grid_min = 0.0, grid_max = 0.0;
  int grid_points = 0;
  for (CLI::App* sub : {tau, spectrum}) {
    sub->add_option("--grid-min", grid_min, "grid start");
    sub->add_option("--grid-max", grid_max, "grid end");
    sub->add_option("--points", grid_points, "grid points");
  }

  auto* gray = app.add_subcommand("gray", "apply the generalized Gray codes to a word");
  std::uint32_t gray_c = 2;
  std::string gray_word;
  gray->add_option("--c", gray_c, "alphabet size");
  gray->add_option("--word", gray_word, "digit string");

  auto* pushforward = app.add_subcommand("pushforward", "mass of one c-adic interval");
  std::uint64_t pf_level = 0, pf_index = 0;
  std::string pf_code;
  pushforward->add_option("--level", pf_level, "interval level");
  pushforward->add_option("--index", pf_index, "interval index");
  pushforward->add_option("--code", pf_code, "gray, gray-reflected or identity");

  auto* doubling = app.add_subcommand("doubling", "adjacent-interval mass ratios per level");
  std::uint32_t dbl_level = 0;
  std::string dbl_code;
  doubling->add_option("--max-level", dbl_level, "deepest level of the sweep");
  doubling->add_option("--code", dbl_code, "gray, gray-reflected or identity");

  auto* sample = app.add_subcommand("sample-exponent", "running exponents along sampled words");
  std::uint64_t sample_depth = 0, sample_count = 0;
  sample->add_option("--depth", sample_depth, "word depth");
  sample->add_option("--count", sample_count, "number of words");

  std::string measure_file;
  app.add_option("--measure", measure_file, "JSON file with a measure config");

  try {
    app.parse(argc, argv);

    json cfg;
    if (!config_path.empty()) {
      cfg = load_json_file(config_path);
      if (cfg.contains("tool") && cfg.contains("config")) cfg = cfg.at("config");  // manifest
    }
    if (!measure_file.empty()) cfg["measure"] = load_json_file(measure_file);

    // Flags passed on the command line override the config file.
    if (app.count("--out")) cfg["out"] = out_dir;
    if (app.count("--seed")) cfg["seed"] = seed;
    if (app.count("--threads")) cfg["threads"] = threads;
    if (!cfg.contains("out")) cfg["out"] = out_dir;
    if (!cfg.contains("seed")) cfg["seed"] = seed;
    if (!cfg.contains("threads")) cfg["threads"] = threads;

    if (solve->parsed()) {
      cfg["subcommand"] = "solve";
      if (solve->count("--base")) {
        if (solve_base.find(',') == std::string::npos) {
          cfg["solver"]["base"] = solve_base;
        } else {
          std::vector<double> vals;
          std::stringstream ss(solve_base);
          std::string item;
          while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
          cfg["solver"]["base"] = vals;
        }
      }
      if (solve->count("--t")) cfg["solver"]["t"] = solve_t;
      if (solve->count("--w")) cfg["solver"]["w"] = solve_w;
    } else if (zeros->parsed()) {
      cfg["subcommand"] = "zeros";
      if (zeros->count("--terms")) cfg["zeros"]["terms"] = json::parse(zeros_terms);
      if (zeros->count("--lo")) cfg["zeros"]["lo"] = zeros_lo;
      if (zeros->count("--hi")) cfg["zeros"]["hi"] = zeros_hi;
    } else if (tau->parsed()) {
      cfg["subcommand"] = "tau";
      if (tau->count("--grid-min")) cfg["grid"]["q_min"] = grid_min;
      if (tau->count("--grid-max")) cfg["grid"]["q_max"] = grid_max;
      if (tau->count("--points")) cfg["grid"]["q_points"] = grid_points;
    } else if (spectrum->parsed()) {
      cfg["subcommand"] = "spectrum";
      if (spectrum->count("--grid-min")) cfg["grid"]["alpha_min"] = grid_min;
      if (spectrum->count("--grid-max")) cfg["grid"]["alpha_max"] = grid_max;
      if (spectrum->count("--points")) cfg["grid"]["alpha_points"] = grid_points;
    } else if (gray->parsed()) {
      cfg["subcommand"] = "gray";
      if (gray->count("--c")) cfg["gray"]["c"] = gray_c;
      if (gray->count("--word")) cfg["gray"]["word"] = gray_word;
    } else if (pushforward->parsed()) {
      cfg["subcommand"] = "pushforward";
      if (pushforward->count("--level")) cfg["pushforward"]["level"] = pf_level;
      if (pushforward->count("--index")) cfg["pushforward"]["index"] = pf_index;
      if (pushforward->count("--code")) cfg["pushforward"]["code"] = pf_code;
    } else if (doubling->parsed()) {
      cfg["subcommand"] = "doubling";
      if (doubling->count("--max-level")) cfg["doubling"]["max_level"] = dbl_level;
      if (doubling->count("--code")) cfg["doubling"]["code"] = dbl_code;
    } else if (sample->parsed()) {
      cfg["subcommand"] = "sample-exponent";
      if (sample->count("--depth")) cfg["sample"]["depth"] = sample_depth;
      if (sample->count("--count")) cfg["sample"]["count"] = sample_count;
    }

    if (!cfg.contains("subcommand"))
      throw olsen::InputError("no subcommand given (on the command line or in the config)");
    const std::string sub = cfg.at("subcommand").get<std::string>();

    const Emitter emit{fs::path(cfg.at("out").get<std::string>())};
    fs::create_directories(emit.out_dir);

    if (sub == "solve")
      run_solve(cfg, emit);
    else if (sub == "zeros")
      run_zeros(cfg, emit);
    else if (sub == "tau")
      run_tau(cfg, emit);
    else if (sub == "spectrum")
      run_spectrum(cfg, emit);
    else if (sub == "gray")
      run_gray(cfg, emit);
    else if (sub == "pushforward")
      run_pushforward(cfg, emit);
    else if (sub == "doubling")
      run_doubling(cfg, emit);
    else if (sub == "sample-exponent")
      run_sample_exponent(cfg, emit);
    else
      throw olsen::InputError("unknown subcommand \"" + sub + "\"");

    const json manifest{{"tool", "olsenmf"}, {"version", olsen::kVersion}, {"config", cfg}};
    write_text(emit.out_dir / "manifest.json", manifest.dump(2) + "\n");
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << json{{"error", {{"kind", "validation"}, {"message", e.what()}}}}.dump() << "\n";
    return 1;
  } catch (const olsen::InputError& e) {
    std::cerr << json{{"error", {{"kind", "validation"}, {"message", e.what()}}}}.dump() << "\n";
    return 1;
  } catch (const olsen::NumericError& e) {
    std::cerr << json{{"error", {{"kind", "numeric"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }
}
