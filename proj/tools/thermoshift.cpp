// thermoshift command-line front-end.
//
// Exit codes: 0 success, 1 invalid input, 2 enumeration budget exhausted,
// 3 a verify criterion failed.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "thermoshift/io.hpp"

namespace ts = thermoshift;
using ts::io::Json;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitBudget = 2;
constexpr int kExitTolerance = 3;

struct Options {
  ts::io::RunConfig run;
  std::string window;
  std::string point;
  std::string target;
  std::string u;
  std::string v;
  std::string word;
  std::string measure = "cesaro";
  std::string suite = "core";
  std::string secondary = "rational:5/2";
  std::size_t radius = 2;
  std::size_t depth = 3;
};

void emit(const Json& report, const Options& opt) {
  if (opt.run.out.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(opt.run.out);
  if (!out) throw ts::Error(ts::ErrorCode::InvalidArgument, "cannot write " + opt.run.out);
  out << report.dump(2) << "\n";
  std::cout << "wrote " << opt.run.out << "\n";
}

void write_csv(const std::string& path, const std::string& header, const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw ts::Error(ts::ErrorCode::InvalidArgument, "cannot write " + path);
  out.precision(17);
  out << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

const std::string& require_beta(const Options& opt) {
  if (opt.run.beta.empty()) throw ts::Error(ts::ErrorCode::InvalidSpec, "missing --beta");
  return opt.run.beta;
}

const std::string& require(const std::string& value, const char* flag) {
  if (value.empty()) throw ts::Error(ts::ErrorCode::InvalidSpec, std::string("missing ") + flag);
  return value;
}

ts::TailOptions tail_options(const Options& opt) { return {opt.run.tail_depth, opt.run.tolerance}; }

int cmd_lang(const std::string& action, const Options& opt) {
  auto lang = ts::BetaLanguage::parse(require_beta(opt));
  auto cache = ts::io::Cache::from_environment(opt.run.cache_dir);
  const int b = lang.alphabet_size();
  if (action == "expand") {
    auto key = ts::io::Cache::key("digits", lang.beta().spec(), "", opt.run.n);
    ts::Word digits;
    if (auto hit = cache.get(key)) {
      digits = hit->get<ts::Word>();
    } else {
      digits = lang.expand(opt.run.n);
      cache.put(key, digits);
    }
    std::cout << ts::format_word(digits, b) << "\n";
    if (lang.digits().zero_run_warning()) std::cerr << "note: long zero runs in the expansion\n";
  } else if (action == "count") {
    std::cout << lang.count(opt.run.n).get_str() << "\n";
  } else if (action == "check") {
    ts::Word w = ts::parse_word(require(opt.word, "--word"), b);
    auto state = lang.run(w);
    if (!state) {
      std::cout << "inadmissible\n";
      return 0;
    }
    auto split = lang.suffix_decompose(w);
    std::cout << "admissible state=" << *state << " s(w)=" << ts::format_word(split.suffix, b)
              << " hat=" << ts::format_word(lang.hat(w), b) << " z=" << lang.z_value(w) << "\n";
  } else if (action == "enum") {
    lang.for_each_word(opt.run.n, [&](const ts::Word& w) { std::cout << ts::format_word(w, b) << "\n"; }, opt.run.budget);
  }
  return 0;
}

int cmd_kernel(const Options& opt) {
  auto space = ts::ShiftSpace::parse(require_beta(opt));
  const int b = space.alphabet_size();
  auto f = ts::Potential::parse(opt.run.f, b);
  ts::Window L = ts::io::parse_window(require(opt.window, "--window"));
  ts::FinitePoint x = opt.point.empty() ? ts::FinitePoint::zero() : ts::io::parse_point(opt.point, b);
  auto row = ts::kernel_row(space, f, x, L, tail_options(opt));
  Json extra{{"window", ts::io::to_json(L)}, {"point", ts::io::to_json(x, b)}};
  emit(ts::io::make_report("kernel", opt.run, extra, &space.language().beta(), ts::io::to_json(row, b)), opt);
  return 0;
}

int cmd_probe(const Options& opt) {
  auto space = ts::ShiftSpace::parse(require_beta(opt));
  ts::Window L = ts::io::parse_window(require(opt.window, "--window"));
  auto res = ts::weak_dependence_probe(space, L, opt.radius, opt.depth, opt.run.budget);
  Json extra{{"window", ts::io::to_json(L)}, {"radius", opt.radius}, {"depth", opt.depth}};
  emit(ts::io::make_report("probe-markov", opt.run, extra, &space.language().beta(),
                           ts::io::to_json(res, space.alphabet_size())),
       opt);
  return 0;
}

int cmd_conformal(const Options& opt) {
  auto space = ts::ShiftSpace::parse(require_beta(opt));
  const int b = space.alphabet_size();
  auto f = ts::Potential::parse(opt.run.f, b);
  ts::Window L = ts::io::parse_window(require(opt.window, "--window"));
  ts::Involution phi(L, ts::parse_word(require(opt.u, "--u"), b), ts::parse_word(require(opt.v, "--v"), b));
  const std::size_t n = opt.run.n;
  ts::Window frame = L.extended(static_cast<ts::Coord>(n));
  ts::CylinderMeasure mu;
  if (opt.measure == "cesaro") {
    mu = ts::cesaro_equilibrium(space, f, opt.run.boundary_depth(), frame, opt.run.budget);
  } else if (opt.measure == "markov") {
    mu = ts::oracle::MarkovOracle(space.language(), f).measure(frame);
  } else {
    throw ts::Error(ts::ErrorCode::InvalidArgument, "measure must be 'cesaro' or 'markov'");
  }
  ts::ConformalityOptions copts{opt.run.r, opt.run.t};
  auto rep = ts::conformality_residual(space, f, mu, phi, n, copts);
  Json extra{{"window", ts::io::to_json(L)}, {"u", opt.u}, {"v", opt.v}, {"measure", opt.measure}};
  emit(ts::io::make_report("conformal-check", opt.run, extra, &space.language().beta(), ts::io::to_json(rep)), opt);
  return 0;
}

int cmd_pressure(const Options& opt) {
  auto space = ts::ShiftSpace::parse(require_beta(opt));
  auto f = ts::Potential::parse(opt.run.f, space.alphabet_size());
  auto cache = ts::io::Cache::from_environment(opt.run.cache_dir);
  auto key = ts::io::Cache::key("pressure", space.language().beta().spec(), f.spec(), opt.run.n);
  ts::PressureSequence seq;
  if (auto hit = cache.get(key)) {
    seq.values = hit->at("values").get<std::vector<double>>();
    seq.cauchy_gaps = hit->at("cauchy_gaps").get<std::vector<double>>();
  } else {
    seq = ts::pressure_estimate(space, f, opt.run.n);
    cache.put(key, Json{{"values", seq.values}, {"cauchy_gaps", seq.cauchy_gaps}});
  }
  if (!opt.run.csv.empty()) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < seq.values.size(); ++i)
      rows.push_back({static_cast<double>(i + 1), seq.values[i], i == 0 ? 0.0 : seq.cauchy_gaps[i - 1]});
    write_csv(opt.run.csv, "n,pressure,cauchy_gap", rows);
  }
  auto [lo, hi] = space.language().beta().log_enclosure();
  Json result{{"values", seq.values}, {"cauchy_gaps", seq.cauchy_gaps}, {"last", seq.values.back()},
              {"log_beta", 0.5 * (lo + hi)}};
  emit(ts::io::make_report("pressure", opt.run, Json::object(), &space.language().beta(), result), opt);
  return 0;
}

int cmd_equilibrium(const Options& opt) {
  auto space = ts::ShiftSpace::parse(require_beta(opt));
  auto f = ts::Potential::parse(opt.run.f, space.alphabet_size());
  ts::Window target = ts::io::parse_window(require(opt.target, "--target"));
  auto nu = ts::cesaro_equilibrium(space, f, opt.run.n, target, opt.run.budget);
  Json extra{{"target", ts::io::to_json(target)}};
  emit(ts::io::make_report("equilibrium", opt.run, extra, &space.language().beta(),
                           ts::io::to_json(nu, space.language().beta().spec(), f.spec(), space.alphabet_size())),
       opt);
  return 0;
}

int cmd_decay(const Options& opt) {
  auto space = ts::ShiftSpace::parse(require_beta(opt));
  auto f = ts::Potential::parse(opt.run.f, space.alphabet_size());
  auto d = ts::prefix_decay(space, f, opt.run.n);
  if (!opt.run.csv.empty()) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < d.lengths.size(); ++i) rows.push_back({static_cast<double>(d.lengths[i]), d.neg_log_mass[i]});
    write_csv(opt.run.csv, "j,neg_log_mass", rows);
  }
  emit(ts::io::make_report("decay", opt.run, Json::object(), &space.language().beta(), ts::io::to_json(d)), opt);
  return 0;
}

int cmd_margin(const Options& opt) {
  auto space = ts::ShiftSpace::parse(require_beta(opt));
  auto f = ts::Potential::parse(opt.run.f, space.alphabet_size());
  auto m = ts::margin_check(space, f, opt.run.n);
  emit(ts::io::make_report("margin", opt.run, Json::object(), &space.language().beta(), ts::io::to_json(m)), opt);
  return 0;
}

int cmd_verify(const Options& opt) {
  if (opt.suite != "core") throw ts::Error(ts::ErrorCode::InvalidArgument, "unknown suite '" + opt.suite + "'");
  ts::verify::Config cfg;
  if (!opt.run.beta.empty()) cfg.primary = opt.run.beta;
  cfg.secondary = opt.secondary;
  cfg.seed = opt.run.seed;
  auto primary = ts::BetaNumber::parse(cfg.primary);
  ts::BetaNumber::parse(cfg.secondary);
  Json results = Json::array();
  bool all = true;
  for (const auto& c : ts::verify::all_criteria()) {
    auto r = ts::verify::run(c, cfg);
    std::cerr << ts::verify::summary_line(r) << "\n";
    all = all && r.passed;
    Json j = ts::io::to_json(r);
    j.erase("seconds");  // keeps reports reproducible
    results.push_back(j);
  }
  Json extra{{"suite", opt.suite}, {"primary", cfg.primary}, {"secondary", cfg.secondary}};
  emit(ts::io::make_report("verify", opt.run, extra, &primary, Json{{"passed", all}, {"criteria", results}}), opt);
  return all ? 0 : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermodynamic formalism on beta-shifts"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file (flags take precedence)");
  Options opt;
  auto& run = opt.run;
  app.add_option("--beta", run.beta, "beta: golden, rational:p/q, decimal:x, poly:c0,...,cd@[lo,hi]");
  app.add_option("--f", run.f, "potential spec")->capture_default_str();
  app.add_option("-n,--n", run.n, "depth / length / volume half-width")->capture_default_str();
  app.add_option("-m,--m", run.m, "boundary depth (default 2n)");
  app.add_option("-r,--r", run.r, "cocycle truncation radius");
  app.add_option("-t,--t", run.t, "projection depth for truncated cocycles");
  app.add_option("--tail-depth", run.tail_depth, "Birkhoff-sum cut-off")->capture_default_str();
  app.add_option("--tolerance", run.tolerance, "certified truncation tolerance")->capture_default_str();
  app.add_option("--budget", run.budget, "enumeration budget")->capture_default_str();
  app.add_option("--seed", run.seed, "random seed")->capture_default_str();
  app.add_option("--out", run.out, "write the JSON report to a file");
  app.add_option("--csv", run.csv, "write the sequence as CSV");
  app.add_option("--cache-dir", run.cache_dir, "cache directory (THERMOSHIFT_CACHE overrides)");

  auto* lang = app.add_subcommand("lang", "digits and language of the beta-shift");
  lang->require_subcommand(1);
  lang->fallthrough();
  std::string lang_action;
  for (const char* action : {"expand", "count", "check", "enum"}) {
    auto* sub = lang->add_subcommand(action, std::string(action) + " words");
    sub->fallthrough();
    sub->callback([&lang_action, action] { lang_action = action; });
    if (std::string(action) == "check") sub->add_option("--word", opt.word, "word to test")->required();
  }

  auto* kernel = app.add_subcommand("kernel", "finite-volume Gibbs kernel row");
  kernel->add_option("--window", opt.window, "window k,l");
  kernel->add_option("--point", opt.point, R"(base point as JSON {"window":[k,l],"word":"..."})");

  auto* probe = app.add_subcommand("probe-markov", "search for the weak-dependence property");
  probe->add_option("--window", opt.window, "window k,l");
  probe->add_option("--radius", opt.radius, "largest collar radius")->capture_default_str();
  probe->add_option("--depth", opt.depth, "tail depth of the enumeration")->capture_default_str();

  auto* conformal = app.add_subcommand("conformal-check", "conformality residual of an involution");
  conformal->add_option("--window", opt.window, "window k,l");
  conformal->add_option("--u", opt.u, "first block");
  conformal->add_option("--v", opt.v, "second block");
  conformal->add_option("--measure", opt.measure, "cesaro or markov")->capture_default_str();

  auto* pressure = app.add_subcommand("pressure", "pressure sequence P_[-n,n]");
  auto* equilibrium = app.add_subcommand("equilibrium", "Cesaro equilibrium approximant");
  equilibrium->add_option("--target", opt.target, "target window k,l");
  auto* decay = app.add_subcommand("decay", "prefix decay rate");
  auto* margin = app.add_subcommand("margin", "equilibrium margin");
  auto* verify = app.add_subcommand("verify", "acceptance suite");
  verify->add_option("--suite", opt.suite, "suite name")->capture_default_str();
  verify->add_option("--secondary", opt.secondary, "second beta of the suite")->capture_default_str();
  for (auto* sub : {kernel, probe, conformal, pressure, equilibrium, decay, margin, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kExitInvalid;
  }

  try {
    run.validate();
    if (lang->parsed()) return cmd_lang(lang_action, opt);
    if (kernel->parsed()) return cmd_kernel(opt);
    if (probe->parsed()) return cmd_probe(opt);
    if (conformal->parsed()) return cmd_conformal(opt);
    if (pressure->parsed()) return cmd_pressure(opt);
    if (equilibrium->parsed()) return cmd_equilibrium(opt);
    if (decay->parsed()) return cmd_decay(opt);
    if (margin->parsed()) return cmd_margin(opt);
    if (verify->parsed()) return cmd_verify(opt);
  } catch (const ts::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == ts::ErrorCode::InvalidSpec && std::string(e.what()).find("missing") != std::string::npos)
      std::cerr << app.help();
    return e.code() == ts::ErrorCode::BudgetExceeded ? kExitBudget : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
