#pragma once

// JSON encodings of library results, run configuration with key=value files,
// and a small on-disk cache guarded by advisory file locks.

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "thermoshift/conformal.hpp"
#include "thermoshift/thermo.hpp"
#include "thermoshift/verify.hpp"

namespace thermoshift::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "thermoshift.report/1";

inline Json to_json(const Window& w) { return Json::array({w.k, w.l}); }

inline Window parse_window(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::InvalidSpec, "window must be 'k,l', got '" + text + "'");
  try {
    return Window(std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1)));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidSpec, "window must be 'k,l', got '" + text + "'");
  }
}

inline Json to_json(const FinitePoint& x, int alphabet_size) {
  return Json{{"window", to_json(x.support())}, {"word", format_word(x.letters(), alphabet_size)}};
}

/// Accepts {"window":[k,l],"word":"..."} or {"window":[k,l],"letters":[...]}.
inline FinitePoint parse_point(const std::string& text, int alphabet_size) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("point is not valid JSON: ") + e.what());
  }
  try {
    Window w(j.at("window").at(0).get<Coord>(), j.at("window").at(1).get<Coord>());
    Word letters;
    if (j.contains("letters"))
      letters = j.at("letters").get<Word>();
    else
      letters = parse_word(j.at("word").get<std::string>(), alphabet_size);
    for (Letter a : letters)
      if (a < 0 || a >= alphabet_size) throw Error(ErrorCode::AlphabetError, "point letter outside alphabet");
    return FinitePoint(w, letters);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("point needs 'window' and 'word': ") + e.what());
  }
}

inline Json beta_json(const BetaNumber& beta) {
  beta.refine(Rational(1, Integer(1) << 60));
  Interval e = beta.enclosure();
  auto [log_lo, log_hi] = beta.log_enclosure();
  return Json{{"spec", beta.spec()},
              {"degree", beta.degree()},
              {"enclosure", Json::array({e.lo.get_str(), e.hi.get_str()})},
              {"enclosure_approx", Json::array({e.lo.get_d(), e.hi.get_d()})},
              {"log_enclosure", Json::array({log_lo, log_hi})}};
}

inline Json to_json(const CylinderMeasure& mu, const std::string& beta_spec, const std::string& f_spec,
                    int alphabet_size) {
  Json weights = Json::object();
  for (const auto& [w, p] : mu.weights) weights[format_word(w, alphabet_size)] = p;
  return Json{{"window", to_json(mu.window)}, {"beta", beta_spec}, {"f", f_spec}, {"weights", weights}};
}

inline CylinderMeasure measure_from_json(const Json& j, int alphabet_size) {
  CylinderMeasure mu{Window(j.at("window").at(0).get<Coord>(), j.at("window").at(1).get<Coord>()), {}};
  for (const auto& [key, value] : j.at("weights").items()) mu.weights[parse_word(key, alphabet_size)] = value.get<double>();
  return mu;
}

inline Json to_json(const KernelRow& row, int b) {
  Json support = Json::array();
  for (std::size_t i = 0; i < row.support.size(); ++i)
    support.push_back(Json{{"point", to_json(row.support[i], b)}, {"weight", row.weights[i]},
                           {"log_weight", row.log_weights[i]}});
  return Json{{"base", to_json(row.base, b)}, {"window", to_json(row.window)}, {"size", row.support.size()},
              {"slack", row.slack}, {"support", support}};
}

inline Json to_json(const ProbeResult& p, int b) {
  Json tried = Json::array();
  for (const auto& t : p.tried)
    tried.push_back(Json{{"radius", t.radius}, {"extended", to_json(t.extended)}, {"points", t.points},
                         {"collars", t.collars}, {"violated", t.violated}});
  Json out{{"window", to_json(p.window)}, {"depth", p.depth}, {"tried", tried}};
  out["verdict"] = p.witness ? "witness" : "violation";
  out["witness"] = p.witness ? to_json(*p.witness) : Json(nullptr);
  if (p.violation)
    out["violation"] = Json{{"x", to_json(p.violation->x, b)}, {"x_prime", to_json(p.violation->x_prime, b)},
                            {"v", format_word(p.violation->v, b)}};
  else
    out["violation"] = nullptr;
  out["note"] = p.witness ? "no violation up to the tested depth" : "violation found at every tested radius";
  return out;
}

inline Json to_json(const ConformalityReport& r) {
  return Json{{"residual", r.residual}, {"slack", r.slack},   {"a2_count", r.a2_count},
              {"b2_count", r.b2_count}, {"a2_mass", r.a2_mass}, {"b2_mass", r.b2_mass},
              {"weighted_a2", r.weighted_a2}, {"r", r.r}, {"t", r.t}};
}

inline Json to_json(const MarginReport& m) {
  return Json{{"n", m.n}, {"pressure", m.pressure}, {"depths", m.depths}, {"orbit_averages", m.orbit_averages},
              {"margin", m.margin}};
}

inline Json to_json(const PrefixDecay& d) {
  return Json{{"kappa", d.kappa},   {"intercept", d.intercept}, {"fit_from", d.fit_from},
              {"lengths", d.lengths}, {"neg_log_mass", d.neg_log_mass}, {"residuals", d.residuals},
              {"margin", to_json(d.margin)}};
}

inline Json to_json(const verify::CriterionResult& r) {
  Json metrics = Json::object();
  for (const auto& m : r.metrics) metrics[m.name] = m.value;
  return Json{{"id", r.id},         {"title", r.title},     {"passed", r.passed},
              {"detail", r.detail}, {"note", r.note}, {"metrics", metrics}, {"seconds", r.seconds}};
}

/// Run parameters shared by all commands.
struct RunConfig {
  std::string beta;
  std::string f = "zero";
  std::size_t n = 8;
  std::optional<std::size_t> m;  // default 2n
  std::optional<std::size_t> r;
  std::optional<std::size_t> t;
  std::size_t tail_depth = kDefaultTailDepth;
  double tolerance = kDefaultTailTolerance;
  std::size_t budget = kDefaultWordBudget;
  std::uint64_t seed = 20240611;
  std::string out;
  std::string csv;
  std::string cache_dir;

  std::size_t boundary_depth() const { return m.value_or(2 * n); }

  void validate() const {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    if (boundary_depth() < n) throw Error(ErrorCode::InvalidArgument, "m must be >= n");
    if (r && *r == 0) throw Error(ErrorCode::InvalidArgument, "r must be positive");
    if (t && *t == 0) throw Error(ErrorCode::InvalidArgument, "t must be positive");
    if (r && t && *t < *r) throw Error(ErrorCode::InvalidArgument, "t must be >= r");
    if (tail_depth == 0) throw Error(ErrorCode::InvalidArgument, "tail depth must be positive");
    if (!(tolerance > 0.0 && tolerance < 1.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must lie in (0, 1)");
    if (budget == 0) throw Error(ErrorCode::InvalidArgument, "budget must be positive");
  }

  Json to_json() const {
    auto opt = [](const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); };
    return Json{{"beta", beta},       {"f", f},
                {"n", n},             {"m", boundary_depth()},
                {"r", opt(r)},        {"t", opt(t)},
                {"tail_depth", tail_depth}, {"tolerance", tolerance},
                {"budget", budget},   {"seed", seed}};
  }
};

inline Json make_report(const std::string& command, const RunConfig& cfg, const Json& extra_config,
                        const BetaNumber* beta, Json result) {
  Json config = cfg.to_json();
  for (const auto& [k, v] : extra_config.items()) config[k] = v;
  Json report{{"schema", kSchema}, {"command", command}, {"config", config}};
  report["beta"] = beta ? beta_json(*beta) : Json(nullptr);
  report["result"] = std::move(result);
  return report;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// JSON values on disk, one file per key, shared/exclusive flock around access.
class Cache {
 public:
  Cache() = default;
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// THERMOSHIFT_CACHE, else the explicit directory, else $HOME/.cache/thermoshift.
  static Cache from_environment(const std::string& explicit_dir) {
    if (const char* env = std::getenv("THERMOSHIFT_CACHE"); env && *env) return Cache(env);
    if (!explicit_dir.empty()) return Cache(explicit_dir);
    if (const char* home = std::getenv("HOME"); home && *home)
      return Cache(std::filesystem::path(home) / ".cache" / "thermoshift");
    return Cache();
  }

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& dir() const { return dir_; }

  static std::string key(const std::string& kind, const std::string& beta, const std::string& f, std::size_t n) {
    return kind + "|" + beta + "|" + f + "|" + std::to_string(n);
  }

  std::optional<Json> get(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    auto path = file_for(key);
    int fd = ::open(path.c_str(), O_RDONLY);
    if (fd < 0) return std::nullopt;
    ::flock(fd, LOCK_SH);
    std::optional<Json> out;
    try {
      std::ifstream in(path);
      Json j = Json::parse(in);
      if (j.value("key", "") == key) out = j.at("value");
    } catch (const std::exception&) {
      out.reset();
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
    return out;
  }

  void put(const std::string& key, const Json& value) const {
    if (!enabled()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return;
    auto path = file_for(key);
    int fd = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd < 0) return;
    ::flock(fd, LOCK_EX);
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << Json{{"key", key}, {"value", value}}.dump();
    }
    std::filesystem::rename(tmp, path, ec);
    ::flock(fd, LOCK_UN);
    ::close(fd);
  }

 private:
  std::filesystem::path file_for(const std::string& key) const {
    std::ostringstream name;
    name << std::hex << fnv1a(key) << ".json";
    return dir_ / name.str();
  }

  std::filesystem::path dir_;
};

}  // namespace thermoshift::io
