#include "obsidx/run.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "obsidx/burgers.hpp"
#include "obsidx/consistency.hpp"
#include "obsidx/error.hpp"
#include "obsidx/heat.hpp"
#include "obsidx/parallel.hpp"
#include "obsidx/wave.hpp"

namespace obsidx {

namespace {

using ordered_json = nlohmann::ordered_json;

enum class Kind { Real, Count, CountList, RealList, Choice, Bool, Seed, Path };

struct KeySpec {
  Kind kind;
  std::string fallback;
  std::vector<std::string> choices;
};

using SpecTable = std::map<std::string, KeySpec>;

std::string join_counts(std::size_t first, std::size_t last, std::size_t step) {
  std::string out;
  for (std::size_t n = first; n <= last; n += step) out += (out.empty() ? "" : ",") + std::to_string(n);
  return out;
}

const SpecTable& specs(Experiment e) {
  static const auto build = [](Experiment exp) {
    const std::string name = to_string(exp);
    SpecTable t{
        {"seed", {Kind::Seed, "0", {}}},
        {"threads", {Kind::Count, "0", {}}},
        {"out_csv", {Kind::Path, name + ".csv", {}}},
        {"out_manifest", {Kind::Path, name + ".manifest.json", {}}},
        {"csv_timing", {Kind::Bool, "false", {}}},
    };
    const std::string two_pi = format_number(2.0 * std::numbers::pi);
    switch (exp) {
      case Experiment::HeatGramian:
        t.insert({{"length", {Kind::Real, two_pi, {}}},
                  {"horizon", {Kind::Real, "10", {}}},
                  {"sensor_x", {Kind::Real, "0.5", {}}},
                  {"n_max", {Kind::Count, "8", {}}},
                  {"n_list", {Kind::CountList, "", {}}},
                  {"method", {Kind::Choice, "gramian", {"gramian", "quadrature", "empirical", "direct"}}},
                  {"basis_size", {Kind::Count, "0", {}}},
                  {"rho", {Kind::Real, "1", {}}},
                  {"quad_samples", {Kind::Count, std::to_string(heat::kDefaultTimeSamples), {}}},
                  {"restarts", {Kind::Count, "8", {}}},
                  {"max_iters", {Kind::Count, "200", {}}}});
        break;
      case Experiment::WaveRatio:
        t.insert({{"length", {Kind::Real, "1", {}}},
                  {"horizon", {Kind::Real, "2.5", {}}},
                  {"n_list", {Kind::CountList, "10,20,40,80", {}}},
                  {"initial_mode", {Kind::Count, "0", {}}},
                  {"quad_factor", {Kind::Count, "64", {}}}});
        break;
      case Experiment::BurgersIndex:
        t.insert({{"length", {Kind::Real, two_pi, {}}},
                  {"horizon", {Kind::Real, "5", {}}},
                  {"kappa", {Kind::Real, "0.14", {}}},
                  {"sensor_steps", {Kind::Count, "20", {}}},
                  {"sensor_x", {Kind::RealList, "", {}}},
                  {"kf", {Kind::Count, "2", {}}},
                  {"rho", {Kind::Real, "0.1", {}}},
                  {"method", {Kind::Choice, "empirical", {"empirical", "direct"}}},
                  {"dt", {Kind::Real, "0", {}}},
                  {"dt_scale", {Kind::Real, "1", {}}},
                  {"n_list", {Kind::CountList, join_counts(20, 76, 4), {}}},
                  {"restarts", {Kind::Count, "8", {}}},
                  {"max_iters", {Kind::Count, "200", {}}}});
        break;
    }
    return t;
  };
  static const SpecTable heat_t = build(Experiment::HeatGramian);
  static const SpecTable wave_t = build(Experiment::WaveRatio);
  static const SpecTable burgers_t = build(Experiment::BurgersIndex);
  switch (e) {
    case Experiment::HeatGramian: return heat_t;
    case Experiment::WaveRatio: return wave_t;
    case Experiment::BurgersIndex: return burgers_t;
  }
  return heat_t;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::optional<double> parse_real(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> parse_u64(const std::string& s) {
  const std::string t = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

// Canonical string form of a value, or nullopt if malformed.
std::optional<std::string> normalize(const KeySpec& spec, const std::string& raw) {
  const std::string value = trim(raw);
  switch (spec.kind) {
    case Kind::Real: {
      const auto v = parse_real(value);
      return v ? std::optional(format_number(*v)) : std::nullopt;
    }
    case Kind::Count:
    case Kind::Seed: {
      const auto v = parse_u64(value);
      return v ? std::optional(std::to_string(*v)) : std::nullopt;
    }
    case Kind::CountList:
    case Kind::RealList: {
      std::string out;
      for (const std::string& item : split_list(value)) {
        std::optional<std::string> one;
        if (spec.kind == Kind::CountList) {
          const auto v = parse_u64(item);
          if (v) one = std::to_string(*v);
        } else {
          const auto v = parse_real(item);
          if (v) one = format_number(*v);
        }
        if (!one) return std::nullopt;
        out += (out.empty() ? "" : ",") + *one;
      }
      return out;
    }
    case Kind::Choice:
      for (const std::string& c : spec.choices)
        if (c == value) return value;
      if (value == "direct-search")
        for (const std::string& c : spec.choices)
          if (c == "direct") return c;
      return std::nullopt;
    case Kind::Bool:
      if (value == "true" || value == "1" || value == "yes") return std::string("true");
      if (value == "false" || value == "0" || value == "no") return std::string("false");
      return std::nullopt;
    case Kind::Path:
      return value;
  }
  return std::nullopt;
}

double real_of(const RunConfig& c, const std::string& key) { return *parse_real(c.get(key)); }
std::size_t count_of(const RunConfig& c, const std::string& key) {
  return static_cast<std::size_t>(*parse_u64(c.get(key)));
}
std::vector<std::size_t> counts_of(const RunConfig& c, const std::string& key) {
  std::vector<std::size_t> out;
  for (const std::string& s : split_list(c.get(key))) out.push_back(static_cast<std::size_t>(*parse_u64(s)));
  return out;
}
Vector reals_of(const RunConfig& c, const std::string& key) {
  Vector out;
  for (const std::string& s : split_list(c.get(key))) out.push_back(*parse_real(s));
  return out;
}

void require_ascending(const std::vector<std::size_t>& ns) {
  require(!ns.empty(), "n_list must not be empty");
  for (std::size_t i = 1; i < ns.size(); ++i)
    require(ns[i] > ns[i - 1], "n_list must be strictly ascending");
}

unsigned thread_count(const RunConfig& c) {
  const std::size_t t = count_of(c, "threads");
  return t == 0 ? default_thread_count() : static_cast<unsigned>(t);
}

DirectSearchOptions direct_options(const RunConfig& c) {
  DirectSearchOptions d;
  d.restarts = count_of(c, "restarts");
  d.max_iterations = count_of(c, "max_iters");
  d.seed = *parse_u64(c.get("seed"));
  return d;
}

// Per-experiment result before serialization.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<double> wall_times;
  ordered_json diagnostics = ordered_json::object();
  std::vector<std::string> summary_lines;
};

void append_series(Table& table, const StudySeries& series, RunOutput& out) {
  table.columns = {"n", "sigma_min", "epsilon", "index"};
  for (const StudyRecord& r : series.records) {
    table.rows.push_back({static_cast<double>(r.n), r.sigma_min, r.epsilon, r.index});
    table.wall_times.push_back(r.wall_time_s);
    if (!r.ok()) {
      out.errors.push_back("n=" + std::to_string(r.n) + ": " + r.error);
      out.warnings.push_back("resolution n=" + std::to_string(r.n) + " failed and is reported as nan");
    }
  }
}

ordered_json diagnostics_json(const ConvergenceReport& rep) {
  ordered_json d;
  d["plateau_index"] = rep.plateau;
  d["last_relative_change"] = rep.last_change;
  d["trailing_changes_below_1pct"] = rep.trailing_stable;
  d["converged"] = rep.converged;
  d["relative_changes"] = rep.changes;
  ordered_json table = ordered_json::array();
  for (std::size_t i = 0; i < rep.cauchy.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < rep.cauchy.cols(); ++j) row.push_back(rep.cauchy(i, j));
    table.push_back(row);
  }
  d["cauchy_table"] = table;
  return d;
}

void add_convergence(Table& table, const StudySeries& series, RunOutput& out) {
  std::size_t ok = 0;
  for (const StudyRecord& r : series.records) ok += (r.ok() && std::isfinite(r.index)) ? 1 : 0;
  if (ok < 3) {
    out.warnings.push_back("fewer than 3 successful resolutions: no convergence diagnostics");
    return;
  }
  const ConvergenceReport rep = convergence_diagnostics(series);
  table.diagnostics["convergence"] = diagnostics_json(rep);
  table.summary_lines.push_back("plateau index " + format_number(rep.plateau) +
                                (rep.converged ? " (converged" : " (not converged") +
                                ", last relative change " + format_number(rep.last_change) + ")");
  if (!rep.converged) out.warnings.push_back("index series did not converge");
}

Table run_heat(const RunConfig& c, RunOutput& out) {
  heat::HeatModel base;
  base.length = real_of(c, "length");
  base.horizon = real_of(c, "horizon");
  base.sensor_x = real_of(c, "sensor_x");
  std::vector<std::size_t> ns = counts_of(c, "n_list");
  if (ns.empty()) {
    const std::size_t n_max = count_of(c, "n_max");
    require(n_max >= 1, "n_max must be >= 1");
    for (std::size_t n = 1; n <= n_max; ++n) ns.push_back(n);
  }
  require_ascending(ns);
  require(ns.front() >= 1, "heat: n must be >= 1");
  base.validate();

  const std::string method = c.get("method");
  const std::size_t quad = count_of(c, "quad_samples");
  Table table;
  StudySeries series;
  if (method == "gramian") {
    series = heat::sigma_min_series(base, ns);
  } else if (method == "quadrature") {
    require(quad >= 2, "quad_samples must be >= 2");
    series.method = "quadrature";
    for (std::size_t n : ns) {
      const auto start = std::chrono::steady_clock::now();
      heat::HeatModel m = base;
      m.modes = n;
      StudyRecord r;
      r.n = n;
      r.sigma_min = sym_eig(heat::gramian_quadrature(m, quad)).values.front();
      r.epsilon = std::sqrt(std::max(r.sigma_min, 0.0));
      r.index = 1.0 / r.epsilon;
      r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      series.records.push_back(r);
    }
  } else {
    const std::size_t basis_size = count_of(c, "basis_size");
    require(basis_size <= ns.front(), "basis_size must not exceed the smallest n");
    SweepOptions opts;
    opts.rho = real_of(c, "rho");
    opts.direct = direct_options(c);
    opts.threads = thread_count(c);
    require(opts.rho > 0.0, "rho must be positive");
    series = sweep(
        [&](std::size_t n) {
          heat::HeatModel m = base;
          m.modes = n;
          return heat::make_problem(m, basis_size == 0 ? n : basis_size, quad);
        },
        ns, parse_sweep_method(method), opts);
  }
  append_series(table, series, out);

  for (const StudyRecord& r : series.records) {
    if (r.n == 1 && r.ok() && method == "gramian") {
      out.warnings.push_back("sigma_min at n=1 evaluates analytically to " + format_number(r.sigma_min) +
                             "; a value near 1.216 corresponds to a factor-10 rescaled gramian");
    }
  }
  if (series.records.size() >= 2) {
    bool decreasing = true;
    for (std::size_t i = 1; i < series.records.size(); ++i)
      decreasing = decreasing && series.records[i].sigma_min < series.records[i - 1].sigma_min;
    table.diagnostics["sigma_min_strictly_decreasing"] = decreasing;
    table.diagnostics["sigma_min_last_over_first"] =
        series.records.back().sigma_min / series.records.front().sigma_min;
  }
  return table;
}

Table run_wave(const RunConfig& c, RunOutput&) {
  wave::WaveModel base;
  base.length = real_of(c, "length");
  base.horizon = real_of(c, "horizon");
  base.initial_mode = count_of(c, "initial_mode");
  base.quad_factor = count_of(c, "quad_factor");
  const std::vector<std::size_t> ns = counts_of(c, "n_list");
  require_ascending(ns);
  for (std::size_t n : ns) {
    wave::WaveModel m = base;
    m.interior = n;
    m.validate();
  }
  const std::vector<wave::RatioRecord> records = wave::observability_ratio_sweep(base, ns);

  Table table;
  table.columns = {"n", "initial_mode", "energy", "boundary_energy", "ratio"};
  ordered_json growth = ordered_json::array();
  bool increasing = true;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    table.rows.push_back({static_cast<double>(r.n), static_cast<double>(r.initial_mode), r.energy,
                          r.boundary_energy, r.ratio});
    table.wall_times.push_back(r.wall_time_s);
    if (i > 0) {
      growth.push_back(r.ratio / records[i - 1].ratio);
      increasing = increasing && r.ratio > records[i - 1].ratio;
    }
  }
  table.diagnostics["ratio_growth_factors"] = growth;
  table.diagnostics["ratio_strictly_increasing"] = increasing;
  table.summary_lines.push_back(std::string("ratio strictly increasing: ") + (increasing ? "yes" : "no"));
  return table;
}

Table run_burgers(const RunConfig& c, RunOutput& out) {
  burgers::BurgersModel base;
  base.length = real_of(c, "length");
  base.horizon = real_of(c, "horizon");
  base.kappa = real_of(c, "kappa");
  base.sensor_steps = count_of(c, "sensor_steps");
  base.sensor_x = reals_of(c, "sensor_x");
  if (base.sensor_x.empty()) base.sensor_x = burgers::BurgersModel::default_sensors(base.length);
  base.kf = count_of(c, "kf");
  burgers::IntegratorOptions integ{real_of(c, "dt"), real_of(c, "dt_scale")};
  require(integ.dt >= 0.0, "dt must be >= 0");
  require(integ.dt_scale > 0.0, "dt_scale must be positive");

  const std::vector<std::size_t> ns = counts_of(c, "n_list");
  require_ascending(ns);
  for (std::size_t n : ns) {
    burgers::BurgersModel m = base;
    m.intervals = n;
    m.validate();
  }

  SweepOptions opts;
  opts.rho = real_of(c, "rho");
  require(opts.rho > 0.0, "rho must be positive");
  opts.direct = direct_options(c);
  opts.threads = thread_count(c);
  opts.metadata = {{"model", "burgers"}, {"kf", std::to_string(base.kf)}};
  const StudySeries series = sweep(
      [&](std::size_t n) {
        burgers::BurgersModel m = base;
        m.intervals = n;
        return burgers::make_problem(m, integ);
      },
      ns, parse_sweep_method(c.get("method")), opts);

  Table table;
  append_series(table, series, out);
  add_convergence(table, series, out);
  return table;
}

std::string render_csv(const Table& t, bool timing) {
  std::string csv;
  for (std::size_t i = 0; i < t.columns.size(); ++i) csv += (i ? "," : "") + t.columns[i];
  if (timing) csv += ",wall_time_s";
  csv += "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
      // leading integer columns (n, initial_mode) print without exponent
      const double v = t.rows[r][i];
      const bool integral = t.columns[i] == "n" || t.columns[i] == "initial_mode";
      csv += (i ? "," : "") + (integral ? std::to_string(static_cast<long long>(v)) : format_number(v));
    }
    if (timing) csv += "," + format_number(t.wall_times[r]);
    csv += "\n";
  }
  return csv;
}

ordered_json json_number(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(format_number(v));
}

}  // namespace

const char* version() noexcept { return "0.1.0"; }

const char* to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::HeatGramian: return "heat-gramian";
    case Experiment::WaveRatio: return "wave-ratio";
    case Experiment::BurgersIndex: return "burgers-index";
  }
  return "unknown";
}

std::optional<Experiment> parse_experiment(const std::string& name) {
  for (Experiment e : {Experiment::HeatGramian, Experiment::WaveRatio, Experiment::BurgersIndex})
    if (name == to_string(e)) return e;
  return std::nullopt;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunConfig::RunConfig(Experiment experiment) : experiment_(experiment) {
  for (const auto& [key, spec] : specs(experiment)) values_[key] = normalize(spec, spec.fallback).value();
}

bool RunConfig::set(const std::string& key, const std::string& value) {
  const SpecTable& table = specs(experiment_);
  const auto it = table.find(key);
  if (it == table.end()) {
    errors_.push_back("unknown key '" + key + "' for experiment " + to_string(experiment_));
    return false;
  }
  const auto normalized = normalize(it->second, value);
  if (!normalized) {
    errors_.push_back("invalid value '" + value + "' for key '" + key + "'");
    return false;
  }
  values_[key] = *normalized;
  return true;
}

bool RunConfig::load_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  bool ok = true;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      errors_.push_back(origin + ":" + std::to_string(lineno) + ": expected key = value");
      ok = false;
      continue;
    }
    std::string key = trim(body.substr(0, eq));
    if (key == "experiment") {
      if (trim(body.substr(eq + 1)) != to_string(experiment_)) {
        errors_.push_back(origin + ":" + std::to_string(lineno) + ": experiment mismatch");
        ok = false;
      }
      continue;
    }
    ok = set(key, body.substr(eq + 1)) && ok;
  }
  return ok;
}

bool RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    errors_.push_back("cannot read config file '" + path + "'");
    return false;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return load_text(buf.str(), path);
}

const std::string& RunConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorCode::InvalidInput, "unknown key '" + key + "'");
  return it->second;
}

RunConfig config_from_manifest(const std::string& manifest_json) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(manifest_json);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("experiment") || !doc.contains("config"))
    throw Error(ErrorCode::InvalidInput, "manifest lacks experiment/config");
  const auto exp = parse_experiment(doc["experiment"].get<std::string>());
  if (!exp) throw Error(ErrorCode::InvalidInput, "manifest names an unknown experiment");
  RunConfig config(*exp);
  for (const auto& [key, value] : doc["config"].items())
    config.set(key, value.is_string() ? value.get<std::string>() : value.dump());
  return config;
}

RunOutput run(const RunConfig& config) {
  RunOutput out;
  const auto start = std::chrono::steady_clock::now();
  Table table;

  if (!config.errors().empty()) {
    out.exit_code = kExitInvalidConfig;
    out.errors = config.errors();
  } else {
    try {
      switch (config.experiment()) {
        case Experiment::HeatGramian: table = run_heat(config, out); break;
        case Experiment::WaveRatio: table = run_wave(config, out); break;
        case Experiment::BurgersIndex: table = run_burgers(config, out); break;
      }
    } catch (const Error& e) {
      out.exit_code = (e.code() == ErrorCode::InvalidInput || e.code() == ErrorCode::Io)
                          ? kExitInvalidConfig
                          : kExitNumericalFailure;
      out.errors.push_back(std::string(to_string(e.code())) + ": " + e.what());
      table = Table{};
    } catch (const std::exception& e) {
      out.exit_code = kExitNumericalFailure;
      out.errors.push_back(e.what());
      table = Table{};
    }
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  out.columns = table.columns;
  out.rows = table.rows;
  const bool timing = config.get("csv_timing") == "true";
  out.csv = table.columns.empty() ? std::string() : render_csv(table, timing);

  ordered_json m;
  m["tool"] = "obsidx";
  m["experiment"] = to_string(config.experiment());
  ordered_json versions;
  versions["obsidx"] = version();
  versions["compiler"] = __VERSION__;
  versions["cplusplus"] = static_cast<long>(__cplusplus);
  m["versions"] = versions;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : config.values()) cfg[k] = v;
  m["config"] = cfg;
  m["status"] = out.exit_code == kExitOk ? "ok"
                : out.exit_code == kExitInvalidConfig ? "invalid-config"
                                                       : "numerical-failure";
  m["exit_code"] = out.exit_code;
  m["errors"] = out.errors;
  m["warnings"] = out.warnings;
  ordered_json timings;
  timings["total_s"] = total;
  timings["per_record_s"] = table.wall_times;
  m["timings"] = timings;
  m["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& r : table.rows) {
    ordered_json row = ordered_json::array();
    for (double v : r) row.push_back(json_number(v));
    rows.push_back(row);
  }
  m["records"] = rows;
  m["diagnostics"] = table.diagnostics;
  out.manifest = m.dump(2) + "\n";

  std::ostringstream summary;
  summary << "experiment: " << to_string(config.experiment()) << "\n";
  if (!table.columns.empty()) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
      summary << (i ? "  " : "") << table.columns[i];
    summary << "\n";
    for (const auto& r : table.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.6g", r[i]);
        summary << (i ? "  " : "") << buf;
      }
      summary << "\n";
    }
  }
  for (const std::string& line : table.summary_lines) summary << line << "\n";
  for (const std::string& w : out.warnings) summary << "warning: " << w << "\n";
  for (const std::string& e : out.errors) summary << "error: " << e << "\n";
  summary << "status: " << m["status"].get<std::string>() << " (" << format_number(total) << " s)\n";
  out.summary = summary.str();
  return out;
}

bool write_outputs(const RunConfig& config, RunOutput& output) {
  bool ok = true;
  auto write = [&](const std::string& path, const std::string& body) {
    if (path.empty() || body.empty()) return;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << body;
    if (!f) {
      output.errors.push_back("io-error: cannot write '" + path + "'");
      ok = false;
    }
  };
  write(config.get("out_csv"), output.csv);
  write(config.get("out_manifest"), output.manifest);
  if (!ok && output.exit_code == kExitOk) output.exit_code = kExitInvalidConfig;
  return ok;
}

}  // namespace obsidx
