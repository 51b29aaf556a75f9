#include "overlap/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "overlap/closed_form.hpp"
#include "overlap/discrete_oracle.hpp"
#include "overlap/monte_carlo.hpp"

namespace overlap::cli {

namespace {

using Json = nlohmann::ordered_json;

struct ScenarioFlags {
  std::optional<double> total_time;
  std::optional<double> duration_a;
  std::optional<double> duration_b;
  std::optional<std::int64_t> count_a;
  std::optional<std::int64_t> count_b;
  std::optional<double> rate_a;
  std::optional<double> rate_b;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f, bool with_rates) {
  cmd->add_option("--T", f.total_time, "total time window");
  cmd->add_option("--ta", f.duration_a, "duration of event A");
  cmd->add_option("--tb", f.duration_b, "duration of event B");
  cmd->add_option("--na", f.count_a, "occurrences of event A");
  cmd->add_option("--nb", f.count_b, "occurrences of event B");
  if (with_rates) {
    cmd->add_option("--rate-a", f.rate_a, "occurrence rate of event A per time unit");
    cmd->add_option("--rate-b", f.rate_b, "occurrence rate of event B per time unit");
  }
}

template <typename T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw ValidationError(std::string("missing required flag --") + flag);
  return *v;
}

Scenario scenario_from(const ScenarioFlags& f) {
  return Scenario{need(f.total_time, "T"),
                  {need(f.duration_a, "ta"), need(f.count_a, "na")},
                  {need(f.duration_b, "tb"), need(f.count_b, "nb")},
                  false};
}

RateScenario rate_scenario_from(const ScenarioFlags& f) {
  return RateScenario{need(f.total_time, "T"), need(f.duration_a, "ta"), need(f.duration_b, "tb"),
                      need(f.rate_a, "rate-a"), need(f.rate_b, "rate-b")};
}

template <typename T>
Json or_null(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Method parse_method(const std::string& name) {
  if (name == "precise") return Method::kPrecise;
  if (name == "approx") return Method::kApprox;
  if (name == "rate") return Method::kRate;
  return Method::kUniversal;
}

ProbabilityResult evaluate(Method method, const ScenarioFlags& f, const Hooks& hooks) {
  switch (method) {
    case Method::kPrecise:
      return p_star(scenario_from(f));
    case Method::kApprox:
      return p_approx(scenario_from(f));
    case Method::kUniversal:
      return hooks.universal(scenario_from(f));
    case Method::kRate:
      return p_universal_rate(rate_scenario_from(f));
  }
  throw std::logic_error("unhandled method");
}

Json compute_record(Method method, const ScenarioFlags& f, const Hooks& hooks) {
  const ProbabilityResult r = evaluate(method, f, hooks);
  const bool counts = method != Method::kRate;
  Json rec;
  rec["method"] = std::string(to_string(method));
  rec["T"] = or_null(f.total_time);
  rec["ta"] = or_null(f.duration_a);
  rec["tb"] = or_null(f.duration_b);
  rec["na"] = counts ? or_null(f.count_a) : Json(nullptr);
  rec["nb"] = counts ? or_null(f.count_b) : Json(nullptr);
  rec["rate_a"] = counts ? Json(nullptr) : or_null(f.rate_a);
  rec["rate_b"] = counts ? Json(nullptr) : or_null(f.rate_b);
  rec["swapped"] = r.swapped;
  rec["probability"] = r.value;
  rec["raw_probability"] = std::isfinite(r.raw_value) ? Json(r.raw_value) : Json(nullptr);
  rec["error_bound"] = or_null(r.error_bound);
  rec["guard"] = r.guard ? Json(std::string(to_string(*r.guard))) : Json(nullptr);
  rec["clamped"] = r.clamped;
  return rec;
}

std::vector<Method> requested_methods(const std::string& method, const ScenarioFlags& f) {
  if (method != "all") return {parse_method(method)};
  std::vector<Method> methods;
  if (f.count_a == 1 && f.count_b == 1) methods.push_back(Method::kPrecise);
  if (f.count_a || f.count_b) {
    methods.push_back(Method::kApprox);
    methods.push_back(Method::kUniversal);
  }
  if (f.rate_a || f.rate_b) methods.push_back(Method::kRate);
  if (methods.empty()) throw ValidationError("--method all needs counts (--na/--nb) or rates");
  return methods;
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number()) return v.dump();
  const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

void write_csv(const std::vector<Json>& records, std::ostream& out) {
  if (records.empty()) return;
  bool first = true;
  for (const auto& item : records.front().items()) {
    out << (first ? "" : ",") << item.key();
    first = false;
  }
  out << "\r\n";
  for (const auto& rec : records) {
    first = true;
    for (const auto& item : rec.items()) {
      out << (first ? "" : ",") << csv_cell(item.value());
      first = false;
    }
    out << "\r\n";
  }
}

void write_plain(const std::vector<Json>& records, std::ostream& out) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i > 0) out << '\n';
    std::size_t width = 0;
    for (const auto& item : records[i].items()) width = std::max(width, item.key().size());
    for (const auto& item : records[i].items()) {
      const std::string cell = csv_cell(item.value());
      out << std::left << std::setw(static_cast<int>(width)) << item.key() << "  "
          << (cell.empty() ? "-" : cell) << '\n';
    }
  }
}

void emit(const std::vector<Json>& records, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    write_csv(records, out);
  } else if (format == "plain") {
    write_plain(records, out);
  } else if (records.size() == 1) {
    out << records.front().dump() << '\n';
  } else {
    out << Json(records).dump() << '\n';
  }
}

Json simulation_record(const Scenario& raw, const SimulationReport& r) {
  const Scenario s = normalize(raw);
  Json rec;
  rec["method"] = "monte_carlo";
  rec["T"] = raw.total_time;
  rec["ta"] = raw.event_a.duration;
  rec["tb"] = raw.event_b.duration;
  rec["na"] = raw.event_a.count;
  rec["nb"] = raw.event_b.count;
  rec["swapped"] = s.swapped;
  rec["trials"] = r.trials;
  rec["hits"] = r.hits;
  rec["estimate"] = r.estimate;
  rec["std_error"] = r.std_error;
  rec["ci_low"] = r.ci_low;
  rec["ci_high"] = r.ci_high;
  rec["interval"] = std::string(to_string(r.interval));
  rec["seed"] = r.seed;
  rec["chunk_size"] = r.chunk_size;
  return rec;
}

Json validation_record(const ValidationReport& report) {
  Json rec;
  rec["grid"] = report.grid == ValidationGrid::kFull ? "full" : "small";
  rec["trials"] = report.trials;
  rec["seed"] = report.seed;
  rec["passed"] = report.passed();
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json item;
    item["name"] = c.name;
    item["passed"] = c.passed;
    item["observed"] = c.observed;
    item["allowed"] = c.allowed;
    item["detail"] = c.detail;
    checks.push_back(std::move(item));
  }
  rec["checks"] = std::move(checks);
  return rec;
}

std::vector<double> sweep_values(double from, double to, int steps) {
  if (steps < 1) throw ValidationError("--steps must be at least 1");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    values.push_back(steps == 1 ? from : from + (to - from) * i / (steps - 1));
  }
  if (steps > 1) values.back() = to;
  return values;
}

std::int64_t as_count(double v) {
  if (v < 0 || std::nearbyint(v) != v) {
    throw ValidationError("swept counts must be nonnegative whole numbers");
  }
  return static_cast<std::int64_t>(v);
}

void set_param(ScenarioFlags& f, const std::string& param, double v) {
  if (param == "T") f.total_time = v;
  else if (param == "ta") f.duration_a = v;
  else if (param == "tb") f.duration_b = v;
  else if (param == "na") f.count_a = as_count(v);
  else if (param == "nb") f.count_b = as_count(v);
  else if (param == "rate-a") f.rate_a = v;
  else if (param == "rate-b") f.rate_b = v;
}

std::optional<std::string> take_config_flag(std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (auto it = args.begin(); it != args.end();) {
    if (*it == "--config") {
      if (std::next(it) == args.end()) throw ValidationError("--config needs a file path");
      path = *std::next(it);
      it = args.erase(it, std::next(it, 2));
    } else if (it->rfind("--config=", 0) == 0) {
      path = it->substr(9);
      it = args.erase(it);
    } else {
      ++it;
    }
  }
  return path;
}

bool flag_given(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ValidationError("config line " + std::to_string(number) + ": empty key or value");
    }
    if (!entries.emplace(key, value).second) {
      throw ValidationError("config line " + std::to_string(number) + ": duplicate key " + key);
    }
  }
  return entries;
}

int run(const std::vector<std::string>& input, std::ostream& out, std::ostream& err,
        const Hooks& hooks) {
  CLI::App app{"Overlap probability of two recurring events", "overlap"};
  app.require_subcommand(1);

  ScenarioFlags flags;
  std::string method = "universal";
  std::string format = "json";
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = SimulationOptions{}.chunk_size;
  unsigned threads = 1;
  std::string grid = "small";
  std::string sweep_param;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;

  const std::vector<std::string> method_names = {"precise", "approx", "universal", "rate", "all"};
  const std::vector<std::string> formats = {"json", "csv", "plain"};

  auto* compute = app.add_subcommand("compute", "evaluate the closed-form estimators");
  add_scenario_flags(compute, flags, true);
  compute->add_option("--method", method)->check(CLI::IsMember(method_names));
  compute->add_option("--format", format)->check(CLI::IsMember(formats));

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate with a 95% interval");
  add_scenario_flags(simulate, flags, false);
  simulate->add_option("--trials", trials)->required();
  simulate->add_option("--seed", seed)->required();
  simulate->add_option("--chunk-size", chunk_size);
  simulate->add_option("--threads", threads, "worker threads; 0 = all cores");
  simulate->add_option("--format", format)->check(CLI::IsMember(formats));

  auto* validate_cmd = app.add_subcommand("validate", "closed forms vs exact grid oracle vs simulation");
  trials = 200'000;
  validate_cmd->add_option("--grid", grid)->check(CLI::IsMember({"small", "full"}));
  validate_cmd->add_option("--trials", trials);
  validate_cmd->add_option("--seed", seed)->required();
  validate_cmd->add_option("--threads", threads);

  auto* sweep = app.add_subcommand("sweep", "CSV of probability and error bound along one parameter");
  add_scenario_flags(sweep, flags, true);
  sweep->add_option("--sweep", sweep_param)
      ->required()
      ->check(CLI::IsMember({"T", "ta", "tb", "na", "nb", "rate-a", "rate-b"}));
  sweep->add_option("--from", from)->required();
  sweep->add_option("--to", to)->required();
  sweep->add_option("--steps", steps)->required();
  sweep->add_option("--method", method)
      ->check(CLI::IsMember({"precise", "approx", "universal", "rate"}));

  try {
    std::vector<std::string> args = input;
    if (const auto path = take_config_flag(args)) {
      std::ifstream file(*path);
      if (!file) throw ValidationError("cannot read config file " + *path);
      const auto entries = parse_config(file);
      if (args.empty()) throw ValidationError("a subcommand is required");
      CLI::App* sub = nullptr;
      for (auto* candidate : {compute, simulate, validate_cmd, sweep}) {
        if (candidate->get_name() == args.front()) sub = candidate;
      }
      if (sub == nullptr) throw ValidationError("unknown subcommand " + args.front());
      for (const auto& [key, value] : entries) {
        const std::string flag = "--" + key;
        if (sub->get_option_no_throw(flag) == nullptr) {
          throw ValidationError("unknown config key '" + key + "' for " + sub->get_name());
        }
        if (!flag_given(args, flag)) {
          args.push_back(flag);
          args.push_back(value);
        }
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);

    if (*compute) {
      std::vector<Json> records;
      for (Method m : requested_methods(method, flags)) {
        records.push_back(compute_record(m, flags, hooks));
      }
      emit(records, format, out);
    } else if (*simulate) {
      const Scenario s = scenario_from(flags);
      SimulationOptions options;
      options.trials = trials;
      options.seed = seed;
      options.chunk_size = chunk_size;
      options.threads = threads;
      emit({simulation_record(s, estimate(s, options))}, format, out);
    } else if (*validate_cmd) {
      ValidationOptions options;
      options.grid = grid == "full" ? ValidationGrid::kFull : ValidationGrid::kSmall;
      options.trials = trials;
      options.seed = seed;
      options.threads = threads;
      options.universal = hooks.universal;
      const auto report = run_validation(options);
      out << validation_record(report).dump(2) << '\n';
      for (const auto& c : report.checks) {
        if (!c.passed) err << "check failed: " << c.name << " (" << c.detail << ")\n";
      }
      return report.passed() ? kOk : kCheckFailed;
    } else if (*sweep) {
      const Method m = parse_method(method);
      std::vector<Json> rows;
      for (double v : sweep_values(from, to, steps)) {
        set_param(flags, sweep_param, v);
        const Json rec = compute_record(m, flags, hooks);
        Json row;
        row[sweep_param] = v;
        row["probability"] = rec["probability"];
        row["error_bound"] = rec["error_bound"];
        rows.push_back(std::move(row));
      }
      write_csv(rows, out);
    }
    return kOk;
  } catch (const CLI::ParseError& e) {
    // Help requests print the selected subcommand's usage and succeed.
    return app.exit(e, out, err) == 0 ? kOk : kBadInput;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::domain_error& e) {
    err << "out of domain: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace overlap::cli
