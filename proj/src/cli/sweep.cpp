#include "memchan/cli/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "memchan/channels.hpp"
#include "memchan/cli/format.hpp"
#include "memchan/entropy_rate.hpp"

namespace memchan::cli {

namespace {

struct ModelInfo {
  SweepModel model;
  const char* name;
  std::vector<std::string> axes;
  std::vector<std::string> routes;
  Json defaults;
};

const std::vector<ModelInfo>& models() {
  static const std::vector<ModelInfo> table = {
      {SweepModel::wolf, "wolf", {"g"}, {"closed-transfer", "thermo", "brute"}, Json{{"g", 0.0}}},
      {SweepModel::params, "params", {"a", "b", "c"}, {"closed-transfer", "thermo", "brute"},
       Json{{"a", 1.0}, {"b", 1.0}, {"c", 1.0}}},
      {SweepModel::ising, "ising", {"J", "h", "beta"}, {"closed-transfer", "thermo", "brute"},
       Json{{"J", 1.0}, {"h", 0.0}, {"beta", 1.0}}},
      {SweepModel::markov, "markov", {"p01", "p10", "flip", "iid"}, {"markov", "brute"},
       Json{{"p01", 0.5}, {"p10", 0.5}}},
  };
  return table;
}

const ModelInfo& info(SweepModel m) {
  for (const auto& mi : models()) {
    if (mi.model == m) return mi;
  }
  throw ConfigError("unknown sweep model");
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Everything a route may need at one grid point.
struct Point {
  Environment brute_env;
  std::optional<DiagonalParams> params;
  std::optional<ClassicalIsingEnv> ising;
  std::optional<MarkovEnv> markov;
};

Point make_point(const SweepSpec& spec, const Json& values) {
  auto num = [&](const char* key) { return values.at(key).get<double>(); };
  switch (spec.model) {
    case SweepModel::wolf: {
      Rank1MpsEnv env = wolf_env(num("g"));
      DiagonalParams p = rank1_abc(env);
      return {std::move(env), p, std::nullopt, std::nullopt};
    }
    case SweepModel::params: {
      DiagonalParams p(num("a"), num("b"), num("c"));
      return {p, p, std::nullopt, std::nullopt};
    }
    case SweepModel::ising: {
      ClassicalIsingEnv e(num("J"), num("h"), num("beta"));
      return {e, ising_to_params(e), e, std::nullopt};
    }
    case SweepModel::markov: {
      MarkovEnv m = two_state_markov(num("p01"), num("p10"));
      return {m, std::nullopt, std::nullopt, m};
    }
  }
  throw ConfigError("unknown sweep model");
}

Json point_values(const SweepSpec& spec, double x) {
  Json v = spec.base;
  if (!spec.axis) return v;
  const std::string& name = spec.axis->name;
  if (name == "flip") {
    v["p01"] = x;
    v["p10"] = x;
  } else if (name == "iid") {
    // Rows (1 - q, q): each symbol is drawn independently with P(1) = q.
    v["p01"] = x;
    v["p10"] = 1.0 - x;
  } else {
    v[name] = x;
  }
  return v;
}

std::string column_name(const std::string& route) {
  std::string out = route;
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

Json resolved(const SweepSpec& spec) {
  Json out{{"model", info(spec.model).name}, {"base", spec.base}, {"routes", spec.routes},
           {"brute_sizes", spec.brute_sizes}, {"d", spec.d}};
  if (spec.axis) {
    out["axis"] = {{"name", spec.axis->name}, {"min", spec.axis->min}, {"max", spec.axis->max},
                   {"steps", spec.axis->steps}};
  }
  return out;
}

void add_flag(PointRecord& rec, const std::string& flag) {
  if (!contains(rec.flags, flag)) rec.flags.push_back(flag);
}

}  // namespace

SweepSpec parse_sweep(const Json& config) {
  if (!config.is_object() || !config.contains("sweep") || !config.at("sweep").is_object()) {
    throw ConfigError("config has no 'sweep' object");
  }
  const Json& s = config.at("sweep");
  try {
    SweepSpec spec;
    const std::string model = s.value("model", std::string("wolf"));
    const ModelInfo* mi = nullptr;
    for (const auto& m : models()) {
      if (model == m.name) mi = &m;
    }
    if (mi == nullptr) throw ConfigError("unknown sweep model '" + model + "'");
    spec.model = mi->model;

    spec.base = mi->defaults;
    if (s.contains("base")) {
      if (!s.at("base").is_object()) throw ConfigError("'sweep.base' must be an object");
      for (const auto& [k, v] : s.at("base").items()) {
        if (!spec.base.contains(k)) throw ConfigError("model '" + model + "' has no parameter '" + k + "'");
        if (!v.is_number()) throw ConfigError("parameter '" + k + "' must be a number");
        spec.base[k] = v;
      }
    }

    if (s.contains("axis")) {
      const Json& a = s.at("axis");
      SweepAxis axis{a.at("name").get<std::string>(), a.at("min").get<double>(), a.at("max").get<double>(),
                     a.at("steps").get<int>()};
      if (!contains(mi->axes, axis.name)) throw ConfigError("model '" + model + "' cannot sweep '" + axis.name + "'");
      if (axis.steps < 2) throw ConfigError("sweep axis needs steps >= 2");
      if (!(axis.min < axis.max)) throw ConfigError("sweep axis needs min < max");
      spec.axis = axis;
    }

    if (s.contains("routes")) {
      spec.routes = s.at("routes").get<std::vector<std::string>>();
    } else {
      spec.routes = {mi->routes.front()};
    }
    if (spec.routes.empty()) throw ConfigError("sweep needs at least one route");
    for (const auto& r : spec.routes) {
      if (!contains(mi->routes, r)) throw ConfigError("route '" + r + "' is not available for model '" + model + "'");
    }
    std::vector<std::string> seen;
    for (const auto& r : spec.routes) {
      if (contains(seen, r)) throw ConfigError("route '" + r + "' listed twice");
      seen.push_back(r);
    }

    spec.brute_sizes = s.value("brute_sizes", std::vector<int>{8, 9, 10, 11, 12});
    spec.d = s.contains("d") ? s.at("d").get<int>() : config.value("d", 2);
    if (spec.d < 2) throw ConfigError("d must be at least 2");
    return spec;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("invalid sweep section: ") + e.what());
  }
}

std::vector<double> sweep_grid(const SweepAxis& axis) {
  const double mid = 0.5 * (axis.min + axis.max);
  const double half = 0.5 * (axis.max - axis.min);
  const int last = axis.steps - 1;
  std::vector<double> grid(static_cast<std::size_t>(axis.steps));
  for (int i = 0; i <= last; ++i) {
    const double t = static_cast<double>(2 * i - last) / static_cast<double>(last);
    grid[static_cast<std::size_t>(i)] = mid + half * t;
  }
  grid.front() = axis.min;
  grid.back() = axis.max;
  return grid;
}

RunReport run_sweep(const Json& config) {
  RunReport report;
  report.spec = parse_sweep(config);
  try {
    report.seed = config.value("seed", std::uint64_t{0});
  } catch (const Json::exception&) {
    throw ConfigError("'seed' must be a nonnegative integer");
  }
  report.config = config;
  report.config["sweep"] = resolved(report.spec);
  report.config["seed"] = report.seed;
  const SweepSpec& spec = report.spec;

  std::vector<double> grid;
  if (spec.axis) {
    grid = sweep_grid(*spec.axis);
  } else {
    const std::string first = info(spec.model).axes.front();
    const std::string key = spec.base.contains(first) ? first : "p01";
    grid = {spec.base.at(key).get<double>()};
  }

  for (double x : grid) {
    PointRecord rec;
    rec.param = x;
    rec.rates.assign(spec.routes.size(), std::nullopt);
    rec.capacities.assign(spec.routes.size(), std::nullopt);
    std::optional<Point> point;
    try {
      point = make_point(spec, point_values(spec, x));
    } catch (const Error& e) {
      throw ConfigError("sweep point " + format_number(x) + " is invalid: " + e.what());
    }
    for (std::size_t r = 0; r < spec.routes.size(); ++r) {
      const std::string& route = spec.routes[r];
      try {
        EntropyRateResult res;
        if (route == "closed-transfer") {
          res = entropy_rate_transfer(*point->params);
        } else if (route == "thermo") {
          res = entropy_rate_thermo(point->ising ? *point->ising : params_to_ising(*point->params, 1.0));
        } else if (route == "markov") {
          res = markov_entropy_rate(*point->markov);
        } else {
          res = entropy_rate_brute(point->brute_env, spec.brute_sizes);
        }
        const Capacity cap = capacity_from_rate(res, spec.d);
        rec.rates[r] = res.rate;
        rec.capacities[r] = cap.value;
        if (cap.transition_point) add_flag(rec, "transition-point");
        if (cap.floored) add_flag(rec, "negative-bound-floored");
      } catch (const DimensionCapExceeded&) {
        add_flag(rec, "cap-exceeded");
      } catch (const DegenerateEnvironment&) {
        // c = 0 has no finite-temperature Ising image.
        add_flag(rec, "transition-point");
      }
    }
    report.points.push_back(std::move(rec));
  }
  return report;
}

void write_csv(const RunReport& report, std::ostream& out) {
  out << config_echo("sweep", report.config) << '\n';
  out << "param";
  for (const auto& r : report.spec.routes) out << ",rate_" << column_name(r);
  for (const auto& r : report.spec.routes) out << ",capacity_" << column_name(r);
  out << ",flags\n";
  auto cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; };
  for (const auto& p : report.points) {
    out << format_number(p.param);
    for (const auto& v : p.rates) out << ',' << cell(v);
    for (const auto& v : p.capacities) out << ',' << cell(v);
    out << ',';
    for (std::size_t i = 0; i < p.flags.size(); ++i) out << (i ? ";" : "") << p.flags[i];
    out << '\n';
  }
}

}  // namespace memchan::cli
