#include "mesofluct/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace mesofluct {

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& why) {
  throw Error(ErrorKind::Parameter, key + ": " + why + " (got '" + value + "')");
}

double parse_double(const std::string& key, const std::string& text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) bad_value(key, text, "expected a number");
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  long long v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) bad_value(key, text, "expected an integer");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  bad_value(key, text, "expected true or false");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::Parameter, message);
}

// Runs fn(0..n-1) on a shared work queue; each index writes its own slot.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const unsigned workers = worker_count(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> uniform_grid(double t_max, int points) {
  std::vector<double> ts(points);
  for (int k = 0; k < points; ++k) ts[k] = t_max * k / (points - 1);
  return ts;
}

}  // namespace

Range Range::parse(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (a == std::string::npos || b == std::string::npos) {
    throw Error(ErrorKind::Parameter, "range must look like lo:hi:n (got '" + text + "')");
  }
  Range r;
  r.lo = parse_double("range", text.substr(0, a));
  r.hi = parse_double("range", text.substr(a + 1, b - a - 1));
  const long long n = parse_integer("range", text.substr(b + 1));
  if (n < 0 || n > 100000) throw Error(ErrorKind::Parameter, "range count out of bounds in '" + text + "'");
  r.n = static_cast<int>(n);
  return r;
}

std::vector<double> Range::values() const {
  std::vector<double> v;
  if (n <= 0) return v;
  if (n == 1) return {lo};
  for (int k = 0; k < n; ++k) v.push_back(lo + (hi - lo) * k / (n - 1));
  v.back() = hi;
  return v;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "model") {
    cfg.model = static_cast<int>(parse_integer(key, value));
  } else if (key == "delta") {
    cfg.delta = parse_double(key, value);
  } else if (key == "gamma") {
    cfg.gamma = parse_double(key, value);
  } else if (key == "j0") {
    cfg.J0 = parse_double(key, value);
  } else if (key == "xi") {
    cfg.xi = parse_double(key, value);
  } else if (key == "temp") {
    cfg.T = parse_double(key, value);
  } else if (key == "beta") {
    cfg.beta = parse_double(key, value);
  } else if (key == "eta") {
    cfg.eta = parse_double(key, value);
  } else if (key == "r1") {
    cfg.r1 = parse_double(key, value);
  } else if (key == "r3") {
    cfg.r3 = parse_double(key, value);
  } else if (key == "variant") {
    if (value == "symmetric") cfg.variant = SqueezeVariant::Symmetric;
    else if (value == "one-mode") cfg.variant = SqueezeVariant::OneMode;
    else if (value == "custom") cfg.variant = SqueezeVariant::Custom;
    else bad_value(key, value, "expected symmetric, one-mode or custom");
  } else if (key == "tmax") {
    cfg.t_max = parse_double(key, value);
  } else if (key == "points") {
    const long long n = parse_integer(key, value);
    if (n < 2 || n > 1000000) bad_value(key, value, "expected 2..1000000");
    cfg.points = static_cast<int>(n);
  } else if (key == "oracle") {
    cfg.oracle = parse_bool(key, value);
  } else if (key == "format") {
    if (value == "csv") cfg.format = Format::Csv;
    else if (value == "json") cfg.format = Format::Json;
    else bad_value(key, value, "expected csv or json");
  } else if (key == "fast") {
    cfg.fast = parse_bool(key, value);
  } else if (key == "seed") {
    const long long s = parse_integer(key, value);
    if (s < 0) bad_value(key, value, "expected a non-negative integer");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "r-range") {
    cfg.r_range = Range::parse(value);
  } else if (key == "temp-range") {
    cfg.T_range = Range::parse(value);
  } else if (key == "gamma-range") {
    cfg.gamma_range = Range::parse(value);
  } else if (key == "xi-range") {
    cfg.xi_range = Range::parse(value);
  } else if (key == "tol-temp") {
    cfg.tol_T = parse_double(key, value);
  } else {
    throw Error(ErrorKind::Parameter, "unknown setting '" + key + "'");
  }
}

SqueezeVariant effective_variant(const RunConfig& cfg) {
  if (cfg.variant) return *cfg.variant;
  if (!cfg.r3 || *cfg.r3 == cfg.r1) return SqueezeVariant::Symmetric;
  if (*cfg.r3 == 0.0) return SqueezeVariant::OneMode;
  return SqueezeVariant::Custom;
}

double effective_r3(const RunConfig& cfg) {
  switch (effective_variant(cfg)) {
    case SqueezeVariant::Symmetric: return cfg.r1;
    case SqueezeVariant::OneMode: return 0.0;
    case SqueezeVariant::Custom: break;
  }
  return cfg.r3.value_or(cfg.r1);
}

double effective_t_max(const RunConfig& cfg) {
  return cfg.t_max.value_or(cfg.model == 1 ? default_t_max(ModelKind::Model1)
                                           : default_t_max(ModelKind::Model2));
}

ModelSpec model_spec(const RunConfig& cfg) {
  if (cfg.model == 1) return ModelSpec::model1(cfg.delta, cfg.gamma, cfg.J0, cfg.eta);
  return ModelSpec::model2(cfg.xi, cfg.eta);
}

ThermalParams thermal(const RunConfig& cfg) {
  if (cfg.beta) return thermal_params(*cfg.beta, cfg.eta);
  if (cfg.T) return thermal_params_from_temperature(*cfg.T, cfg.eta);
  throw Error(ErrorKind::Parameter, "temp: one of temp or beta is required");
}

void validate(RunConfig& cfg) {
  require(cfg.model == 1 || cfg.model == 2, "model: must be 1 or 2");
  require(!(cfg.T && cfg.beta), "temp/beta: give only one of them");
  if (cfg.T) require(std::isfinite(*cfg.T) && *cfg.T >= 0.0, "temp: must be finite and >= 0");
  if (cfg.beta) require(!std::isnan(*cfg.beta) && *cfg.beta >= 0.0, "beta: must be >= 0");
  require(std::isfinite(cfg.eta) && cfg.eta > 0.0, "eta: must be positive");
  require(std::isfinite(cfg.r1), "r1: must be finite");
  if (cfg.r3) require(std::isfinite(*cfg.r3), "r3: must be finite");
  if (cfg.t_max) require(std::isfinite(*cfg.t_max) && *cfg.t_max > 0.0, "tmax: must be positive");
  require(cfg.tol_T > 0.0, "tol-temp: must be positive");

  if (cfg.variant && cfg.r3) {
    if (*cfg.variant == SqueezeVariant::Symmetric)
      require(*cfg.r3 == cfg.r1, "r3: symmetric squeezing needs r3 = r1");
    if (*cfg.variant == SqueezeVariant::OneMode)
      require(*cfg.r3 == 0.0, "r3: one-mode squeezing needs r3 = 0");
  }
  if (cfg.variant == SqueezeVariant::Custom) require(cfg.r3.has_value(), "r3: custom squeezing needs r3");

  try {
    (void)model_spec(cfg);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parameter, std::string(cfg.model == 1 ? "gamma" : "xi") + ": " + e.what());
  }

  if (cfg.oracle) {
    require(cfg.model == 1, "oracle: the closed-form S exists for model 1 only");
    require(effective_variant(cfg) != SqueezeVariant::Custom,
            "oracle: needs symmetric (r3 = r1) or one-mode (r3 = 0) squeezing");
  }

  auto check_range = [](const std::optional<Range>& r, const char* name) {
    if (!r) return;
    require(r->n >= 1, std::string(name) + ": empty range");
    require(std::isfinite(r->lo) && std::isfinite(r->hi), std::string(name) + ": bounds must be finite");
    require(r->lo <= r->hi, std::string(name) + ": empty range (lo > hi)");
  };
  check_range(cfg.r_range, "r-range");
  check_range(cfg.T_range, "temp-range");
  check_range(cfg.gamma_range, "gamma-range");
  check_range(cfg.xi_range, "xi-range");
  if (cfg.T_range) require(cfg.T_range->lo >= 0.0, "temp-range: temperatures must be >= 0");
  require(!(cfg.gamma_range && cfg.xi_range), "gamma-range/xi-range: sweep one of them");
  if (cfg.gamma_range) {
    require(cfg.model == 1, "gamma-range: model 1 only");
    for (double g : cfg.gamma_range->values())
      require(std::abs(g) <= 0.5 * cfg.delta, "gamma-range: values must satisfy |gamma| <= delta/2");
  }
  if (cfg.xi_range) {
    require(cfg.model == 2, "xi-range: model 2 only");
    require(cfg.xi_range->lo >= 0.0, "xi-range: values must be >= 0");
  }
}

unsigned worker_count(std::size_t tasks) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MESOFLUCT_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

Table cmd_evolve(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  validate(cfg);
  const ModelSpec spec = model_spec(cfg);
  const ThermalParams tp = thermal(cfg);
  const double r3 = effective_r3(cfg);
  const EntanglementProbe probe(spec, tp, cfg.r1, r3);

  const Mat8 L = derive_L_matrix(build_site_operators(tp, spec));
  const Mat8 Sigma = covariance_matrix(tp.epsilon);
  const Vec8 e1 = Vec8::Unit(0);

  std::optional<ClosedFormContext> ctx;
  if (cfg.oracle) {
    ctx = ClosedFormContext{tp, spec.m1, cfg.r1,
                            effective_variant(cfg) == SqueezeVariant::Symmetric ? Variant::Symmetric
                                                                               : Variant::OneMode};
  }

  Table table;
  table.columns = {"t", "E", "S", "I1", "I2", "I3", "I4", "lambda_min", "f_deficit"};
  if (ctx) table.columns.push_back("S_closed");

  const std::vector<double> ts = uniform_grid(effective_t_max(cfg), cfg.points);
  table.rows.resize(ts.size());
  parallel_for(ts.size(), [&](std::size_t k) {
    const EntanglementSample s = probe.at(ts[k]);
    auto& row = table.rows[k];
    row = {ts[k], s.inv.E, s.inv.S, s.inv.I1, s.inv.I2, s.inv.I3, s.inv.I4, s.lambda_min,
           -scalar_exponent(e1, L, Sigma, ts[k])};
    if (ctx) row.push_back(closed_form_S(*ctx, ts[k]));
  });

  if (ctx) {
    double worst = 0.0;
    for (const auto& row : table.rows) worst = std::max(worst, std::abs(*row[2] - *row.back()));
    table.meta["oracle_max_abs_diff"] = worst;
    if (worst > 1e-6) {
      std::ostringstream os;
      os << "evolve: numeric S departs from the closed form by " << worst;
      throw Error(ErrorKind::PipelineDefect, os.str());
    }
  }
  return table;
}

SweepResult cmd_sweep(const RunConfig& cfg_in, bool with_critical_temperature) {
  RunConfig cfg = cfg_in;
  validate(cfg);
  const SqueezeVariant sv = effective_variant(cfg);
  require(sv != SqueezeVariant::Custom, "variant: sweeps need symmetric or one-mode squeezing");
  require(cfg.points >= 64, "points: sweeps need at least 64 time points");
  const Variant variant = sv == SqueezeVariant::Symmetric ? Variant::Symmetric : Variant::OneMode;

  const std::vector<double> rs = cfg.r_range ? cfg.r_range->values() : std::vector<double>{cfg.r1};
  std::vector<double> temps;
  if (cfg.T_range) {
    temps = cfg.T_range->values();
  } else {
    temps = {thermal(cfg).temperature()};
  }
  const bool sweep_param = cfg.gamma_range || cfg.xi_range;
  std::vector<double> params;
  if (cfg.gamma_range) params = cfg.gamma_range->values();
  else if (cfg.xi_range) params = cfg.xi_range->values();
  else params = {cfg.model == 1 ? cfg.gamma : cfg.xi};
  const char* param_name = cfg.model == 1 ? "gamma" : "xi";

  auto spec_for = [&](double p) {
    RunConfig c = cfg;
    (cfg.model == 1 ? c.gamma : c.xi) = p;
    return model_spec(c);
  };
  const double t_max = effective_t_max(cfg);
  const std::vector<double> ts = uniform_grid(t_max, cfg.points);

  SweepResult out;
  Table& grid = out.grid;
  grid.columns = {"r", "T"};
  if (sweep_param) grid.columns.push_back(param_name);
  for (const char* c : {"max_E", "t_birth", "t_death", "entangled"}) grid.columns.push_back(c);

  const std::size_t n_cells = params.size() * rs.size() * temps.size();
  grid.rows.resize(n_cells);
  parallel_for(n_cells, [&](std::size_t idx) {
    const std::size_t ip = idx / (rs.size() * temps.size());
    const std::size_t ir = (idx / temps.size()) % rs.size();
    const std::size_t iT = idx % temps.size();
    const ModelSpec spec = spec_for(params[ip]);
    const double r = rs[ir];
    const ThermalParams tp = thermal_params_from_temperature(temps[iT], cfg.eta);
    const EntanglementProbe probe(spec, tp, r, variant == Variant::Symmetric ? r : 0.0);

    std::vector<double> E(ts.size());
    double max_E = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      E[k] = probe.invariants(ts[k]).E;
      max_E = std::max(max_E, E[k]);
    }
    const BirthDeath bd = detect_birth_death(
        ts, E, [&](double t) { return probe.invariants(t).S; }, 1e-6 * t_max);

    auto& row = grid.rows[idx];
    row = {r, temps[iT]};
    if (sweep_param) row.push_back(params[ip]);
    row.push_back(max_E);
    row.push_back(bd.t_birth ? Cell(*bd.t_birth) : Cell());
    row.push_back(bd.t_death ? Cell(*bd.t_death) : Cell());
    row.push_back(max_E > kEntanglementFloor ? 1.0 : 0.0);
  });

  if (with_critical_temperature) {
    require(cfg.T_range && cfg.T_range->n >= 2,
            "temp-range: critical temperatures need a bracket lo:hi:n with n >= 2");
    Table tc;
    tc.columns = {"r"};
    if (sweep_param) tc.columns.push_back(param_name);
    tc.columns.push_back("T_C");
    tc.columns.push_back("bracketed");
    const std::size_t n_tc = params.size() * rs.size();
    tc.rows.resize(n_tc);
    parallel_for(n_tc, [&](std::size_t idx) {
      const std::size_t ip = idx / rs.size();
      const std::size_t ir = idx % rs.size();
      CriticalTemperatureRequest req;
      req.spec = spec_for(params[ip]);
      req.r = rs[ir];
      req.variant = variant;
      req.T_lo = cfg.T_range->lo;
      req.T_hi = cfg.T_range->hi;
      req.t_max = t_max;
      req.tol_T = cfg.tol_T;
      auto& row = tc.rows[idx];
      row = {rs[ir]};
      if (sweep_param) row.push_back(params[ip]);
      try {
        row.push_back(critical_temperature(req));
        row.push_back(1.0);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Bracket) throw;
        row.push_back(Cell());
        row.push_back(0.0);
      }
    });
    out.critical = std::move(tc);
  }
  return out;
}

}  // namespace mesofluct
