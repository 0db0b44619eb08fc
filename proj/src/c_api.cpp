#include "mesofluct/mesofluct.h"

#include <string>

#include "mesofluct/runner.hpp"
#include "mesofluct/verify.hpp"

struct mf_config {
  mesofluct::RunConfig cfg;
};

struct mf_table {
  mesofluct::Table table;
};

struct mf_report {
  std::vector<mesofluct::CheckResult> checks;
};

namespace {

thread_local std::string g_last_error;

mf_status fail(mf_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

mf_status status_for(mesofluct::ErrorKind kind) {
  using mesofluct::ErrorKind;
  switch (kind) {
    case ErrorKind::Parameter:
    case ErrorKind::Input:
    case ErrorKind::Positivity:
    case ErrorKind::Bracket:
    case ErrorKind::Degenerate:
      return MF_ERR_CONFIG;
    case ErrorKind::Dimension:
    case ErrorKind::Numeric:
    case ErrorKind::Contract:
    case ErrorKind::SpanStability:
    case ErrorKind::PipelineDefect:
      return MF_ERR_NUMERIC;
  }
  return MF_ERR_INTERNAL;
}

template <typename Fn>
mf_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MF_OK;
  } catch (const mesofluct::Error& e) {
    return fail(status_for(e.kind()),
                std::string(mesofluct::error_kind_name(e.kind())) + " error: " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(MF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MF_ERR_INTERNAL, e.what());
  }
}

mesofluct::Format to_format(mf_format f) {
  return f == MF_FORMAT_JSON ? mesofluct::Format::Json : mesofluct::Format::Csv;
}

}  // namespace

extern "C" {

const char* mf_version(void) { return "1.0.0"; }

const char* mf_last_error(void) { return g_last_error.c_str(); }

mf_status mf_config_create(mf_config** out) {
  if (!out) return fail(MF_ERR_INVALID_ARG, "mf_config_create: null output pointer");
  return guarded([&] { *out = new mf_config(); });
}

void mf_config_destroy(mf_config* cfg) { delete cfg; }

mf_status mf_config_set(mf_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(MF_ERR_INVALID_ARG, "mf_config_set: null argument");
  return guarded([&] { mesofluct::apply_setting(cfg->cfg, key, value); });
}

mf_status mf_config_validate(const mf_config* cfg) {
  if (!cfg) return fail(MF_ERR_INVALID_ARG, "mf_config_validate: null config");
  return guarded([&] {
    mesofluct::RunConfig copy = cfg->cfg;
    mesofluct::validate(copy);
  });
}

mf_format mf_config_format(const mf_config* cfg) {
  if (cfg && cfg->cfg.format == mesofluct::Format::Json) return MF_FORMAT_JSON;
  return MF_FORMAT_CSV;
}

mf_status mf_evolve(const mf_config* cfg, mf_table** out) {
  if (!cfg || !out) return fail(MF_ERR_INVALID_ARG, "mf_evolve: null argument");
  return guarded([&] { *out = new mf_table{mesofluct::cmd_evolve(cfg->cfg)}; });
}

mf_status mf_sweep(const mf_config* cfg, mf_table** grid, mf_table** critical) {
  if (!cfg || !grid) return fail(MF_ERR_INVALID_ARG, "mf_sweep: null argument");
  return guarded([&] {
    mesofluct::SweepResult res = mesofluct::cmd_sweep(cfg->cfg, critical != nullptr);
    *grid = new mf_table{std::move(res.grid)};
    if (critical) *critical = new mf_table{std::move(*res.critical)};
  });
}

size_t mf_table_rows(const mf_table* t) { return t ? t->table.rows.size() : 0; }

size_t mf_table_cols(const mf_table* t) { return t ? t->table.columns.size() : 0; }

const char* mf_table_column(const mf_table* t, size_t col) {
  if (!t || col >= t->table.columns.size()) return nullptr;
  return t->table.columns[col].c_str();
}

int mf_table_get(const mf_table* t, size_t row, size_t col, double* value) {
  if (!t || row >= t->table.rows.size() || col >= t->table.rows[row].size()) return 0;
  const auto& cell = t->table.rows[row][col];
  if (!cell) return 0;
  if (value) *value = *cell;
  return 1;
}

int mf_table_meta(const mf_table* t, const char* key, double* value) {
  if (!t || !key) return 0;
  const auto it = t->table.meta.find(key);
  if (it == t->table.meta.end()) return 0;
  if (value) *value = it->second;
  return 1;
}

mf_status mf_table_write(const mf_table* t, const char* path, mf_format format) {
  if (!t || !path) return fail(MF_ERR_INVALID_ARG, "mf_table_write: null argument");
  const mf_status s = guarded([&] { mesofluct::write_table(t->table, path, to_format(format)); });
  return s == MF_ERR_CONFIG ? fail(MF_ERR_IO, g_last_error) : s;
}

void mf_table_destroy(mf_table* t) { delete t; }

mf_status mf_verify(const mf_config* cfg, mf_report** out) {
  if (!cfg || !out) return fail(MF_ERR_INVALID_ARG, "mf_verify: null argument");
  return guarded([&] {
    mesofluct::VerifyOptions opts;
    opts.fast = cfg->cfg.fast;
    opts.seed = cfg->cfg.seed;
    *out = new mf_report{mesofluct::run_verification(opts)};
  });
}

size_t mf_report_size(const mf_report* r) { return r ? r->checks.size() : 0; }

const char* mf_report_name(const mf_report* r, size_t i) {
  return r && i < r->checks.size() ? r->checks[i].name.c_str() : nullptr;
}

int mf_report_passed(const mf_report* r, size_t i) {
  return r && i < r->checks.size() && r->checks[i].passed ? 1 : 0;
}

double mf_report_residual(const mf_report* r, size_t i) {
  return r && i < r->checks.size() ? r->checks[i].residual : 0.0;
}

const char* mf_report_detail(const mf_report* r, size_t i) {
  return r && i < r->checks.size() ? r->checks[i].detail.c_str() : nullptr;
}

void mf_report_destroy(mf_report* r) { delete r; }

mf_status mf_closed_form_s(double epsilon, double delta, double gamma, double j0, double r,
                           int one_mode, double t, double* out) {
  if (!out) return fail(MF_ERR_INVALID_ARG, "mf_closed_form_s: null output pointer");
  return guarded([&] {
    const mesofluct::ModelSpec spec = mesofluct::ModelSpec::model1(delta, gamma, j0);
    const mesofluct::ClosedFormContext ctx{mesofluct::thermal_params_from_epsilon(epsilon, 1.0),
                                           spec.m1, r,
                                           one_mode ? mesofluct::Variant::OneMode
                                                    : mesofluct::Variant::Symmetric};
    *out = mesofluct::closed_form_S(ctx, t);
  });
}

}  // extern "C"
