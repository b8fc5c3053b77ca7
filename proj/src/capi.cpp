#include "cdl/cdl.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

#include "crossdiff/app.hpp"
#include "crossdiff/checkpoint.hpp"
#include "crossdiff/error.hpp"
#include "crossdiff/presets.hpp"

struct cdl_config {
  crossdiff::RunConfig cfg;
};

struct cdl_run {
  crossdiff::RunOutputs out;
};

struct cdl_field {
  crossdiff::Field field;
};

namespace {

thread_local std::string last_error;

cdl_status fail(cdl_status s, const std::string& what) {
  last_error = what;
  return s;
}

// Maps the library's exceptions onto status codes.
template <class Fn>
cdl_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return CDL_OK;
  } catch (const crossdiff::ConfigError& e) {
    return fail(CDL_ERR_CONFIG, e.what());
  } catch (const crossdiff::CorruptionError& e) {
    return fail(CDL_ERR_CORRUPTION, e.what());
  } catch (const crossdiff::InputError& e) {
    return fail(CDL_ERR_INPUT, e.what());
  } catch (const crossdiff::NumericalError& e) {
    return fail(CDL_ERR_NUMERICAL, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(CDL_ERR_IO, e.what());
  } catch (const crossdiff::Error& e) {
    return fail(CDL_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CDL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CDL_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

namespace {

template <class Fn>
cdl_status component_functional(const cdl_field* f, int component, double* out, const char* name, Fn&& fn) {
  if (!f || !out) return fail(CDL_ERR_ARGUMENT, std::string(name) + ": NULL argument");
  if (component < 0 || component >= f->field.components())
    return fail(CDL_ERR_ARGUMENT, std::string(name) + ": component out of range");
  return guarded([&] {
    f->field.require_finite(name);
    *out = fn(f->field.grid(), f->field.component(component));
  });
}

}  // namespace

extern "C" {

const char* cdl_last_error(void) { return last_error.c_str(); }

void cdl_string_free(char* s) { std::free(s); }

size_t cdl_preset_count(void) { return crossdiff::preset_names().size(); }

const char* cdl_preset_name(size_t i) {
  static const std::vector<std::string> names = crossdiff::preset_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

cdl_status cdl_preset_text(const char* name, char** out) {
  if (!name || !out) return fail(CDL_ERR_ARGUMENT, "cdl_preset_text: NULL argument");
  const auto text = crossdiff::preset_text(name);
  if (!text) return fail(CDL_ERR_CONFIG, std::string("unknown preset '") + name + "'");
  return guarded([&] { *out = dup(*text); });
}

cdl_status cdl_config_parse(const char* text, cdl_config** out) {
  if (!text || !out) return fail(CDL_ERR_ARGUMENT, "cdl_config_parse: NULL argument");
  return guarded([&] { *out = new cdl_config{crossdiff::parse_config(text)}; });
}

cdl_status cdl_config_load(const char* source, cdl_config** out) {
  if (!source || !out) return fail(CDL_ERR_ARGUMENT, "cdl_config_load: NULL argument");
  return guarded([&] { *out = new cdl_config{crossdiff::load_config(source)}; });
}

cdl_status cdl_config_echo(const cdl_config* cfg, char** out) {
  if (!cfg || !out) return fail(CDL_ERR_ARGUMENT, "cdl_config_echo: NULL argument");
  return guarded([&] { *out = dup(crossdiff::echo_config(cfg->cfg)); });
}

cdl_status cdl_config_set_output_dir(cdl_config* cfg, const char* dir) {
  if (!cfg || !dir) return fail(CDL_ERR_ARGUMENT, "cdl_config_set_output_dir: NULL argument");
  if (!*dir) return fail(CDL_ERR_CONFIG, "output.dir: must not be empty");
  cfg->cfg.output.dir = dir;
  last_error.clear();
  return CDL_OK;
}

void cdl_config_free(cdl_config* cfg) { delete cfg; }

cdl_status cdl_run_execute(const cdl_config* cfg, int write_outputs, cdl_run** out) {
  if (!cfg || !out) return fail(CDL_ERR_ARGUMENT, "cdl_run_execute: NULL argument");
  return guarded([&] { *out = new cdl_run{crossdiff::execute_run(cfg->cfg, write_outputs != 0)}; });
}

cdl_outcome cdl_run_outcome(const cdl_run* run) {
  if (!run) return CDL_OUTCOME_SOLVER_FAILURE;
  switch (run->out.result.outcome) {
    case crossdiff::Outcome::completed: return CDL_OUTCOME_COMPLETED;
    case crossdiff::Outcome::blowup: return CDL_OUTCOME_BLOWUP;
    case crossdiff::Outcome::solver_failure: return CDL_OUTCOME_SOLVER_FAILURE;
  }
  return CDL_OUTCOME_SOLVER_FAILURE;
}

double cdl_run_t_final(const cdl_run* run) { return run ? run->out.result.t_final : 0.0; }

long cdl_run_steps(const cdl_run* run) { return run ? run->out.result.steps : 0; }

int cdl_run_blowup_time(const cdl_run* run, double* out) {
  if (!run || !run->out.result.blowup_time) return 0;
  if (out) *out = *run->out.result.blowup_time;
  return 1;
}

size_t cdl_run_record_count(const cdl_run* run) { return run ? run->out.records.size() : 0; }

cdl_status cdl_run_diagnostics_csv(const cdl_run* run, char** out) {
  if (!run || !out) return fail(CDL_ERR_ARGUMENT, "cdl_run_diagnostics_csv: NULL argument");
  return guarded([&] { *out = dup(run->out.diagnostics_csv); });
}

cdl_status cdl_run_summary(const cdl_run* run, char** out) {
  if (!run || !out) return fail(CDL_ERR_ARGUMENT, "cdl_run_summary: NULL argument");
  return guarded([&] { *out = dup(run->out.summary); });
}

cdl_status cdl_run_final_state(const cdl_run* run, cdl_field** out) {
  if (!run || !out) return fail(CDL_ERR_ARGUMENT, "cdl_run_final_state: NULL argument");
  return guarded([&] { *out = new cdl_field{run->out.result.final_state}; });
}

void cdl_run_free(cdl_run* run) { delete run; }

cdl_status cdl_check(const cdl_config* cfg, int write_outputs, char** csv, int* violated) {
  if (!cfg) return fail(CDL_ERR_ARGUMENT, "cdl_check: NULL config");
  return guarded([&] {
    const auto res = crossdiff::execute_check(cfg->cfg, write_outputs != 0);
    if (violated) *violated = res.violated;
    if (csv) *csv = dup(res.csv);
  });
}

cdl_status cdl_convergence(const cdl_config* cfg, int levels, char** report, double* ratios) {
  if (!cfg) return fail(CDL_ERR_ARGUMENT, "cdl_convergence: NULL config");
  if (levels < 2) return fail(CDL_ERR_ARGUMENT, "cdl_convergence: levels must be >= 2");
  return guarded([&] {
    const auto res = crossdiff::convergence_study(cfg->cfg, levels);
    if (ratios)
      for (std::size_t k = 0; k < res.ratios.size(); ++k) ratios[k] = res.ratios[k];
    if (report) *report = dup(res.report);
  });
}

cdl_status cdl_field_create(int nx, int ny, double h, int m, cdl_field** out) {
  if (!out) return fail(CDL_ERR_ARGUMENT, "cdl_field_create: NULL argument");
  if (m < 1) return fail(CDL_ERR_ARGUMENT, "cdl_field_create: m must be >= 1");
  return guarded([&] { *out = new cdl_field{crossdiff::Field(crossdiff::Grid2D(nx, ny, h), m)}; });
}

void cdl_field_free(cdl_field* f) { delete f; }

cdl_status cdl_field_data(cdl_field* f, double** data, size_t* count) {
  if (!f || !data) return fail(CDL_ERR_ARGUMENT, "cdl_field_data: NULL argument");
  *data = f->field.values().data();
  if (count) *count = f->field.values().size();
  last_error.clear();
  return CDL_OK;
}

cdl_status cdl_field_shape(const cdl_field* f, int* nx, int* ny, double* h, int* m) {
  if (!f) return fail(CDL_ERR_ARGUMENT, "cdl_field_shape: NULL field");
  const auto& g = f->field.grid();
  if (nx) *nx = g.nx();
  if (ny) *ny = g.ny();
  if (h) *h = g.h();
  if (m) *m = f->field.components();
  last_error.clear();
  return CDL_OK;
}

cdl_status cdl_checkpoint_write(const char* path, const cdl_field* f, double t) {
  if (!path || !f) return fail(CDL_ERR_ARGUMENT, "cdl_checkpoint_write: NULL argument");
  return guarded([&] { crossdiff::write_checkpoint(path, f->field, t); });
}

cdl_status cdl_checkpoint_read(const char* path, cdl_field** out, double* t) {
  if (!path || !out) return fail(CDL_ERR_ARGUMENT, "cdl_checkpoint_read: NULL argument");
  return guarded([&] {
    crossdiff::Checkpoint cp = crossdiff::read_checkpoint(path);
    if (t) *t = cp.t;
    *out = new cdl_field{std::move(cp.state)};
  });
}


cdl_status cdl_integrate(const cdl_field* f, int component, double* out) {
  return component_functional(f, component, out, "cdl_integrate",
                              [](const auto& g, auto v) { return crossdiff::integrate(g, v); });
}

cdl_status cdl_lady_ratio(const cdl_field* f, int component, double* out) {
  return component_functional(f, component, out, "cdl_lady_ratio",
                              [](const auto& g, auto v) { return crossdiff::lady_check(g, v); });
}

cdl_status cdl_poincare_ratio(const cdl_field* f, int component, double* out) {
  return component_functional(f, component, out, "cdl_poincare_ratio",
                              [](const auto& g, auto v) { return crossdiff::poincare_check(g, v); });
}

}  // extern "C"
