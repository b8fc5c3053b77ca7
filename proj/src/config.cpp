#include "crossdiff/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "crossdiff/checkpoint.hpp"
#include "crossdiff/error.hpp"
#include "crossdiff/format.hpp"
#include "crossdiff/models.hpp"
#include "crossdiff/sampling.hpp"

namespace crossdiff {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(const std::string& key, const std::string& expected, const std::string& raw, int line) {
  throw ConfigError(key + ": expected " + expected + ", got '" + raw + "'", line);
}

int to_int(const std::string& key, const std::string& raw, int line) {
  int v = 0;
  const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (raw.empty() || res.ec != std::errc() || res.ptr != raw.data() + raw.size()) bad_value(key, "an integer", raw, line);
  return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& raw, int line) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (raw.empty() || res.ec != std::errc() || res.ptr != raw.data() + raw.size())
    bad_value(key, "a non-negative integer", raw, line);
  return v;
}

double to_real(const std::string& key, const std::string& raw, int line) {
  double v = 0.0;
  const char* first = raw.data();
  if (!raw.empty() && raw[0] == '+') ++first;
  const auto res = std::from_chars(first, raw.data() + raw.size(), v);
  if (raw.empty() || res.ec != std::errc() || res.ptr != raw.data() + raw.size() || !std::isfinite(v))
    bad_value(key, "a finite number", raw, line);
  return v;
}

std::vector<double> to_list(const std::string& key, const std::string& raw, int line) {
  std::vector<double> out;
  if (trim(raw).empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = raw.find(',', pos);
    const std::string item = trim(std::string_view(raw).substr(pos, comma == std::string::npos ? raw.npos : comma - pos));
    out.push_back(to_real(key, item, line));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string list_text(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ", ";
    s += format_double(v[k]);
  }
  return s;
}

struct KeySpec {
  const char* section;
  const char* name;
  std::function<void(RunConfig&, const std::string&, const std::string&, int)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define CDL_INT(sec, field, member)                                                                   \
  KeySpec {                                                                                           \
    sec, #field, [](RunConfig& c, const std::string& k, const std::string& v, int l) {                \
      c.member.field = to_int(k, v, l);                                                               \
    },                                                                                                \
        [](const RunConfig& c) { return std::to_string(c.member.field); }                             \
  }
#define CDL_U64(sec, field, member)                                                                   \
  KeySpec {                                                                                           \
    sec, #field, [](RunConfig& c, const std::string& k, const std::string& v, int l) {                \
      c.member.field = to_u64(k, v, l);                                                               \
    },                                                                                                \
        [](const RunConfig& c) { return std::to_string(c.member.field); }                             \
  }
#define CDL_REAL(sec, field, member)                                                                  \
  KeySpec {                                                                                           \
    sec, #field, [](RunConfig& c, const std::string& k, const std::string& v, int l) {                \
      c.member.field = to_real(k, v, l);                                                              \
    },                                                                                                \
        [](const RunConfig& c) { return format_double(c.member.field); }                              \
  }
#define CDL_LIST(sec, field, member)                                                                  \
  KeySpec {                                                                                           \
    sec, #field, [](RunConfig& c, const std::string& k, const std::string& v, int l) {                \
      c.member.field = to_list(k, v, l);                                                              \
    },                                                                                                \
        [](const RunConfig& c) { return list_text(c.member.field); }                                  \
  }
#define CDL_TEXT(sec, field, member)                                                                  \
  KeySpec {                                                                                           \
    sec, #field, [](RunConfig& c, const std::string&, const std::string& v, int) { c.member.field = v; }, \
        [](const RunConfig& c) { return c.member.field; }                                             \
  }

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      CDL_INT("grid", nx, grid),
      CDL_INT("grid", ny, grid),
      CDL_REAL("grid", h, grid),
      CDL_TEXT("model", family, model),
      CDL_INT("model", m, model),
      CDL_INT("model", r, model),
      CDL_LIST("model", d, model),
      CDL_LIST("model", a, model),
      CDL_LIST("model", s, model),
      CDL_LIST("model", beta, model),
      CDL_LIST("model", b, model),
      CDL_LIST("model", c, model),
      CDL_REAL("model", k, model),
      CDL_REAL("model", K, model),
      CDL_REAL("model", eps0_scale, model),
      CDL_REAL("model", scale, model),
      CDL_REAL("model", drift, model),
      KeySpec{"solver", "scheme",
              [](RunConfig& c, const std::string& k, const std::string& v, int l) {
                if (v == "explicit")
                  c.solver.scheme = Scheme::explicit_euler;
                else if (v == "imex")
                  c.solver.scheme = Scheme::imex;
                else
                  bad_value(k, "explicit or imex", v, l);
              },
              [](const RunConfig& c) { return std::string(to_string(c.solver.scheme)); }},
      CDL_REAL("solver", t_end, solver),
      CDL_REAL("solver", dt_init, solver),
      CDL_REAL("solver", cfl_safety, solver),
      CDL_REAL("solver", dt_min, solver),
      CDL_REAL("solver", lin_tol, solver),
      CDL_INT("solver", lin_maxit, solver),
      CDL_REAL("solver", blowup_value_cap, solver),
      CDL_REAL("solver", blowup_w12_cap, solver),
      CDL_INT("solver", max_halvings, solver),
      CDL_TEXT("init", preset, init),
      CDL_REAL("init", amplitude, init),
      CDL_U64("init", seed, init),
      CDL_REAL("check", box_lo, check),
      CDL_REAL("check", box_hi, check),
      CDL_INT("check", n_samples, check),
      CDL_INT("check", n_dirs, check),
      CDL_U64("check", seed, check),
      CDL_TEXT("output", dir, output),
      CDL_INT("output", diag_every, output),
      CDL_INT("output", excess_every, output),
      CDL_INT("output", checkpoint_every, output),
      CDL_REAL("output", gronwall_c, output),
      CDL_REAL("output", c_eps, output),
      CDL_REAL("output", c_excess, output),
  };
  return table;
}

#undef CDL_INT
#undef CDL_U64
#undef CDL_REAL
#undef CDL_LIST
#undef CDL_TEXT

const std::map<std::string, std::vector<std::string>>& family_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"heat", {"d", "b", "c"}},
      {"skt", {"r", "d", "a", "b", "c"}},
      {"pyramid", {"d", "s", "beta", "b", "c"}},
      {"custom_poly", {"k", "K", "eps0_scale", "scale", "drift"}},
  };
  return keys;
}

bool model_key_applies(const std::string& family, const std::string& name) {
  if (name == "family" || name == "m") return true;
  const auto& keys = family_keys().at(family);
  return std::find(keys.begin(), keys.end(), name) != keys.end();
}

int default_m(const std::string& family) {
  if (family == "skt") return 2;
  if (family == "pyramid") return 3;
  return 1;
}

void fill(std::vector<double>& v, std::size_t n, double value) {
  if (v.empty()) v.assign(n, value);
}

std::vector<double> strictly_lower(int m, double value) {
  std::vector<double> v(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < i; ++j) v[i * m + j] = value;
  return v;
}

void resolve_defaults(RunConfig& c, bool h_given, bool m_given) {
  if (!h_given && c.grid.nx > 0) c.grid.h = 1.0 / c.grid.nx;
  ModelConfig& mc = c.model;
  if (!m_given) mc.m = default_m(mc.family);
  if (mc.m < 1) throw ConfigError("model.m: must be >= 1");
  const std::size_t m = static_cast<std::size_t>(mc.m);
  if (mc.family == "custom_poly") return;
  fill(mc.d, m, 1.0);
  fill(mc.b, m, 0.0);
  fill(mc.c, m * m, 0.0);
  if (mc.family == "skt") fill(mc.a, m * m, 1.0);
  if (mc.family == "pyramid") {
    fill(mc.s, m, 0.0);
    if (mc.beta.empty()) mc.beta = strictly_lower(mc.m, 0.0);
  }
}

void check_length(const std::vector<double>& v, std::size_t n, const char* key) {
  if (v.size() != n)
    throw ConfigError(std::string("model.") + key + ": expected " + std::to_string(n) + " values, got " +
                      std::to_string(v.size()));
}

void validate_config(const RunConfig& c) {
  build_grid(c);
  validate(c.solver);
  const ModelConfig& mc = c.model;
  if (mc.family != "custom_poly") {
    const std::size_t m = static_cast<std::size_t>(mc.m);
    check_length(mc.d, m, "d");
    check_length(mc.b, m, "b");
    check_length(mc.c, m * m, "c");
    if (mc.family == "skt") check_length(mc.a, m * m, "a");
    if (mc.family == "pyramid") {
      check_length(mc.s, m, "s");
      check_length(mc.beta, m * m, "beta");
    }
  }
  const std::string& p = c.init.preset;
  if (p != "sine" && p != "bump" && p != "random_smooth" && p.rfind("checkpoint:", 0) != 0)
    throw ConfigError("init.preset: expected sine, bump, random_smooth or checkpoint:<path>, got '" + p + "'");
  if (p.rfind("checkpoint:", 0) == 0 && p.size() == std::string("checkpoint:").size())
    throw ConfigError("init.preset: checkpoint path is empty");
  if (!(c.check.box_hi > c.check.box_lo)) throw ConfigError("check.box_hi: must exceed box_lo");
  if (c.check.n_samples < 1) throw ConfigError("check.n_samples: must be >= 1");
  if (c.check.n_dirs < 1) throw ConfigError("check.n_dirs: must be >= 1");
  if (c.output.dir.empty()) throw ConfigError("output.dir: must not be empty");
  if (c.output.diag_every < 1) throw ConfigError("output.diag_every: must be >= 1");
  if (c.output.excess_every < 0) throw ConfigError("output.excess_every: must be >= 0");
  if (c.output.checkpoint_every < 0) throw ConfigError("output.checkpoint_every: must be >= 0");
  if (c.output.gronwall_c < 0.0) throw ConfigError("output.gronwall_c: must be >= 0");
  if (c.output.c_eps < 0.0) throw ConfigError("output.c_eps: must be >= 0");
  if (c.output.c_excess < 0.0) throw ConfigError("output.c_excess: must be >= 0");
  build_model(c);
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  struct Entry {
    std::string value;
    int line;
  };
  std::map<std::string, Entry> entries;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header '" + line + "'", line_no);
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      static const char* sections[] = {"grid", "model", "solver", "init", "check", "output"};
      if (std::find_if(std::begin(sections), std::end(sections), [&](const char* s) { return section == s; }) ==
          std::end(sections))
        throw ConfigError("unknown section [" + section + "]", line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + line + "'", line_no);
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (section.empty()) throw ConfigError(key + ": key outside of any [section]", line_no);
    const std::string full = section + "." + key;
    const auto& table = key_table();
    if (std::none_of(table.begin(), table.end(),
                     [&](const KeySpec& k) { return section == k.section && key == k.name; }))
      throw ConfigError(full + ": unknown key", line_no);
    if (auto it = entries.find(full); it != entries.end())
      throw ConfigError(full + ": duplicate key (first set on line " + std::to_string(it->second.line) + ")", line_no);
    entries.emplace(full, Entry{value, line_no});
  }

  RunConfig cfg;
  for (const KeySpec& k : key_table()) {
    const std::string full = std::string(k.section) + "." + k.name;
    if (auto it = entries.find(full); it != entries.end()) k.set(cfg, full, it->second.value, it->second.line);
  }

  const auto line_of = [&](const std::string& key) {
    auto it = entries.find(key);
    return it == entries.end() ? 0 : it->second.line;
  };
  if (!family_keys().count(cfg.model.family))
    throw ConfigError("model.family: expected heat, skt, pyramid or custom_poly, got '" + cfg.model.family + "'",
                      line_of("model.family"));
  for (const auto& [key, entry] : entries)
    if (key.rfind("model.", 0) == 0 && !model_key_applies(cfg.model.family, key.substr(6)))
      throw ConfigError(key + ": not used by model family " + cfg.model.family, entry.line);
  for (const char* req : {"grid.nx", "grid.ny", "solver.t_end"})
    if (!entries.count(req)) throw ConfigError(std::string(req) + ": required key missing");

  try {
    resolve_defaults(cfg, entries.count("grid.h") > 0, entries.count("model.m") > 0);
    validate_config(cfg);
  } catch (const ConfigError& e) {
    if (e.line() > 0) throw;
    // Attach the line of the key the message starts with, when the file set it.
    const std::string what = e.what();
    const auto colon = what.find(':');
    throw ConfigError(what, colon == std::string::npos ? 0 : line_of(what.substr(0, colon)));
  }
  return cfg;
}

std::string echo_config(const RunConfig& cfg) {
  std::string out;
  std::string section;
  for (const KeySpec& k : key_table()) {
    if (std::string(k.section) == "model" && !model_key_applies(cfg.model.family, k.name)) continue;
    if (section != k.section) {
      if (!section.empty()) out += "\n";
      section = k.section;
      out += "[" + section + "]\n";
    }
    out += std::string(k.name) + " = " + k.get(cfg) + "\n";
  }
  return out;
}

Grid2D build_grid(const RunConfig& cfg) { return Grid2D(cfg.grid.nx, cfg.grid.ny, cfg.grid.h); }

std::unique_ptr<Model> build_model(const RunConfig& cfg) {
  const ModelConfig& mc = cfg.model;
  const Box box = Box::cube(mc.m, cfg.check.box_lo, cfg.check.box_hi);
  if (mc.family == "heat" || mc.family == "skt") {
    SKTParams p;
    p.m = mc.m;
    p.d = mc.d;
    p.a = mc.family == "heat" ? std::vector<double>{} : mc.a;
    p.r = mc.r;
    p.b = mc.b;
    p.c = mc.c;
    p.box = box;
    return skt_model(p);
  }
  if (mc.family == "pyramid") {
    FoodChainParams p;
    p.m = mc.m;
    p.d = mc.d;
    p.s = mc.s;
    p.beta = mc.beta;
    p.b = mc.b;
    p.c = mc.c;
    p.box = box;
    return pyramid_model(food_chain_table(p));
  }
  if (mc.family == "custom_poly") {
    PowerLawParams p;
    p.m = mc.m;
    p.k = mc.k;
    p.K = mc.K;
    p.eps0 = mc.eps0_scale;
    p.scale = mc.scale;
    p.drift = mc.drift;
    return power_law_model(p);
  }
  throw ConfigError("model.family: unknown family '" + mc.family + "'");
}

Field build_initial_state(const RunConfig& cfg, const Grid2D& grid, int m) {
  const std::string& preset = cfg.init.preset;
  const double amp = cfg.init.amplitude;
  const double lx = grid.lx(), ly = grid.ly();
  const double pi = std::numbers::pi;
  const auto envelope = [&](double x, double y) { return std::sin(pi * x / lx) * std::sin(pi * y / ly); };

  Field u(grid, m);
  if (preset == "sine") {
    u = Field::from_function(grid, m, [&](int, double x, double y) { return amp * envelope(x, y); });
  } else if (preset == "bump") {
    const double radius = 0.35 * std::min(lx, ly);
    u = Field::from_function(grid, m, [&](int, double x, double y) {
      const double r2 = ((x - 0.5 * lx) * (x - 0.5 * lx) + (y - 0.5 * ly) * (y - 0.5 * ly)) / (radius * radius);
      return r2 < 1.0 ? amp * std::pow(1.0 - r2, 3) : 0.0;
    });
  } else if (preset == "random_smooth") {
    // Envelope times (1 + g/2) with g a random low-mode cosine series scaled
    // to |g| <= 1, so values stay in [amp/2, 3amp/2] times the envelope.
    constexpr int modes = 4;
    std::mt19937_64 rng(cfg.init.seed);
    std::vector<double> coef(static_cast<std::size_t>(m) * modes * modes);
    for (double& v : coef) v = 2.0 * uniform01(rng) - 1.0;
    std::vector<double> norm(m, 0.0);
    for (int c = 0; c < m; ++c)
      for (int p = 0; p < modes; ++p)
        for (int q = 0; q < modes; ++q) norm[c] += std::abs(coef[(c * modes + p) * modes + q]) / (1.0 + p * p + q * q);
    u = Field::from_function(grid, m, [&](int c, double x, double y) {
      double g = 0.0;
      for (int p = 0; p < modes; ++p)
        for (int q = 0; q < modes; ++q)
          g += coef[(c * modes + p) * modes + q] / (1.0 + p * p + q * q) * std::cos(p * pi * x / lx) *
               std::cos(q * pi * y / ly);
      return amp * envelope(x, y) * (1.0 + 0.5 * g / norm[c]);
    });
  } else if (preset.rfind("checkpoint:", 0) == 0) {
    Checkpoint cp = read_checkpoint(preset.substr(std::string("checkpoint:").size()));
    if (!(cp.state.grid() == grid) || cp.state.components() != m)
      throw ConfigError("init.preset: checkpoint grid or component count does not match the config");
    u = std::move(cp.state);
  } else {
    throw ConfigError("init.preset: unknown preset '" + preset + "'");
  }
  u.pin_boundary();
  u.require_finite("initial state");
  return u;
}

CheckOptions check_options(const RunConfig& cfg) {
  CheckOptions o;
  o.box = Box::cube(cfg.model.m, cfg.check.box_lo, cfg.check.box_hi);
  o.n_samples = cfg.check.n_samples;
  o.n_dirs = cfg.check.n_dirs;
  o.seed = cfg.check.seed;
  return o;
}

MonitorOptions monitor_options(const RunConfig& cfg) {
  MonitorOptions o;
  o.diag_every = cfg.output.diag_every;
  o.excess_every = cfg.output.excess_every;
  o.gronwall_c = cfg.output.gronwall_c;
  o.c_eps = cfg.output.c_eps;
  o.c_excess = cfg.output.c_excess;
  return o;
}

}  // namespace crossdiff
