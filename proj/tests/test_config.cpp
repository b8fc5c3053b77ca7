#include <gtest/gtest.h>

#include "crossdiff/config.hpp"
#include "crossdiff/error.hpp"
#include "crossdiff/presets.hpp"

using namespace crossdiff;

namespace {

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string error_text(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

const char* kMinimal = "[grid]\nnx = 16\nny = 8\n\n[solver]\nt_end = 0.5\n";

}  // namespace

TEST(Config, MinimalFileFillsDefaults) {
  const RunConfig c = parse_config(kMinimal);
  EXPECT_EQ(c.grid.nx, 16);
  EXPECT_EQ(c.grid.ny, 8);
  EXPECT_DOUBLE_EQ(c.grid.h, 1.0 / 16);
  EXPECT_EQ(c.model.family, "heat");
  EXPECT_EQ(c.model.m, 1);
  EXPECT_EQ(c.model.d, std::vector<double>{1.0});
  EXPECT_DOUBLE_EQ(c.solver.t_end, 0.5);
  EXPECT_EQ(c.solver.scheme, Scheme::explicit_euler);
  EXPECT_EQ(c.solver.dt_init, SolverConfig{}.dt_init);
  EXPECT_EQ(c.init.preset, "sine");
  EXPECT_EQ(c.output.dir, "out");
  const Grid2D g = build_grid(c);
  EXPECT_EQ(g.nx(), 16);
  EXPECT_DOUBLE_EQ(g.ly(), 0.5);
}

TEST(Config, NegativeSizeReportsItsLine) {
  const std::string text = "[grid]\nnx = -1\nny = 8\n[solver]\nt_end = 1\n";
  EXPECT_EQ(error_line(text), 2);
  EXPECT_NE(error_text(text).find("grid.nx"), std::string::npos);
}

TEST(Config, UnknownKeySectionAndDuplicates) {
  EXPECT_EQ(error_line("[grid]\nnx = 8\nny = 8\nnz = 8\n[solver]\nt_end = 1\n"), 4);
  EXPECT_EQ(error_line("[grid]\nnx = 8\nny = 8\n[solverr]\nt_end = 1\n"), 4);
  EXPECT_EQ(error_line("[grid]\nnx = 8\nnx = 9\nny = 8\n[solver]\nt_end = 1\n"), 3);
  EXPECT_EQ(error_line("nx = 8\n"), 1);
}

TEST(Config, TypeMismatch) {
  const std::string text = "[grid]\nnx = eight\nny = 8\n[solver]\nt_end = 1\n";
  EXPECT_EQ(error_line(text), 2);
  EXPECT_NE(error_text(text).find("eight"), std::string::npos);
  EXPECT_EQ(error_line("[grid]\nnx = 8\nny = 8\n[solver]\nt_end = 1\nscheme = rk4\n"), 6);
  EXPECT_EQ(error_line("[grid]\nnx = 8.5\nny = 8\n[solver]\nt_end = 1\n"), 2);
}

TEST(Config, MissingRequiredKey) {
  const std::string text = "[grid]\nnx = 8\n[solver]\nt_end = 1\n";
  EXPECT_NE(error_text(text).find("grid.ny"), std::string::npos);
  EXPECT_THROW(parse_config("[grid]\nnx = 8\nny = 8\n"), ConfigError);
}

TEST(Config, KeysForeignToFamilyAreRejected) {
  const std::string text = "[grid]\nnx = 8\nny = 8\n[model]\nfamily = heat\nbeta = 1\n[solver]\nt_end = 1\n";
  EXPECT_EQ(error_line(text), 6);
}

TEST(Config, ModelValidationPointsAtTheKey) {
  const std::string text =
      "[grid]\nnx = 8\nny = 8\n[model]\nfamily = skt\nm = 2\nd = 1, -1\n[solver]\nt_end = 1\n";
  EXPECT_EQ(error_line(text), 7);
  EXPECT_EQ(error_line("[grid]\nnx = 8\nny = 8\n[model]\nfamily = skt\nm = 2\na = 1, 2, 3\n[solver]\nt_end = 1\n"), 7);
}

TEST(Config, SolverValidation) {
  EXPECT_EQ(error_line("[grid]\nnx = 8\nny = 8\n[solver]\nt_end = 1\ncfl_safety = 0\n"), 6);
  EXPECT_EQ(error_line("[grid]\nnx = 8\nny = 8\n[solver]\nt_end = 0\n"), 5);
}

TEST(Config, EveryPresetRoundTrips) {
  const auto names = preset_names();
  ASSERT_GE(names.size(), 6u);
  for (const auto& name : names) {
    const RunConfig c = parse_config(*preset_text(name));
    const std::string echoed = echo_config(c);
    const RunConfig again = parse_config(echoed);
    EXPECT_EQ(c, again) << name;
    EXPECT_EQ(echoed, echo_config(again)) << name;
    const auto model = build_model(c);
    const Grid2D g = build_grid(c);
    const Field u0 = build_initial_state(c, g, model->m());
    EXPECT_TRUE(u0.boundary_is_zero()) << name;
    EXPECT_FALSE(u0.first_nonfinite()) << name;
  }
}

TEST(Config, PresetModelsHaveExpectedShape) {
  EXPECT_EQ(build_model(parse_config(*preset_text("skt2")))->m(), 2);
  EXPECT_EQ(build_model(parse_config(*preset_text("pyramid3")))->structure(), StructureTag::triangular);
  EXPECT_EQ(build_model(parse_config(*preset_text("focusing")))->traits().K, 3.0);
  EXPECT_FALSE(preset_text("nope"));
}

TEST(Config, RandomSmoothIsSeeded) {
  RunConfig c = parse_config(*preset_text("skt2"));
  const Grid2D g = build_grid(c);
  const Field a = build_initial_state(c, g, 2);
  EXPECT_EQ(a, build_initial_state(c, g, 2));
  c.init.seed = 8;
  EXPECT_NE(a, build_initial_state(c, g, 2));
}

TEST(Config, CheckAndMonitorOptions) {
  const RunConfig c = parse_config(
      "[grid]\nnx = 8\nny = 8\n[model]\nfamily = skt\nm = 2\n[solver]\nt_end = 1\n"
      "[check]\nbox_lo = 1\nbox_hi = 5\nn_samples = 10\nseed = 4\n[output]\ndiag_every = 3\nexcess_every = 0\n");
  const CheckOptions o = check_options(c);
  EXPECT_EQ(o.box, Box::cube(2, 1, 5));
  EXPECT_EQ(o.n_samples, 10);
  EXPECT_EQ(o.seed, 4u);
  const MonitorOptions mo = monitor_options(c);
  EXPECT_EQ(mo.diag_every, 3);
  EXPECT_EQ(mo.excess_every, 0);
}

TEST(Config, CommentsAndWhitespace) {
  const RunConfig c = parse_config("# header\n[grid]  \n  nx=8 # trailing\nny = 8\n\n[solver]\nt_end = 1\n");
  EXPECT_EQ(c.grid.nx, 8);
}
