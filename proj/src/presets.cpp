#include "crossdiff/presets.hpp"

#include <utility>

namespace crossdiff {
namespace {

const std::vector<std::pair<std::string, std::string>>& table() {
  static const std::vector<std::pair<std::string, std::string>> presets = {
      {"heat", R"(# Scalar heat equation from the principal sine mode.
[grid]
nx = 32
ny = 32

[model]
family = heat

[solver]
t_end = 0.1
dt_init = 0.001

[init]
preset = sine

[output]
dir = out/heat
diag_every = 20
)"},
      {"heat_imex", R"(# Heat equation with the linearized implicit scheme at 10x the explicit limit.
[grid]
nx = 32
ny = 32

[model]
family = heat

[solver]
scheme = imex
t_end = 0.1
dt_init = 0.0025
lin_tol = 1e-12

[init]
preset = sine

[output]
dir = out/heat_imex
)"},
      {"focusing", R"(# u_t = Lap u + u^3 from a large sine bump: blows up in finite time.
[grid]
nx = 64
ny = 64

[model]
family = custom_poly
m = 1
k = 0
K = 3
eps0_scale = 1

[solver]
t_end = 0.1
dt_init = 0.001

[init]
preset = sine
amplitude = 10

[output]
dir = out/focusing
diag_every = 5
)"},
      {"skt2", R"(# Classical two-species SKT model, P_i = u_i (1 + u_1 + u_2).
[grid]
nx = 24
ny = 24

[model]
family = skt
m = 2
r = 2
d = 1, 1
a = 1, 1, 1, 1
b = 1, 1
c = 1, 0.5, 0.5, 1

[solver]
t_end = 0.02
dt_init = 0.001

[init]
preset = random_smooth
amplitude = 1
seed = 7

[check]
n_samples = 2048

[output]
dir = out/skt2
diag_every = 25
)"},
      {"skt_energy", R"(# SKT with weak Lotka-Volterra competition, integrated to t = 1.
[grid]
nx = 24
ny = 24

[model]
family = skt
m = 2
r = 2
d = 1, 1
a = 0.5, 0.25, 0.25, 0.5
b = 1, 1
c = 0.1, 0.05, 0.05, 0.1

[solver]
scheme = imex
t_end = 1
dt_init = 0.01
lin_tol = 1e-10

[init]
preset = random_smooth
amplitude = 1
seed = 3

[output]
dir = out/skt_energy
diag_every = 5
)"},
      {"pyramid3", R"(# Three-level food chain with lower-triangular cross-diffusion.
[grid]
nx = 24
ny = 24

[model]
family = pyramid
m = 3
d = 1, 1, 1
s = 0.5, 0.5, 0.5
beta = 0, 0, 0, 0.1, 0, 0, 0.1, 0.1, 0
b = 1, 0.5, 0.25
c = 0.5, 0, 0, 0.25, 0.5, 0, 0.1, 0.25, 0.5

[solver]
t_end = 0.02
dt_init = 0.001

[init]
preset = random_smooth
amplitude = 1
seed = 11

[output]
dir = out/pyramid3
diag_every = 20
)"},
  };
  return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : table()) names.push_back(name);
  return names;
}

std::optional<std::string> preset_text(const std::string& name) {
  for (const auto& [n, text] : table())
    if (n == name) return text;
  return std::nullopt;
}

}  // namespace crossdiff
