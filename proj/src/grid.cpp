#include "crossdiff/grid.hpp"

#include <algorithm>
#include <cmath>

#include "crossdiff/error.hpp"

namespace crossdiff {

Grid2D::Grid2D(int nx, int ny, double h) : nx_(nx), ny_(ny), h_(h) {
  if (nx < 3) throw ConfigError("grid.nx: must be >= 3");
  if (ny < 3) throw ConfigError("grid.ny: must be >= 3");
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("grid.h: must be > 0");
}

double Grid2D::diameter() const noexcept { return std::sqrt(lx() * lx() + ly() * ly()); }

Field::Field(const Grid2D& grid, int components) : grid_(grid), m_(components) {
  if (components < 1) throw ConfigError("field: component count must be >= 1");
  values_.assign(static_cast<std::size_t>(components) * grid.node_count(), 0.0);
}

Field Field::from_function(const Grid2D& grid, int components,
                           const std::function<double(int, double, double)>& fn) {
  Field f(grid, components);
  for (int c = 0; c < components; ++c)
    for (int j = 0; j <= grid.ny(); ++j)
      for (int i = 0; i <= grid.nx(); ++i) f(c, i, j) = fn(c, grid.x(i), grid.y(j));
  return f;
}

void Field::node_state(int i, int j, std::span<double> out) const noexcept {
  const std::size_t k = grid_.index(i, j);
  for (int c = 0; c < m_; ++c) out[c] = values_[offset(c) + k];
}

void Field::pin_boundary() noexcept {
  for (int c = 0; c < m_; ++c) {
    for (int i = 0; i <= grid_.nx(); ++i) {
      (*this)(c, i, 0) = 0.0;
      (*this)(c, i, grid_.ny()) = 0.0;
    }
    for (int j = 0; j <= grid_.ny(); ++j) {
      (*this)(c, 0, j) = 0.0;
      (*this)(c, grid_.nx(), j) = 0.0;
    }
  }
}

bool Field::boundary_is_zero() const noexcept {
  for (int c = 0; c < m_; ++c)
    for (int j = 0; j <= grid_.ny(); ++j)
      for (int i = 0; i <= grid_.nx(); ++i)
        if (grid_.is_boundary(i, j) && (*this)(c, i, j) != 0.0) return false;
  return true;
}

std::optional<std::size_t> Field::first_nonfinite() const noexcept {
  for (std::size_t k = 0; k < values_.size(); ++k)
    if (!std::isfinite(values_[k])) return k;
  return std::nullopt;
}

void Field::require_finite(const std::string& what) const {
  if (auto bad = first_nonfinite()) throw CorruptionError(what + ": non-finite field value", *bad);
}

void Field::axpy(double a, const Field& other) {
  if (!(other.grid_ == grid_) || other.m_ != m_) throw InputError("axpy: field shape mismatch");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += a * other.values_[k];
}

double Field::max_abs() const noexcept {
  double r = 0.0;
  for (double v : values_) r = std::max(r, std::abs(v));
  return r;
}

GradField::GradField(const Grid2D& grid, int components) : grid_(grid), m_(components) {
  values_.assign(static_cast<std::size_t>(components) * 2 * grid.node_count(), 0.0);
}

void GradField::node_gradient(int i, int j, std::span<double> out) const noexcept {
  const std::size_t k = grid_.index(i, j);
  for (int c = 0; c < m_; ++c) {
    out[2 * c] = values_[offset(c, 0) + k];
    out[2 * c + 1] = values_[offset(c, 1) + k];
  }
}

void gradient_scalar(const Grid2D& g, std::span<const double> w, std::span<double> dx, std::span<double> dy) {
  const double inv2h = 0.5 / g.h();
  const int nx = g.nx();
  const int ny = g.ny();
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (i == 0)
        dx[k] = (-3.0 * w[k] + 4.0 * w[g.index(1, j)] - w[g.index(2, j)]) * inv2h;
      else if (i == nx)
        dx[k] = (3.0 * w[k] - 4.0 * w[g.index(nx - 1, j)] + w[g.index(nx - 2, j)]) * inv2h;
      else
        dx[k] = (w[g.index(i + 1, j)] - w[g.index(i - 1, j)]) * inv2h;

      if (j == 0)
        dy[k] = (-3.0 * w[k] + 4.0 * w[g.index(i, 1)] - w[g.index(i, 2)]) * inv2h;
      else if (j == ny)
        dy[k] = (3.0 * w[k] - 4.0 * w[g.index(i, ny - 1)] + w[g.index(i, ny - 2)]) * inv2h;
      else
        dy[k] = (w[g.index(i, j + 1)] - w[g.index(i, j - 1)]) * inv2h;
    }
  }
}

GradField gradient(const Field& u) {
  u.require_finite("gradient");
  GradField du(u.grid(), u.components());
  for (int c = 0; c < u.components(); ++c) gradient_scalar(u.grid(), u.component(c), du.axis(c, 0), du.axis(c, 1));
  return du;
}

FaceDiffusion::FaceDiffusion(const DiffusionFn& diffusion, const Field& state)
    : grid_(state.grid()), m_(state.components()) {
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  const std::size_t mm = static_cast<std::size_t>(m_) * m_;
  x_faces_.assign(static_cast<std::size_t>(nx) * (ny + 1) * mm, 0.0);
  y_faces_.assign(static_cast<std::size_t>(nx + 1) * ny * mm, 0.0);

  std::vector<double> a(m_), b(m_), mid(m_);
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      state.node_state(i, j, a);
      state.node_state(i + 1, j, b);
      for (int c = 0; c < m_; ++c) mid[c] = 0.5 * (a[c] + b[c]);
      diffusion(mid, {x_faces_.data() + (static_cast<std::size_t>(j) * nx + i) * mm, mm});
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      state.node_state(i, j, a);
      state.node_state(i, j + 1, b);
      for (int c = 0; c < m_; ++c) mid[c] = 0.5 * (a[c] + b[c]);
      diffusion(mid, {y_faces_.data() + (static_cast<std::size_t>(j) * (nx + 1) + i) * mm, mm});
    }
  }
}

const double* FaceDiffusion::x_face(int i, int j) const noexcept {
  return x_faces_.data() + (static_cast<std::size_t>(j) * grid_.nx() + i) * m_ * m_;
}

const double* FaceDiffusion::y_face(int i, int j) const noexcept {
  return y_faces_.data() + (static_cast<std::size_t>(j) * (grid_.nx() + 1) + i) * m_ * m_;
}

Field FaceDiffusion::apply(const Field& v) const {
  Field out(grid_, m_);
  const double inv_h2 = 1.0 / (grid_.h() * grid_.h());
  std::vector<double> east(m_), west(m_), north(m_), south(m_);
  for (int j = 1; j < grid_.ny(); ++j) {
    for (int i = 1; i < grid_.nx(); ++i) {
      for (int d = 0; d < m_; ++d) {
        const double here = v(d, i, j);
        east[d] = v(d, i + 1, j) - here;
        west[d] = here - v(d, i - 1, j);
        north[d] = v(d, i, j + 1) - here;
        south[d] = here - v(d, i, j - 1);
      }
      const double* ae = x_face(i, j);
      const double* aw = x_face(i - 1, j);
      const double* an = y_face(i, j);
      const double* as = y_face(i, j - 1);
      for (int c = 0; c < m_; ++c) {
        double s = 0.0;
        for (int d = 0; d < m_; ++d) {
          const std::size_t cd = static_cast<std::size_t>(c) * m_ + d;
          s += ae[cd] * east[d] - aw[cd] * west[d] + an[cd] * north[d] - as[cd] * south[d];
        }
        out(c, i, j) = s * inv_h2;
      }
    }
  }
  return out;
}

std::vector<double> FaceDiffusion::negative_diagonal() const {
  std::vector<double> diag(static_cast<std::size_t>(m_) * grid_.node_count(), 0.0);
  const double inv_h2 = 1.0 / (grid_.h() * grid_.h());
  for (int c = 0; c < m_; ++c) {
    const std::size_t cc = static_cast<std::size_t>(c) * m_ + c;
    for (int j = 1; j < grid_.ny(); ++j)
      for (int i = 1; i < grid_.nx(); ++i)
        diag[c * grid_.node_count() + grid_.index(i, j)] =
            (x_face(i, j)[cc] + x_face(i - 1, j)[cc] + y_face(i, j)[cc] + y_face(i, j - 1)[cc]) * inv_h2;
  }
  return diag;
}

Field div_flux(const DiffusionFn& diffusion, const Field& u) {
  u.require_finite("div_flux");
  Field out = FaceDiffusion(diffusion, u).apply(u);
  out.require_finite("div_flux: flux");
  return out;
}

namespace {

double pairwise_sum_impl(const double* v, std::size_t n) noexcept {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += v[k];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_impl(v, half) + pairwise_sum_impl(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) noexcept {
  return pairwise_sum_impl(values.data(), values.size());
}

double integrate(const Grid2D& g, std::span<const double> w) {
  if (w.size() != g.node_count()) throw InputError("integrate: array size does not match grid");
  std::vector<double> weighted(w.size());
  for (int j = 0; j <= g.ny(); ++j) {
    const double wy = (j == 0 || j == g.ny()) ? 0.5 : 1.0;
    for (int i = 0; i <= g.nx(); ++i) {
      const double wx = (i == 0 || i == g.nx()) ? 0.5 : 1.0;
      const std::size_t k = g.index(i, j);
      if (!std::isfinite(w[k])) throw CorruptionError("integrate: non-finite integrand", k);
      weighted[k] = wx * wy * w[k];
    }
  }
  return pairwise_sum(weighted) * g.h() * g.h();
}

double integrate(const Field& w, int c) { return integrate(w.grid(), w.component(c)); }

}  // namespace crossdiff
