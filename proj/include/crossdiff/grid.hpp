#ifndef CROSSDIFF_GRID_HPP
#define CROSSDIFF_GRID_HPP

// Uniform node-centred grids on an axis-aligned rectangle [0,lx]x[0,ly] and
// the discrete calculus used throughout: gradients, conservative flux
// divergence and trapezoidal quadrature.
//
// Nodes are (i,j) with 0 <= i <= nx, 0 <= j <= ny, at (i*h, j*h). Storage is
// component-major and row-major within a component: the flat index of
// (c,i,j) is c*(nx+1)*(ny+1) + j*(nx+1) + i.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crossdiff {

class Grid2D {
 public:
  /// Throws ConfigError unless nx >= 3, ny >= 3 and h > 0.
  Grid2D(int nx, int ny, double h);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double h() const noexcept { return h_; }
  int nodes_x() const noexcept { return nx_ + 1; }
  int nodes_y() const noexcept { return ny_ + 1; }
  std::size_t node_count() const noexcept {
    return static_cast<std::size_t>(nx_ + 1) * static_cast<std::size_t>(ny_ + 1);
  }
  double lx() const noexcept { return nx_ * h_; }
  double ly() const noexcept { return ny_ * h_; }
  double area() const noexcept { return lx() * ly(); }
  /// d(Omega) for the rectangle.
  double diameter() const noexcept;

  double x(int i) const noexcept { return i * h_; }
  double y(int j) const noexcept { return j * h_; }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_ + 1) + static_cast<std::size_t>(i);
  }
  bool is_boundary(int i, int j) const noexcept { return i == 0 || j == 0 || i == nx_ || j == ny_; }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  int nx_;
  int ny_;
  double h_;
};

/// m-component node field.
class Field {
 public:
  Field(const Grid2D& grid, int components);

  /// Samples fn(component, x, y) at every node.
  static Field from_function(const Grid2D& grid, int components,
                             const std::function<double(int, double, double)>& fn);

  const Grid2D& grid() const noexcept { return grid_; }
  int components() const noexcept { return m_; }

  double& operator()(int c, int i, int j) noexcept { return values_[offset(c) + grid_.index(i, j)]; }
  double operator()(int c, int i, int j) const noexcept { return values_[offset(c) + grid_.index(i, j)]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> component(int c) noexcept { return {values_.data() + offset(c), grid_.node_count()}; }
  std::span<const double> component(int c) const noexcept {
    return {values_.data() + offset(c), grid_.node_count()};
  }

  /// Gathers the m component values at node (i,j).
  void node_state(int i, int j, std::span<double> out) const noexcept;

  /// Sets every boundary node of every component to zero.
  void pin_boundary() noexcept;
  bool boundary_is_zero() const noexcept;

  std::optional<std::size_t> first_nonfinite() const noexcept;
  /// Throws CorruptionError naming `what` if any value is NaN or Inf.
  void require_finite(const std::string& what) const;

  /// this += a * other
  void axpy(double a, const Field& other);
  double max_abs() const noexcept;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::size_t offset(int c) const noexcept { return static_cast<std::size_t>(c) * grid_.node_count(); }

  Grid2D grid_;
  int m_;
  std::vector<double> values_;
};

/// Spatial gradient of an m-component field, indexed (component, axis, i, j).
class GradField {
 public:
  GradField(const Grid2D& grid, int components);

  const Grid2D& grid() const noexcept { return grid_; }
  int components() const noexcept { return m_; }

  double& operator()(int c, int axis, int i, int j) noexcept { return values_[offset(c, axis) + grid_.index(i, j)]; }
  double operator()(int c, int axis, int i, int j) const noexcept {
    return values_[offset(c, axis) + grid_.index(i, j)];
  }
  std::span<double> axis(int c, int axis) noexcept { return {values_.data() + offset(c, axis), grid_.node_count()}; }
  std::span<const double> axis(int c, int axis) const noexcept {
    return {values_.data() + offset(c, axis), grid_.node_count()};
  }
  std::span<const double> values() const noexcept { return values_; }

  /// Gathers Du at node (i,j) as out[2*c + axis].
  void node_gradient(int i, int j, std::span<double> out) const noexcept;

 private:
  std::size_t offset(int c, int axis) const noexcept {
    return (static_cast<std::size_t>(c) * 2 + static_cast<std::size_t>(axis)) * grid_.node_count();
  }

  Grid2D grid_;
  int m_;
  std::vector<double> values_;
};

/// Evaluates the m x m diffusion matrix (row-major) at a state vector.
using DiffusionFn = std::function<void(std::span<const double> u, std::span<double> a)>;

/// Central differences in the interior, one-sided second-order differences on
/// the boundary. Throws CorruptionError on non-finite input.
GradField gradient(const Field& u);

/// Same stencil for a single scalar node array.
void gradient_scalar(const Grid2D& grid, std::span<const double> w, std::span<double> dx, std::span<double> dy);

/// Face diffusion matrices A(ubar) frozen at a state, ubar being the mean of
/// the two node states adjacent to the face.
class FaceDiffusion {
 public:
  FaceDiffusion(const DiffusionFn& diffusion, const Field& state);

  const Grid2D& grid() const noexcept { return grid_; }
  int components() const noexcept { return m_; }

  /// Discrete divergence of A Dv at interior nodes; zero on the boundary.
  Field apply(const Field& v) const;
  /// Diagonal entries of the operator v -> -apply(v), per flat index.
  std::vector<double> negative_diagonal() const;

 private:
  const double* x_face(int i, int j) const noexcept;  // face between (i,j) and (i+1,j)
  const double* y_face(int i, int j) const noexcept;  // face between (i,j) and (i,j+1)

  Grid2D grid_;
  int m_;
  std::vector<double> x_faces_;
  std::vector<double> y_faces_;
};

/// div(A(u) Du) in conservative flux form. Throws CorruptionError if any face
/// flux is non-finite.
Field div_flux(const DiffusionFn& diffusion, const Field& u);

/// Sum with a fixed pairwise tree, independent of any scheduling.
double pairwise_sum(std::span<const double> values) noexcept;

/// Composite trapezoidal rule over the rectangle for a scalar node array.
double integrate(const Grid2D& grid, std::span<const double> w);
/// Component `c` of a field.
double integrate(const Field& w, int c = 0);

}  // namespace crossdiff

#endif  // CROSSDIFF_GRID_HPP
