#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcy/courant.hpp"
#include "gcy/quartic.hpp"

namespace gcy {

// Periodic collocation grid on [0, 2pi)^dim with N points per axis and Fourier cutoff K.
// Points are stored row-major with the last axis fastest.
class TorusGrid {
 public:
  TorusGrid(int dim, int points_per_axis, int cutoff);

  int dim() const { return dim_; }
  int points_per_axis() const { return n_; }
  int cutoff() const { return k_; }
  std::size_t num_points() const { return npts_; }
  int num_channels() const { return 1 << (dim_ - 1); }
  double cell_volume() const;
  double total_volume() const;
  std::vector<double> point(std::size_t p) const;

  // Band modes |k_i| <= K, enumerated lexicographically from (-K, ..., -K).
  std::size_t num_modes() const { return nmodes_; }
  std::vector<int> mode(std::size_t m) const;
  std::size_t mode_index(const std::vector<int>& k) const;
  std::size_t negated_mode(std::size_t m) const { return nmodes_ - 1 - m; }
  std::size_t zero_mode() const { return (nmodes_ - 1) / 2; }

  bool operator==(const TorusGrid& o) const { return dim_ == o.dim_ && n_ == o.n_ && k_ == o.k_; }

 private:
  int dim_, n_, k_;
  std::size_t npts_, nmodes_;
};

// Real form field of one parity sampled on a grid, point-major over the parity channels
// (channel order of parity_masks).
class GridForm {
 public:
  GridForm(const TorusGrid& g, Parity p);
  static GridForm constant(const TorusGrid& g, const Form& f);
  static GridForm sample(const TorusGrid& g, Parity p, const std::function<Form(std::span<const double>)>& fn);
  static GridForm from_field(const TorusGrid& g, const FormField& f);

  const TorusGrid& grid() const { return grid_; }
  Parity parity() const { return parity_; }
  int num_channels() const { return grid_.num_channels(); }
  const std::vector<Mask>& channels() const { return *chan_; }

  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }
  double* point_data(std::size_t p) { return v_.data() + p * static_cast<std::size_t>(num_channels()); }
  const double* point_data(std::size_t p) const { return v_.data() + p * static_cast<std::size_t>(num_channels()); }
  Form at(std::size_t p) const;
  void set(std::size_t p, const Form& f);

  double max_abs() const;
  // Energy removed by band truncation while this field was produced.
  double aliasing_energy = 0.0;

  GridForm& operator+=(const GridForm& o);
  GridForm& operator-=(const GridForm& o);
  GridForm& operator*=(double s);
  friend GridForm operator+(GridForm a, const GridForm& b) { return a += b; }
  friend GridForm operator-(GridForm a, const GridForm& b) { return a -= b; }
  friend GridForm operator*(double s, GridForm a) { return a *= s; }

 private:
  TorusGrid grid_;
  Parity parity_;
  const std::vector<Mask>* chan_;
  std::vector<double> v_;
};

void require_same_grid(const GridForm& a, const GridForm& b, const char* what);

// integral of sum_S a_S b_S
double l2_inner(const GridForm& a, const GridForm& b);
double l2_norm(const GridForm& a);
// integral of the top coefficient of sigma(a) ^ b
double integrate_mukai(const GridForm& a, const GridForm& b);
// Pointwise D with <a, b> = (D a) . b.
GridForm mukai_dual(const GridForm& a);
GridForm wedge(const GridForm& a, const GridForm& b);

// Fourier amplitudes on the band modes; amp(k) = mean of f e^{-ik.x}.
struct Spectrum {
  TorusGrid grid;
  Parity parity;
  std::vector<cplx> amps;  // mode-major, num_channels per mode

  Spectrum(const TorusGrid& g, Parity p);
  int num_channels() const { return grid.num_channels(); }
  cplx* mode_data(std::size_t m) { return amps.data() + m * static_cast<std::size_t>(num_channels()); }
  const cplx* mode_data(std::size_t m) const { return amps.data() + m * static_cast<std::size_t>(num_channels()); }

  Spectrum& operator+=(const Spectrum& o);
  Spectrum& operator-=(const Spectrum& o);
  Spectrum& operator*=(double s);
  friend Spectrum operator+(Spectrum a, const Spectrum& b) { return a += b; }
  friend Spectrum operator-(Spectrum a, const Spectrum& b) { return a -= b; }
  friend Spectrum operator*(double s, Spectrum a) { return a *= s; }
};

// FFT and truncation to the band; the out-of-band energy (mean square) goes to *aliasing.
Spectrum analyze(const GridForm& a, double* aliasing = nullptr);
GridForm synthesize(const Spectrum& s);
double l2_norm(const Spectrum& s);

Spectrum spectral_d(const Spectrum& a);
GridForm spectral_d(const GridForm& a);
Spectrum project_exact(const Spectrum& a);
Spectrum mukai_dual(const Spectrum& a);

struct HodgeParts {
  GridForm harmonic;
  GridForm d_part;
  GridForm dstar_part;
};
HodgeParts hodge_project(const GridForm& a);

// d_H a = d a + H ^ a for a closed 3-form field H (stored as an odd GridForm).
GridForm d_H(const GridForm& a, const GridForm& h);

// ---- pointwise kernels ----

enum class Kernel { Omp, Serial };

struct HatField {
  std::vector<double> phi;
  GridForm rho_hat;
};

// phi(rho(x)) and rho_hat(rho(x)) at every point; StabilityError names the first unstable point.
HatField hat_field(const GridForm& rho, Kernel k = Kernel::Omp);
// J(rho(x)) w(x) at every point.
GridForm apply_j(const GridForm& rho, const GridForm& w, Kernel k = Kernel::Omp);
std::vector<TypeTag> classify_points(const GridForm& rho);

// ---- volume functional and flows ----

double volume_functional(const GridForm& rho, Kernel k = Kernel::Omp);

enum class FlowMode { Residual, Ascent, Descent };
std::string to_string(FlowMode m);
std::optional<FlowMode> flow_mode_from_string(const std::string& s);

struct FlowConfig {
  FlowMode mode = FlowMode::Residual;
  double tol = 1e-8;
  int max_iter = 100;
  std::optional<double> eps0;  // default 1 for residual mode, 0.1 otherwise
  int max_halvings = 40;
  Kernel kernel = Kernel::Omp;
  bool classify = true;
};

struct FlowStep {
  int iteration;
  double volume;
  double residual;  // ||d rho_hat|| (or ||d_H rho_hat||)
  double drift;
  double step;
  double aliasing;
};

struct FlowReport {
  FlowMode mode = FlowMode::Residual;
  bool twisted = false;
  bool converged = false;
  int iterations = 0;
  double final_volume = 0.0;
  double final_residual = 0.0;
  double max_drift = 0.0;
  double max_closedness = 0.0;   // max ||d rho|| (or ||d_H rho||) over iterates
  bool monotone = true;          // V monotone along accepted ascent/descent steps
  std::vector<FlowStep> history;
  std::vector<TypeTag> tags;     // per grid point at the endpoint
  bool tags_constant = false;
  std::string diagnostic;
  std::optional<GridForm> final_rho;

  std::map<std::string, int> tag_counts() const;
};

FlowReport flow(const GridForm& rho0, const FlowConfig& cfg = {});
// H must be a spatially constant closed 3-form; H = 0 runs flow() itself.
FlowReport twisted_flow(const GridForm& rho0, const GridForm& h, const FlowConfig& cfg = {});

// ---- second variation ----

// ||d rho_hat||_L2 for the band-limited rho_hat.
double criticality_residual(const GridForm& rho, Kernel k = Kernel::Omp);
double hessian_form(const GridForm& rho, const GridForm& a1, const GridForm& a2, double crit_tol = 1e-7);
// d((X + xi) . rho)
GridForm orbit_tangent(const GridForm& rho, const VectorField& x, const FormField& xi);

struct DdjOptions {
  std::size_t max_dense_dim = 2000;
  // Restrict the modes to k_j = 0 off these axes (empty = all axes).
  std::vector<bool> active_axes;
  double crit_tol = 1e-7;
  bool force_dense = false;
};

struct DdjReport {
  bool per_mode = false;
  std::size_t modes = 0;
  std::size_t exact_dim = 0;
  std::size_t kernel_dim = 0;
  std::size_t image_dim = 0;
  bool kernel_in_image = false;
  std::string note;
};

// Finite truncation of dJd tau = 0 => d tau = d((X + xi) . rho) on the modes |k_i| <= cutoff.
DdjReport ddj_check(const GridForm& rho, int cutoff, const DdjOptions& opt = {});

// ---- presets ----

struct FlowProblem {
  int dim = 6;
  int points = 8;
  int cutoff = 2;
  std::uint64_t seed = 1;
  std::string initial = "symplectic";
  std::optional<Form> base;  // explicit constant base form, overrides `initial`
  double perturbation = 0.0;
  std::optional<Form> h;  // constant 3-form
  FlowConfig config;
};

Form preset_form(const std::string& name);
// An exact field d(gamma), gamma random in the band with the opposite parity, scaled so
// that its largest pointwise coefficient is `amplitude`.
GridForm random_exact_perturbation(const TorusGrid& g, Parity p, double amplitude, std::uint64_t seed);
// The same with d replaced by d_H for a constant 3-form H (d-exact when H = 0).
GridForm random_exact_perturbation(const TorusGrid& g, Parity p, double amplitude, std::uint64_t seed, const Form& h);
GridForm initial_data(const FlowProblem& prob);

}  // namespace gcy
