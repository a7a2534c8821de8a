#include <Eigen/SVD>

#include <cmath>
#include <array>

#include "gcy/variational.hpp"

namespace gcy {

std::string to_string(FlowMode m) {
  switch (m) {
    case FlowMode::Residual: return "residual";
    case FlowMode::Ascent: return "ascent";
    case FlowMode::Descent: return "descent";
  }
  return "residual";
}

std::optional<FlowMode> flow_mode_from_string(const std::string& s) {
  for (FlowMode m : {FlowMode::Residual, FlowMode::Ascent, FlowMode::Descent})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

std::map<std::string, int> FlowReport::tag_counts() const {
  std::map<std::string, int> out;
  for (TypeTag t : tags) ++out[to_string(t)];
  return out;
}

namespace {

// The complex whose exact forms are the admissible flow directions.
class FlowComplex {
 public:
  virtual ~FlowComplex() = default;
  // Orthogonal projection onto exact forms of the parity of rho.
  virtual Spectrum project(const Spectrum& a) const = 0;
  // The differential out of the parity of rho.
  virtual Spectrum differential(const Spectrum& a) const = 0;
};

class PlainComplex final : public FlowComplex {
 public:
  Spectrum project(const Spectrum& a) const override { return project_exact(a); }
  Spectrum differential(const Spectrum& a) const override { return spectral_d(a); }
};

// d_H = d + H^ with H constant: every Fourier mode is invariant, so the d_H-exact
// projector is assembled mode by mode from an SVD of i k^ + H^.
class TwistedComplex final : public FlowComplex {
 public:
  TwistedComplex(const TorusGrid& g, Parity rho_parity, const Form& h) : grid_(g), parity_(rho_parity) {
    const Parity other = opposite(rho_parity);
    for (int j = 0; j < 6; ++j) {
      const Form e = Form::basis(6, Mask{1} << j);
      in_[static_cast<std::size_t>(j)] = wedge_matrix(e, other);
      out_[static_cast<std::size_t>(j)] = wedge_matrix(e, rho_parity);
    }
    in_h_ = wedge_matrix(h, other);
    out_h_ = wedge_matrix(h, rho_parity);

    const std::size_t nm = g.num_modes();
    proj_.resize(nm);
    for (std::size_t m = 0; m < nm; ++m) {
      const std::size_t neg = g.negated_mode(m);
      if (neg < m) {
        proj_[m] = proj_[neg].conjugate();
        continue;
      }
      const MatC op = mode_matrix(in_, in_h_, g.mode(m));
      Eigen::JacobiSVD<MatC> svd(op, Eigen::ComputeThinU);
      const auto& sv = svd.singularValues();
      const double cut = 1e-9 * std::max(1.0, sv.size() ? sv(0) : 0.0);
      int r = 0;
      while (r < sv.size() && sv(r) > cut) ++r;
      const MatC u = svd.matrixU().leftCols(r);
      proj_[m] = u * u.adjoint();
    }
  }

  Spectrum project(const Spectrum& a) const override {
    Spectrum out(grid_, parity_);
    const int nc = grid_.num_channels();
    for (std::size_t m = 0; m < grid_.num_modes(); ++m) {
      Eigen::Map<const VecC> x(a.mode_data(m), nc);
      Eigen::Map<VecC> y(out.mode_data(m), nc);
      y = proj_[m] * x;
    }
    return out;
  }

  Spectrum differential(const Spectrum& a) const override {
    Spectrum out(grid_, opposite(parity_));
    const int nc = grid_.num_channels();
    for (std::size_t m = 0; m < grid_.num_modes(); ++m) {
      Eigen::Map<const VecC> x(a.mode_data(m), nc);
      Eigen::Map<VecC> y(out.mode_data(m), nc);
      y = mode_matrix(out_, out_h_, grid_.mode(m)) * x;
    }
    return out;
  }

 private:
  // Matrix of f ^ . from parity p to the opposite parity, in channel order.
  static MatC wedge_matrix(const Form& f, Parity p) {
    const auto in = parity_masks(6, p);
    const auto out = parity_masks(6, opposite(p));
    MatC m = MatC::Zero(static_cast<Eigen::Index>(out.size()), static_cast<Eigen::Index>(in.size()));
    for (std::size_t c = 0; c < in.size(); ++c) {
      const Form w = wedge(f, Form::basis(6, in[c]));
      for (std::size_t r = 0; r < out.size(); ++r) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = w[out[r]];
    }
    return m;
  }

  static MatC mode_matrix(const std::array<MatC, 6>& e, const MatC& h, const std::vector<int>& k) {
    MatC op = h;
    for (int j = 0; j < 6; ++j) op += cplx(0, k[static_cast<std::size_t>(j)]) * e[static_cast<std::size_t>(j)];
    return op;
  }

  TorusGrid grid_;
  Parity parity_;
  std::array<MatC, 6> in_, out_;
  MatC in_h_, out_h_;
  std::vector<MatC> proj_;
};

struct Evaluation {
  GridForm rho;
  HatField hat;
  double volume = 0.0;
  Spectrum r;           // projected gradient P(D rho_hat)
  double residual = 0.0;  // ||d rho_hat||
  double r_norm = 0.0;
  double aliasing = 0.0;
};

Evaluation evaluate(const Spectrum& s, const FlowComplex& cx, Kernel kernel) {
  GridForm rho = synthesize(s);
  HatField hat = hat_field(rho, kernel);
  double vol = 0.0;
  for (double v : hat.phi) vol += v;
  vol *= rho.grid().cell_volume();
  double lost = 0.0;
  const Spectrum hs = analyze(hat.rho_hat, &lost);
  Spectrum r = cx.project(mukai_dual(hs));
  const double res = l2_norm(cx.differential(hs));
  const double rn = l2_norm(r);
  return {std::move(rho), std::move(hat), vol, std::move(r), res, rn, lost};
}

double drift_of(const Spectrum& s, const Spectrum& s0, const FlowComplex& cx) {
  const Spectrum diff = s - s0;
  const double num = l2_norm(diff - cx.project(diff));
  const double den = l2_norm(s0 - cx.project(s0));
  return den > 0 ? num / den : num;
}

bool accepts(FlowMode mode, const Evaluation& cur, const Evaluation& trial) {
  switch (mode) {
    case FlowMode::Residual: return trial.r_norm < cur.r_norm;
    case FlowMode::Ascent: return trial.volume > cur.volume;
    case FlowMode::Descent: return trial.volume < cur.volume;
  }
  return false;
}

FlowReport run_flow(const GridForm& rho0, const FlowConfig& cfg, const FlowComplex& cx, bool twisted) {
  const TorusGrid& g = rho0.grid();
  if (g.dim() != 6) throw DimensionError("flow: needs a 6-dimensional grid");
  if (cfg.max_iter < 0) throw DomainError("flow: max_iter must be non-negative");
  if (!(cfg.tol > 0)) throw DomainError("flow: tolerance must be positive");

  double lost0 = 0.0;
  const Spectrum s0 = analyze(rho0, &lost0);
  const double scale = std::max(1.0, l2_norm(s0));
  if (lost0 * g.total_volume() > 1e-12 * scale * scale)
    throw DomainError("flow: initial data is not band-limited to the grid cutoff");
  const double closed0 = l2_norm(cx.differential(s0));
  if (closed0 > 1e-10 * scale)
    throw DomainError(std::string("flow: initial data is not ") + (twisted ? "d_H-closed" : "closed") +
                      " (residual " + std::to_string(closed0) + ")");

  FlowReport rep;
  rep.mode = cfg.mode;
  rep.twisted = twisted;
  const double eps0 = cfg.eps0.value_or(cfg.mode == FlowMode::Residual ? 1.0 : 0.1);

  Spectrum s = s0;
  Evaluation cur = evaluate(s, cx, cfg.kernel);
  rep.max_closedness = closed0;
  double step = 0.0;
  for (int it = 0;; ++it) {
    const double drift = drift_of(s, s0, cx);
    rep.max_drift = std::max(rep.max_drift, drift);
    rep.history.push_back({it, cur.volume, cur.residual, drift, step, cur.aliasing});
    rep.iterations = it;
    if (cur.residual < cfg.tol) {
      rep.converged = true;
      break;
    }
    if (it >= cfg.max_iter) {
      rep.diagnostic = "iteration limit reached with ||d rho_hat|| = " + std::to_string(cur.residual);
      break;
    }

    Spectrum dir(g, s.parity);
    if (cfg.mode == FlowMode::Residual) {
      // Gauss-Newton direction for 1/2 |P D rho_hat|^2, using that D J is symmetric.
      const GridForm jr = apply_j(cur.rho, synthesize(cur.r), cfg.kernel);
      dir = cx.project(analyze(mukai_dual(jr)));
      dir *= -1.0;
    } else {
      dir = cur.r;
      if (cfg.mode == FlowMode::Descent) dir *= -1.0;
    }

    bool accepted = false;
    std::optional<StabilityError> last_unstable;
    double eps = eps0;
    for (int h = 0; h <= cfg.max_halvings; ++h, eps *= 0.5) {
      Spectrum trial = s;
      for (std::size_t i = 0; i < trial.amps.size(); ++i) trial.amps[i] += eps * dir.amps[i];
      try {
        Evaluation ev = evaluate(trial, cx, cfg.kernel);
        if (!accepts(cfg.mode, cur, ev)) continue;
        s = std::move(trial);
        cur = std::move(ev);
        accepted = true;
        break;
      } catch (const StabilityError& e) {
        last_unstable = e;
      }
    }
    if (!accepted) {
      if (last_unstable)
        throw StabilityError("flow: stability lost along the step after " + std::to_string(cfg.max_halvings) +
                                 " halvings; " + last_unstable->what(),
                             last_unstable->point());
      rep.diagnostic = "line search stalled at iteration " + std::to_string(it) +
                       " with ||d rho_hat|| = " + std::to_string(cur.residual);
      break;
    }
    step = eps;
    rep.max_closedness = std::max(rep.max_closedness, l2_norm(cx.differential(s)));
  }

  for (std::size_t i = 1; i < rep.history.size(); ++i) {
    const double dv = rep.history[i].volume - rep.history[i - 1].volume;
    if ((cfg.mode == FlowMode::Ascent && dv < 0) || (cfg.mode == FlowMode::Descent && dv > 0)) rep.monotone = false;
  }
  rep.final_volume = cur.volume;
  rep.final_residual = cur.residual;
  if (cfg.classify) {
    rep.tags = classify_points(cur.rho);
    rep.tags_constant = true;
    for (TypeTag t : rep.tags) rep.tags_constant = rep.tags_constant && t == rep.tags.front();
  }
  rep.final_rho = std::move(cur.rho);
  return rep;
}

// H as a constant Form; throws unless the field is constant of degree 3.
Form constant_three_form(const GridForm& h) {
  if (h.grid().dim() != 6) throw DimensionError("twisted_flow: needs a 6-dimensional grid");
  if (h.parity() != Parity::Odd) throw DomainError("twisted_flow: H must be a 3-form");
  const int nc = h.num_channels();
  const double* first = h.point_data(0);
  const double scale = std::max(1.0, h.max_abs());
  for (std::size_t p = 1; p < h.grid().num_points(); ++p) {
    const double* v = h.point_data(p);
    for (int c = 0; c < nc; ++c)
      if (std::abs(v[c] - first[c]) > 1e-14 * scale)
        throw DomainError("twisted_flow: only spatially constant H is supported");
  }
  Form f = h.at(0);
  if (!f.is_zero() && f.degree() != 3) throw DomainError("twisted_flow: H must be a 3-form");
  return f;
}

}  // namespace

FlowReport flow(const GridForm& rho0, const FlowConfig& cfg) {
  return run_flow(rho0, cfg, PlainComplex{}, false);
}

FlowReport twisted_flow(const GridForm& rho0, const GridForm& h, const FlowConfig& cfg) {
  require_same_grid(rho0, h, "twisted_flow");
  const Form hf = constant_three_form(h);
  if (hf.is_zero()) {
    FlowReport rep = flow(rho0, cfg);
    rep.twisted = true;
    return rep;
  }
  const TwistedComplex cx(rho0.grid(), rho0.parity(), hf);
  return run_flow(rho0, cfg, cx, true);
}

double criticality_residual(const GridForm& rho, Kernel k) {
  const HatField h = hat_field(rho, k);
  return l2_norm(spectral_d(analyze(h.rho_hat)));
}

}  // namespace gcy
