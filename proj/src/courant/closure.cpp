#include <algorithm>
#include <array>
#include <numbers>
#include <string>

#include "gcy/courant.hpp"

namespace gcy {

namespace {

constexpr double kFdStep = 1e-5;
constexpr double kFrameTol = 1e-9;

// Orthogonal projector onto the annihilator of phi(x).
MatC annihilator_projector(const FormField& phi, std::span<const double> x, bool check, double* nondeg) {
  const Form f = phi(x);
  const int n = phi.dim();
  if (f.is_zero()) throw DomainError("annihilator_closure_check: phi vanishes at a sample point");
  const MatC ns = null_space(annihilator_system(f), kFrameTol);
  if (check) {
    if (ns.cols() != n) throw DomainError("annihilator_closure_check: phi is not pure at a sample point");
    const double nd = std::abs(mukai_pairing_unchecked(f, f.conj()));
    if (nd <= kFrameTol * f.norm() * f.norm())
      throw DomainError("annihilator_closure_check: <phi, conj phi> vanishes at a sample point");
    *nondeg = nd;
  }
  return ns * ns.adjoint();
}

struct Jet {
  VecC value;              // stacked (X; xi) at the point
  std::vector<VecC> grad;  // d_j of the stacked section
};

// Courant bracket of two p = 1 sections at a point, from their 1-jets.
VecC bracket_at_point(const Jet& s1, const Jet& s2, int n) {
  auto X = [&](int i) { return s1.value(i); };
  auto xi = [&](int i) { return s1.value(n + i); };
  auto Y = [&](int i) { return s2.value(i); };
  auto eta = [&](int i) { return s2.value(n + i); };
  VecC out = VecC::Zero(2 * n);
  for (int j = 0; j < n; ++j) {
    cplx z{}, zeta{};
    for (int i = 0; i < n; ++i) {
      const auto dj = static_cast<std::size_t>(j), di = static_cast<std::size_t>(i);
      z += X(i) * s2.grad[di](j) - Y(i) * s1.grad[di](j);
      const cplx lxeta = X(i) * s2.grad[di](n + j) + eta(i) * s1.grad[dj](i);
      const cplx lyxi = Y(i) * s1.grad[di](n + j) + xi(i) * s2.grad[dj](i);
      const cplx exact = 0.5 * (s1.grad[dj](i) * eta(i) + X(i) * s2.grad[dj](n + i) -
                                s2.grad[dj](i) * xi(i) - Y(i) * s1.grad[dj](n + i));
      zeta += lxeta - lyxi - exact;
    }
    out(j) = z;
    out(n + j) = zeta;
  }
  return out;
}

}  // namespace

ClosureReport annihilator_closure_check(const FormField& phi, int samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("annihilator_closure_check: need at least one sample");
  const int n = phi.dim();
  const auto un = static_cast<std::size_t>(n);
  Rng rng(seed);
  std::uniform_real_distribution<double> ud(0.0, 2.0 * std::numbers::pi);

  std::vector<std::vector<double>> pts(static_cast<std::size_t>(samples), std::vector<double>(un));
  for (auto& p : pts)
    for (double& c : p) c = ud(rng);
  // coefficient jets: value and gradient of each frame coefficient, two sections
  std::vector<std::array<MatC, 2>> coef(static_cast<std::size_t>(samples));
  for (auto& c : coef)
    for (auto& m : c) {
      m.resize(n, n + 1);
      for (Eigen::Index a = 0; a < m.size(); ++a) m(a) = complex_normal(rng);
    }

  std::vector<MatC> proj(pts.size());
  std::vector<std::vector<MatC>> dproj(pts.size(), std::vector<MatC>(un));
  std::vector<double> nondeg(pts.size());
  std::vector<std::string> failure(pts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < pts.size(); ++k) {
    try {
      proj[k] = annihilator_projector(phi, pts[k], true, &nondeg[k]);
      for (std::size_t j = 0; j < un; ++j) {
        std::vector<double> xp = pts[k], xm = pts[k];
        xp[j] += kFdStep;
        xm[j] -= kFdStep;
        dproj[k][j] = (annihilator_projector(phi, xp, false, nullptr) -
                       annihilator_projector(phi, xm, false, nullptr)) / (2.0 * kFdStep);
      }
    } catch (const DomainError& e) {
      failure[k] = e.what();
    }
  }
  for (const auto& f : failure)
    if (!f.empty()) throw DomainError(f);

  ClosureReport rep;
  rep.samples = samples;
  rep.closed = is_closed(phi);
  rep.min_nondegeneracy = *std::min_element(nondeg.begin(), nondeg.end());

  MatC frame;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    // Track the frame: project the previous basis and re-orthonormalize.
    MatC next = frame.size() ? MatC(proj[k] * frame) : column_space(proj[k], kFrameTol);
    next = Eigen::HouseholderQR<MatC>(next).householderQ() * MatC::Identity(2 * n, n);
    if (frame.size()) {
      // align phases/rotation with the previous frame (polar factor of frame^H next)
      Eigen::JacobiSVD<MatC> svd(next.adjoint() * frame, Eigen::ComputeFullU | Eigen::ComputeFullV);
      next = next * (svd.matrixU() * svd.matrixV().adjoint());
      rep.max_frame_jump = std::max(rep.max_frame_jump, (next - frame).norm());
    }
    frame = next;

    std::array<Jet, 2> jets;
    for (int s = 0; s < 2; ++s) {
      const MatC& c = coef[k][static_cast<std::size_t>(s)];
      jets[static_cast<std::size_t>(s)].value = frame * c.col(0);
      for (std::size_t j = 0; j < un; ++j)
        jets[static_cast<std::size_t>(s)].grad.push_back(frame * c.col(static_cast<Eigen::Index>(j) + 1) +
                                                          dproj[k][j] * frame * c.col(0));
    }
    const VecC b = bracket_at_point(jets[0], jets[1], n);
    const Form r = clifford_act(VecCovec::from_stacked(b), phi(pts[k]));
    rep.max_residual = std::max(rep.max_residual, r.max_abs());
  }
  return rep;
}

}  // namespace gcy
