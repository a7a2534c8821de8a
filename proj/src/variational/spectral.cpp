#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "gcy/variational.hpp"

namespace gcy {

namespace {

// One r2c/c2r plan pair per (dim, N, channels); the channels are interleaved (stride = channels).
struct FftPlans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::size_t real_size = 0;
  std::size_t half_size = 0;
};

std::size_t half_points(const TorusGrid& g) {
  const auto n = static_cast<std::size_t>(g.points_per_axis());
  return g.num_points() / n * (n / 2 + 1);
}

const FftPlans& plans_for(const TorusGrid& g) {
  static std::mutex mu;
  static std::map<std::tuple<int, int>, FftPlans> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(g.dim(), g.points_per_axis());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const int nc = g.num_channels();
  std::vector<int> dims(static_cast<std::size_t>(g.dim()), g.points_per_axis());
  FftPlans p;
  p.real_size = g.num_points() * static_cast<std::size_t>(nc);
  p.half_size = half_points(g) * static_cast<std::size_t>(nc);
  double* r = fftw_alloc_real(p.real_size);
  fftw_complex* c = fftw_alloc_complex(p.half_size);
  if (!r || !c) throw ResourceError("FFT buffer allocation failed");
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  p.forward = fftw_plan_many_dft_r2c(g.dim(), dims.data(), nc, r, nullptr, nc, 1, c, nullptr, nc, 1, flags);
  p.backward = fftw_plan_many_dft_c2r(g.dim(), dims.data(), nc, c, nullptr, nc, 1, r, nullptr, nc, 1, flags);
  fftw_free(r);
  fftw_free(c);
  if (!p.forward || !p.backward) throw ResourceError("FFTW planning failed");
  return cache.emplace(key, p).first->second;
}

// Offset of wavevector k (k_last >= 0) in the half-complex array.
std::size_t half_index(const TorusGrid& g, const std::vector<int>& k) {
  const int n = g.points_per_axis();
  std::size_t idx = 0;
  for (int i = 0; i + 1 < g.dim(); ++i) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>((k[static_cast<std::size_t>(i)] + n) % n);
  return idx * static_cast<std::size_t>(n / 2 + 1) + static_cast<std::size_t>(k.back());
}

struct ModeLookup {
  std::vector<std::size_t> offset;  // half-array index of k or of -k
  std::vector<bool> conjugate;      // true when read through -k
  // Weight of each half-array entry in the full spectrum (1 or 2), 0 inside the band.
  std::vector<unsigned char> outside;
};

const ModeLookup& mode_lookup(const TorusGrid& g) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, ModeLookup> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(g.dim(), g.points_per_axis(), g.cutoff());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  ModeLookup ml;
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    std::vector<int> k = g.mode(m);
    const bool neg = k.back() < 0;
    if (neg)
      for (int& x : k) x = -x;
    ml.offset.push_back(half_index(g, k));
    ml.conjugate.push_back(neg);
  }
  const int n = g.points_per_axis();
  const std::size_t half = half_points(g);
  ml.outside.assign(half, 0);
  for (std::size_t h = 0; h < half; ++h) {
    std::size_t r = h;
    const int last = static_cast<int>(r % static_cast<std::size_t>(n / 2 + 1));
    r /= static_cast<std::size_t>(n / 2 + 1);
    bool in = last <= g.cutoff();
    for (int i = 0; i + 1 < g.dim(); ++i) {
      int ki = static_cast<int>(r % static_cast<std::size_t>(n));
      r /= static_cast<std::size_t>(n);
      if (ki > n / 2) ki -= n;
      in = in && std::abs(ki) <= g.cutoff();
    }
    if (!in) ml.outside[h] = (last == 0 || last == n / 2) ? 1 : 2;
  }
  return cache.emplace(key, std::move(ml)).first->second;
}

struct WedgeEntry {
  int in, out, axis, sign;
};

// dx^j ^ dx^S for every channel S of the parity and j not in S.
const std::vector<WedgeEntry>& wedge_table(int dim, Parity p) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<WedgeEntry>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(dim, p == Parity::Odd ? 1 : 0);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const auto in = parity_masks(dim, p);
  const auto out = parity_masks(dim, opposite(p));
  std::vector<int> pos(std::size_t{1} << dim, -1);
  for (std::size_t c = 0; c < out.size(); ++c) pos[out[c]] = static_cast<int>(c);
  std::vector<WedgeEntry> t;
  for (std::size_t c = 0; c < in.size(); ++c)
    for (int j = 0; j < dim; ++j) {
      const Mask bit = Mask{1} << j;
      if (in[c] & bit) continue;
      t.push_back({static_cast<int>(c), pos[in[c] | bit], j, wedge_sign(bit, in[c])});
    }
  return cache.emplace(key, std::move(t)).first->second;
}

// out += (k ^ a) with k a real covector; a has parity p.
void wedge_k(int dim, Parity p, const std::vector<double>& k, const cplx* a, cplx* out, cplx scale) {
  for (const WedgeEntry& e : wedge_table(dim, p))
    out[e.out] += scale * static_cast<double>(e.sign) * k[static_cast<std::size_t>(e.axis)] * a[e.in];
}

// out += i_k a; contraction is the adjoint of wedge_k, so reuse the table transposed.
void contract_k(int dim, Parity p, const std::vector<double>& k, const cplx* a, cplx* out, cplx scale) {
  for (const WedgeEntry& e : wedge_table(dim, opposite(p)))
    out[e.in] += scale * static_cast<double>(e.sign) * k[static_cast<std::size_t>(e.axis)] * a[e.out];
}

std::vector<double> as_real(const std::vector<int>& k) { return {k.begin(), k.end()}; }

double norm2(const std::vector<double>& k) {
  double s = 0.0;
  for (double x : k) s += x * x;
  return s;
}

}  // namespace

Spectrum::Spectrum(const TorusGrid& g, Parity p)
    : grid(g), parity(p), amps(g.num_modes() * static_cast<std::size_t>(g.num_channels())) {}

Spectrum& Spectrum::operator+=(const Spectrum& o) {
  if (!(grid == o.grid) || parity != o.parity) throw DomainError("Spectrum +: incompatible spectra");
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] += o.amps[i];
  return *this;
}

Spectrum& Spectrum::operator-=(const Spectrum& o) {
  if (!(grid == o.grid) || parity != o.parity) throw DomainError("Spectrum -: incompatible spectra");
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] -= o.amps[i];
  return *this;
}

Spectrum& Spectrum::operator*=(double s) {
  for (cplx& a : amps) a *= s;
  return *this;
}

Spectrum analyze(const GridForm& a, double* aliasing) {
  const TorusGrid& g = a.grid();
  const FftPlans& plans = plans_for(g);
  const auto nc = static_cast<std::size_t>(g.num_channels());
  std::vector<cplx> half(plans.half_size);
  // r2c leaves its input intact
  fftw_execute_dft_r2c(plans.forward, const_cast<double*>(a.values().data()),
                       reinterpret_cast<fftw_complex*>(half.data()));
  const double inv = 1.0 / static_cast<double>(g.num_points());
  const ModeLookup& ml = mode_lookup(g);
  Spectrum s(g, a.parity());
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const cplx* src = half.data() + ml.offset[m] * nc;
    cplx* dst = s.mode_data(m);
    for (std::size_t c = 0; c < nc; ++c) {
      const cplx v = (ml.conjugate[m] ? std::conj(src[c]) : src[c]) * inv;
      dst[c] = v;
    }
  }
  if (aliasing) {
    // summed directly: total minus band energy loses everything below round-off of the total
    double lost = 0.0;
    for (std::size_t h = 0; h < ml.outside.size(); ++h) {
      if (!ml.outside[h]) continue;
      double e = 0.0;
      for (std::size_t c = 0; c < nc; ++c) e += std::norm(half[h * nc + c]);
      lost += ml.outside[h] * e;
    }
    *aliasing = lost * inv * inv;
  }
  return s;
}

GridForm synthesize(const Spectrum& s) {
  const TorusGrid& g = s.grid;
  const FftPlans& plans = plans_for(g);
  const auto nc = static_cast<std::size_t>(g.num_channels());
  std::vector<cplx> half(plans.half_size);
  const ModeLookup& ml = mode_lookup(g);
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    if (ml.conjugate[m]) continue;
    const cplx* src = s.mode_data(m);
    cplx* dst = half.data() + ml.offset[m] * nc;
    for (std::size_t c = 0; c < nc; ++c) dst[c] = src[c];
  }
  GridForm out(g, s.parity);
  fftw_execute_dft_c2r(plans.backward, reinterpret_cast<fftw_complex*>(half.data()), out.values().data());
  return out;
}

double l2_norm(const Spectrum& s) {
  double acc = 0.0;
  for (const cplx& a : s.amps) acc += std::norm(a);
  return std::sqrt(acc * s.grid.total_volume());
}

Spectrum spectral_d(const Spectrum& a) {
  const TorusGrid& g = a.grid;
  Spectrum out(g, opposite(a.parity));
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const auto k = as_real(g.mode(m));
    wedge_k(g.dim(), a.parity, k, a.mode_data(m), out.mode_data(m), cplx(0, 1));
  }
  return out;
}

GridForm spectral_d(const GridForm& a) {
  double lost = 0.0;
  GridForm out = synthesize(spectral_d(analyze(a, &lost)));
  out.aliasing_energy = lost;
  return out;
}

Spectrum project_exact(const Spectrum& a) {
  const TorusGrid& g = a.grid;
  const int nc = g.num_channels();
  Spectrum out(g, a.parity);
  std::vector<cplx> tmp(static_cast<std::size_t>(nc));
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const auto k = as_real(g.mode(m));
    const double kk = norm2(k);
    if (kk == 0.0) continue;
    std::fill(tmp.begin(), tmp.end(), cplx{});
    contract_k(g.dim(), a.parity, k, a.mode_data(m), tmp.data(), 1.0);
    wedge_k(g.dim(), opposite(a.parity), k, tmp.data(), out.mode_data(m), 1.0 / kk);
  }
  return out;
}

HodgeParts hodge_project(const GridForm& a) {
  const TorusGrid& g = a.grid();
  double lost = 0.0;
  const Spectrum s = analyze(a, &lost);
  Spectrum harm(g, a.parity()), dpart = project_exact(s), dstar(g, a.parity());
  const auto nc = static_cast<std::size_t>(g.num_channels());
  const std::size_t z = g.zero_mode();
  for (std::size_t c = 0; c < nc; ++c) harm.mode_data(z)[c] = s.mode_data(z)[c];
  dstar = s - harm - dpart;
  HodgeParts out{synthesize(harm), synthesize(dpart), synthesize(dstar)};
  out.harmonic.aliasing_energy = lost;
  return out;
}

GridForm d_H(const GridForm& a, const GridForm& h) {
  require_same_grid(a, h, "d_H");
  if (h.parity() != Parity::Odd) throw DomainError("d_H: H must be a 3-form");
  const auto& ch = h.channels();
  const double scale = std::max(1.0, h.max_abs());
  for (std::size_t p = 0; p < a.grid().num_points(); ++p) {
    const double* v = h.point_data(p);
    for (std::size_t c = 0; c < ch.size(); ++c)
      if (popcount(ch[c]) != 3 && std::abs(v[c]) > 1e-14 * scale)
        throw DomainError("d_H: H has components outside degree 3");
  }
  const Spectrum hs = analyze(h);
  if (l2_norm(spectral_d(hs)) > 1e-10 * std::max(1.0, l2_norm(hs))) throw DomainError("d_H: H is not closed");
  double lost_a = 0.0, lost_h = 0.0;
  Spectrum out = spectral_d(analyze(a, &lost_a));
  out += analyze(wedge(h, a), &lost_h);
  GridForm res = synthesize(out);
  res.aliasing_energy = lost_a + lost_h;
  return res;
}

}  // namespace gcy
