#include <cmath>

#include "gcy/courant.hpp"

namespace gcy {

namespace {

void check_key(int dim, const TrigPoly::Key& k) {
  if (static_cast<int>(k.freq.size()) != dim || static_cast<int>(k.power.size()) != dim)
    throw DimensionError("TrigPoly: frequency/power vector length differs from dimension");
  for (int e : k.power)
    if (e < 0) throw DomainError("TrigPoly: negative power");
}

}  // namespace

TrigPoly TrigPoly::constant(int dim, cplx c) {
  TrigPoly t(dim);
  t.add({std::vector<int>(static_cast<std::size_t>(dim)), std::vector<int>(static_cast<std::size_t>(dim))}, c);
  return t;
}

TrigPoly TrigPoly::term(int dim, std::vector<int> freq, cplx amp, std::vector<int> power) {
  if (power.empty()) power.assign(static_cast<std::size_t>(dim), 0);
  TrigPoly t(dim);
  t.add({std::move(freq), std::move(power)}, amp);
  return t;
}

TrigPoly TrigPoly::cos_mode(int dim, int axis, int k) {
  std::vector<int> f(static_cast<std::size_t>(dim));
  f[static_cast<std::size_t>(axis)] = k;
  TrigPoly t = term(dim, f, 0.5);
  f[static_cast<std::size_t>(axis)] = -k;
  t += term(dim, f, 0.5);
  return t;
}

TrigPoly TrigPoly::sin_mode(int dim, int axis, int k) {
  std::vector<int> f(static_cast<std::size_t>(dim));
  f[static_cast<std::size_t>(axis)] = k;
  TrigPoly t = term(dim, f, cplx(0, -0.5));
  f[static_cast<std::size_t>(axis)] = -k;
  t += term(dim, f, cplx(0, 0.5));
  return t;
}

TrigPoly TrigPoly::coordinate(int dim, int axis) {
  std::vector<int> e(static_cast<std::size_t>(dim));
  e[static_cast<std::size_t>(axis)] = 1;
  return term(dim, std::vector<int>(static_cast<std::size_t>(dim)), 1.0, e);
}

void TrigPoly::add(const Key& key, cplx amp) {
  check_key(dim_, key);
  if (amp == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(key, amp);
  if (!inserted) {
    it->second += amp;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

bool TrigPoly::is_zero(double tol) const {
  for (const auto& [k, a] : terms_)
    if (std::abs(a) > tol) return false;
  return true;
}

bool TrigPoly::is_real(double tol) const {
  const double scale = std::max(1.0, max_abs());
  for (const auto& [k, a] : terms_) {
    Key m{k.freq, k.power};
    for (int& f : m.freq) f = -f;
    const auto it = terms_.find(m);
    const cplx b = it == terms_.end() ? cplx{} : it->second;
    if (std::abs(a - std::conj(b)) > tol * scale) return false;
  }
  return true;
}

bool TrigPoly::is_periodic() const {
  for (const auto& [k, a] : terms_)
    for (int e : k.power)
      if (e != 0) return false;
  return true;
}

int TrigPoly::max_frequency() const {
  int m = 0;
  for (const auto& [k, a] : terms_)
    for (int f : k.freq) m = std::max(m, std::abs(f));
  return m;
}

double TrigPoly::max_abs() const {
  double m = 0.0;
  for (const auto& [k, a] : terms_) m = std::max(m, std::abs(a));
  return m;
}

TrigPoly TrigPoly::derivative(int axis) const {
  if (axis < 0 || axis >= dim_) throw DimensionError("TrigPoly::derivative: axis out of range");
  const auto ax = static_cast<std::size_t>(axis);
  TrigPoly out(dim_);
  for (const auto& [k, a] : terms_) {
    if (k.freq[ax] != 0) out.add(k, a * cplx(0, k.freq[ax]));
    if (k.power[ax] > 0) {
      Key lower = k;
      --lower.power[ax];
      out.add(lower, a * static_cast<double>(k.power[ax]));
    }
  }
  return out;
}

cplx TrigPoly::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw DimensionError("TrigPoly: point dimension mismatch");
  cplx sum{};
  for (const auto& [k, a] : terms_) {
    double phase = 0.0, mono = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      phase += k.freq[i] * x[i];
      if (k.power[i]) mono *= std::pow(x[i], k.power[i]);
    }
    sum += a * mono * std::polar(1.0, phase);
  }
  return sum;
}

TrigPoly TrigPoly::conj() const {
  TrigPoly out(dim_);
  for (const auto& [k, a] : terms_) {
    Key m = k;
    for (int& f : m.freq) f = -f;
    out.add(m, std::conj(a));
  }
  return out;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  require_same_dim(dim_, o.dim_, "TrigPoly +");
  for (const auto& [k, a] : o.terms_) add(k, a);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
  require_same_dim(dim_, o.dim_, "TrigPoly -");
  for (const auto& [k, a] : o.terms_) add(k, -a);
  return *this;
}

TrigPoly& TrigPoly::operator*=(cplx s) {
  if (s == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, a] : terms_) a *= s;
  std::erase_if(terms_, [](const auto& kv) { return kv.second == cplx{}; });
  return *this;
}

TrigPoly TrigPoly::operator-() const {
  TrigPoly out = *this;
  for (auto& [k, a] : out.terms_) a = -a;
  return out;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  require_same_dim(a.dim_, b.dim_, "TrigPoly *");
  TrigPoly out(a.dim_);
  for (const auto& [ka, va] : a.terms_)
    for (const auto& [kb, vb] : b.terms_) {
      TrigPoly::Key k = ka;
      for (std::size_t i = 0; i < k.freq.size(); ++i) {
        k.freq[i] += kb.freq[i];
        k.power[i] += kb.power[i];
      }
      out.add(k, va * vb);
    }
  return out;
}

}  // namespace gcy
