#include <cmath>
#include <sstream>

#include "gcy/io.hpp"

namespace gcy {

namespace {

[[noreturn]] void bad(const std::string& what) { throw DomainError("json: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad("expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key '") + key + "'");
  return *it;
}

int read_dim(const json& j) {
  const json& d = field(j, "dim");
  if (!d.is_number_integer()) bad("'dim' must be an integer");
  const int dim = d.get<int>();
  if (dim < kMinDim || dim > kMaxDim) bad("'dim' must lie in [" + std::to_string(kMinDim) + ", " + std::to_string(kMaxDim) + "]");
  return dim;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) bad("complex entries are numbers or [re, im]");
  return {number(j[0], "re"), number(j[1], "im")};
}

json matrix_json(const MatC& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(complex_json(m(r, c)));
  return out;
}

MatC matrix_from(const json& j, int n, const char* what) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n * n))
    bad(std::string(what) + " must list " + std::to_string(n * n) + " entries row-major");
  MatC m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = complex_from(j[static_cast<std::size_t>(r * n + c)]);
  return m;
}

Mask mask_from(const json& j, int dim) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad("subset masks must be non-negative integers");
  const auto m = j.get<unsigned long long>();
  if (m >= (1ULL << dim)) bad("subset mask " + std::to_string(m) + " exceeds the dimension");
  return static_cast<Mask>(m);
}

std::vector<int> int_list(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) bad(std::string(what) + " must have one entry per axis");
  std::vector<int> out;
  for (const json& x : j) {
    if (!x.is_number_integer()) bad(std::string(what) + " entries must be integers");
    out.push_back(x.get<int>());
  }
  return out;
}

json number_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json to_json(const Form& f) {
  json coeffs = json::array();
  for (Mask s = 0; s < f.size(); ++s)
    if (f[s] != cplx(0.0)) coeffs.push_back(json::array({s, f[s].real(), f[s].imag()}));
  return {{"dim", f.dim()}, {"coeffs", coeffs}};
}

Form form_from_json(const json& j) {
  const int dim = read_dim(j);
  const json& c = field(j, "coeffs");
  if (!c.is_array()) bad("'coeffs' must be an array");
  Form f(dim);
  for (const json& e : c) {
    if (!e.is_array() || (e.size() != 2 && e.size() != 3)) bad("each coefficient is [mask, re] or [mask, re, im]");
    const Mask s = mask_from(e[0], dim);
    f[s] += cplx(number(e[1], "re"), e.size() == 3 ? number(e[2], "im") : 0.0);
  }
  return f;
}

json to_json(const SoElement& a) {
  return {{"dim", a.dim()}, {"A", matrix_json(a.endo)}, {"B", to_json(a.two_form)}, {"beta", matrix_json(a.bivector)}};
}

SoElement so_from_json(const json& j) {
  const int n = read_dim(j);
  const MatC beta = matrix_from(field(j, "beta"), n, "'beta'");
  if ((beta + beta.transpose()).norm() > 1e-12 * std::max(1.0, beta.norm())) bad("'beta' must be antisymmetric");
  const Form b = form_from_json(field(j, "B"));
  if (b.dim() != n) bad("'B' has the wrong dimension");
  if (!b.is_zero() && b.degree() != 2) bad("'B' must be a 2-form");
  return SoElement(matrix_from(field(j, "A"), n, "'A'"), b, beta);
}

json to_json(const StabilityReport& r) {
  json out;
  out["q"] = std::abs(r.q.imag()) > 0 ? complex_json(r.q) : json(r.q.real());
  out["stable"] = r.stable;
  out["degenerate"] = r.degenerate;
  out["phi"] = r.phi_val;
  out["rho_hat"] = r.rho_hat ? to_json(*r.rho_hat) : json(nullptr);
  out["pure_pair"] = r.pure_pair ? json{{"alpha", to_json(r.pure_pair->alpha)}, {"beta", to_json(r.pure_pair->beta)}} : json(nullptr);
  out["type"] = to_string(r.type_tag);
  return out;
}

json to_json(const TrigPoly& f) {
  json terms = json::array();
  for (const auto& [key, a] : f.terms()) {
    json t = json::array({key.freq, a.real(), a.imag()});
    bool poly = false;
    for (int e : key.power) poly = poly || e != 0;
    if (poly) t.push_back(key.power);
    terms.push_back(t);
  }
  return {{"dim", f.dim()}, {"freqs", terms}};
}

TrigPoly trig_poly_from_json(const json& j) {
  const int dim = read_dim(j);
  const json& t = field(j, "freqs");
  if (!t.is_array()) bad("'freqs' must be an array");
  TrigPoly f(dim);
  const auto n = static_cast<std::size_t>(dim);
  for (const json& e : t) {
    if (!e.is_array() || e.size() < 3 || e.size() > 4) bad("each term is [[k...], re, im] or [[k...], re, im, [e...]]");
    auto power = e.size() == 4 ? int_list(e[3], n, "exponents") : std::vector<int>(n, 0);
    for (int p : power)
      if (p < 0) bad("exponents must be non-negative");
    f.add({int_list(e[0], n, "frequencies"), power}, cplx(number(e[1], "re"), number(e[2], "im")));
  }
  return f;
}

json to_json(const FormField& f) {
  json comps = json::array();
  for (const auto& [s, c] : f.components()) comps.push_back(json::array({s, to_json(c)}));
  return {{"dim", f.dim()}, {"components", comps}};
}

FormField form_field_from_json(const json& j) {
  const int dim = read_dim(j);
  const json& c = field(j, "components");
  if (!c.is_array()) bad("'components' must be an array");
  FormField f(dim);
  for (const json& e : c) {
    if (!e.is_array() || e.size() != 2) bad("each component is [mask, TrigPoly]");
    const TrigPoly t = trig_poly_from_json(e[1]);
    if (t.dim() != dim) bad("component dimension mismatch");
    f.add(mask_from(e[0], dim), t);
  }
  return f;
}

json to_json(const SectionField& s) {
  json vec = json::array();
  for (int i = 0; i < s.dim(); ++i) vec.push_back(to_json(s.vec[i]));
  return {{"dim", s.dim()}, {"p", s.p}, {"vec", vec}, {"form", to_json(s.form)}};
}

SectionField section_from_json(const json& j) {
  const int dim = read_dim(j);
  const json& pj = field(j, "p");
  if (!pj.is_number_integer() || pj.get<int>() < 0 || pj.get<int>() > dim) bad("'p' must be an integer in [0, dim]");
  const json& vj = field(j, "vec");
  if (!vj.is_array() || vj.size() != static_cast<std::size_t>(dim)) bad("'vec' must have one TrigPoly per axis");
  VectorField v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = trig_poly_from_json(vj[static_cast<std::size_t>(i)]);
    if (v[i].dim() != dim) bad("vector component dimension mismatch");
  }
  const FormField f = form_field_from_json(field(j, "form"));
  if (f.dim() != dim) bad("'form' dimension mismatch");
  return SectionField(v, f, pj.get<int>());
}

json to_json(const FlowReport& r) {
  json out;
  out["mode"] = to_string(r.mode);
  out["twisted"] = r.twisted;
  out["converged"] = r.converged;
  out["iterations"] = r.iterations;
  out["final_volume"] = number_json(r.final_volume);
  out["final_residual"] = number_json(r.final_residual);
  out["max_drift"] = number_json(r.max_drift);
  out["max_closedness"] = number_json(r.max_closedness);
  out["monotone"] = r.monotone;
  json hist = json::array();
  for (const FlowStep& s : r.history)
    hist.push_back({{"iteration", s.iteration},
                    {"volume", number_json(s.volume)},
                    {"residual", number_json(s.residual)},
                    {"drift", number_json(s.drift)},
                    {"step", number_json(s.step)},
                    {"aliasing", number_json(s.aliasing)}});
  out["history"] = hist;
  out["tag_counts"] = r.tag_counts();
  out["tags_constant"] = r.tags_constant;
  json tags = json::array();
  for (TypeTag t : r.tags) tags.push_back(to_string(t));
  out["tags"] = tags;
  out["diagnostic"] = r.diagnostic;
  return out;
}

json to_json(const DdjReport& r) {
  return {{"per_mode", r.per_mode},         {"modes", r.modes},
          {"exact_dim", r.exact_dim},       {"kernel_dim", r.kernel_dim},
          {"image_dim", r.image_dim},       {"kernel_in_image", r.kernel_in_image},
          {"note", r.note}};
}

std::string flow_history_csv(const FlowReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "iteration,volume,residual,drift,step,aliasing\n";
  for (const FlowStep& s : r.history)
    os << s.iteration << ',' << s.volume << ',' << s.residual << ',' << s.drift << ',' << s.step << ',' << s.aliasing << '\n';
  return os.str();
}

}  // namespace gcy
