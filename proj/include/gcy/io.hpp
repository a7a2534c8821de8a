#pragma once

#include <json.hpp>
#include <string>

#include "gcy/courant.hpp"
#include "gcy/quartic.hpp"
#include "gcy/variational.hpp"

namespace gcy {

using json = nlohmann::json;

// {"dim": n, "coeffs": [[mask, re, im], ...]}, nonzero entries only.
json to_json(const Form& f);
Form form_from_json(const json& j);

// {"dim": n, "A": row-major n^2, "B": Form, "beta": row-major n^2 antisymmetric};
// complex entries are written as [re, im].
json to_json(const SoElement& a);
SoElement so_from_json(const json& j);

json to_json(const StabilityReport& r);

// {"dim": n, "freqs": [[[k...], re, im], ...]}; polynomial-chart terms carry a fourth
// entry with the exponents.
json to_json(const TrigPoly& f);
TrigPoly trig_poly_from_json(const json& j);
// {"dim": n, "components": [[mask, TrigPoly], ...]}
json to_json(const FormField& f);
FormField form_field_from_json(const json& j);
// {"dim": n, "p": p, "vec": [TrigPoly per axis], "form": FormField}
json to_json(const SectionField& s);
SectionField section_from_json(const json& j);

json to_json(const FlowReport& r);
json to_json(const DdjReport& r);
// iteration,volume,residual,drift,step,aliasing
std::string flow_history_csv(const FlowReport& r);

}  // namespace gcy
