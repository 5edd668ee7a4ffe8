#ifndef QUADALG_IO_HPP
#define QUADALG_IO_HPP

#include <quadalg/canon.hpp>
#include <quadalg/contract.hpp>
#include <quadalg/forms.hpp>
#include <quadalg/laurent.hpp>

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace quadalg {

using nlohmann::json;

// Data directory: QUADALG_DATA env var when set, else the bundled data/
// directory baked in at configure time.
std::string data_dir();
json load_json_file(const std::string& path);

json form_to_json(const SymForm& B);
SymForm form_from_json(const json& j);

json group_elem_to_json(const ScaledGroupElem& g);
ScaledGroupElem group_elem_from_json(const json& j);

json laurent_to_json(const LaurentScalar& v);
LaurentScalar laurent_from_json(const json& j);

json family_to_json(const ContractionFamily& F);
ContractionFamily family_from_json(const json& j);

json label_to_json(const CanonicalLabel& label);

// Bundled data, loaded once and cached. witnesses() and table6_data() are
// declared in contract.hpp; catalog() in canon.hpp.

} // namespace quadalg

#endif
