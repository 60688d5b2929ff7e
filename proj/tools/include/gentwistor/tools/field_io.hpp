#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "gentwistor/flatmodel.hpp"

namespace gentwistor::tools {

// Malformed input: the command exits with status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A polynomial field on flat R^{p,q}:
//   {"kind": "spinor", "signature": [2, 3], "weight": "1/2",
//    "components": [{"1": "1", "x0*x3^2": "-1/2+1*r2"}, ...]}
// "form_degree" is required for kind "form". Keys of a component are monomials in x0..x(n-1).
struct FieldDocument {
  int p = 0, q = 0;
  flatmodel::PolyField field;
};

nlohmann::json field_to_json(int p, int q, const flatmodel::PolyField& f);
FieldDocument field_from_json(const nlohmann::json& j);
FieldDocument read_field(const std::filesystem::path& path);

// Number of components a field of this kind has over R^{p,q}.
std::size_t component_count(flatmodel::FieldKind kind, int p, int q, std::size_t form_degree = 0);

}  // namespace gentwistor::tools
