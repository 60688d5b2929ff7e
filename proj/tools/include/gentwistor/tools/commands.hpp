#pragma once

#include <string>

#include "gentwistor/tools/field_io.hpp"
#include "gentwistor/tools/report.hpp"

namespace gentwistor::tools {

// Stabilizer of a constant spinor. (3,4) and (4,4) spinors use the doubled model with basis (e+, ..., e-).
Report stabilizer_command(const FieldDocument& spinor);

// Kernel basis of one of the flat-model operators; the basis fields are included in the report.
Report solve_command(int p, int q, const std::string& equation, int max_degree, int chirality);

// Splits a conformal Killing field into its automorphism part and the part carried by the
// generic twistor spinor. Throws InputError if the inputs are not a ckf and a generic twistor.
Report decompose_ckf_command(const FieldDocument& ckf, const FieldDocument& spinor);

}  // namespace gentwistor::tools
