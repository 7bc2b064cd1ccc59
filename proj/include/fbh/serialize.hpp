#pragma once

// JSON schema (schema_version 1):
//   complex          -> [re, im]
//   vector           -> array of complex
//   matrix           -> array of rows, each an array of complex (row-major)
//   Point            -> {"z": vector, "w": vector}
//   KernelValue      -> {"value": complex, "tail_bound": x, "terms_used": n}
//   Automorphism     -> {"U": matrix, "Uw": matrix, "v": vector, "n", "m", "mu"}
//   BranchReport     -> {"locus_description", "min_boundary_gap", "closure_meets_boundary"}
//   McEstimate       -> {"estimate": complex, "standard_error", "samples", "seed"}
//   Decomposition    -> {"accepted", "reason", "U": matrix, "B": matrix}
//   SuiteReport      -> {"suite_name", "checks": [...], "wall_time", "seed"}

#include <nlohmann/json.hpp>

#include "fbh/automorphism.hpp"
#include "fbh/domain.hpp"
#include "fbh/kernel.hpp"
#include "fbh/proper_map.hpp"
#include "fbh/quadrature.hpp"

namespace fbh {

using Json = nlohmann::ordered_json;

Json to_json(const Complex& c);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const Point& p);
Json to_json(const KernelValue& k);
Json to_json(const Automorphism& g);
Json to_json(const BranchReport& r);
Json to_json(const McEstimate& e);
Json to_json(const Decomposition& d);

Complex complex_from_json(const Json& j);
Vector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
Point point_from_json(const Json& j);
Automorphism automorphism_from_json(const Json& j);

}  // namespace fbh
