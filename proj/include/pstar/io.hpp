#pragma once

#include "pstar/instances.hpp"

namespace pstar {

/// Instance file schema, version 1. Tensors may be stored dense
/// ("tensor": nested arrays of [re, im]) or sparse
/// ("tensor_sparse": rows [i, j, k, re, im]); writers pick sparse for large
/// sparse tensors, readers accept both.
Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

std::string write_instance(const Instance& inst);  // stable, indented
Instance read_instance_file(const std::string& path);
void write_instance_file(const Instance& inst, const std::string& path);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

}  // namespace pstar
