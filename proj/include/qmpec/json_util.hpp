// Copyright 2026 The qmpec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMPEC_JSON_UTIL_HPP
#define QMPEC_JSON_UTIL_HPP

#include <filesystem>

#include "json.hpp"
#include "qmpec/circuit.hpp"
#include "qmpec/gst.hpp"
#include "qmpec/inference.hpp"
#include "qmpec/linalg.hpp"
#include "qmpec/monte_carlo.hpp"
#include "qmpec/quasiprob.hpp"

namespace qmpec {

using Json = nlohmann::ordered_json;

// Matrices are nested row-major arrays; complex entries are [re, im] pairs.
Json to_json(const Matrix& m);
Json to_json(const CMatrix& m);
Json to_json(const Vector& v);
Matrix matrix_from_json(const Json& j);
CMatrix cmatrix_from_json(const Json& j);
Vector vector_from_json(const Json& j);

Json to_json(const Gate& gate);
Json to_json(const GateCircuit& circuit);
Gate gate_from_json(const Json& j);
GateCircuit circuit_from_json(const Json& j);

Json to_json(const MemoryStateSet& set);
MemoryStateSet memory_set_from_json(const Json& j);
Json to_json(const MergeReport& report);
Json to_json(const EpsilonMachine& machine);

Json to_json(const QuasiprobDecomposition& d);
QuasiprobDecomposition decomposition_from_json(const Json& j);
Json to_json(const MeasurementScheme& scheme);
MeasurementScheme measurement_scheme_from_json(const Json& j);

Json to_json(const GstDataset& gst);
GstDataset gst_from_json(const Json& j);

Json to_json(const MitigatedDistribution& d);
MitigatedDistribution mitigated_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace qmpec

#endif  // QMPEC_JSON_UTIL_HPP
