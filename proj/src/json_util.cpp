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

#include "qmpec/json_util.hpp"

#include <fstream>

#include "qmpec/error.hpp"

namespace qmpec {

namespace {

template <class F>
auto checked(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Matrix matrix_from_json(const Json& j) {
  return checked("matrix", [&] {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (static_cast<Eigen::Index>(j.at(r).size()) != cols) throw ValidationError("ragged matrix");
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
    }
    return m;
  });
}

CMatrix cmatrix_from_json(const Json& j) {
  return checked("complex matrix", [&] {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (static_cast<Eigen::Index>(j.at(r).size()) != cols) throw ValidationError("ragged matrix");
      for (Eigen::Index c = 0; c < cols; ++c) {
        const Json& e = j.at(r).at(c);
        m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
    return m;
  });
}

Vector vector_from_json(const Json& j) {
  return checked("vector", [&] {
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = j.at(i).get<double>();
    return v;
  });
}

Json to_json(const Gate& gate) {
  return Json{{"kind", gate_kind(gate)}, {"qubits", gate_qubits(gate)}, {"angles", gate_angles(gate)}};
}

Gate gate_from_json(const Json& j) {
  return checked("gate", [&]() -> Gate {
    const std::string kind = j.at("kind").get<std::string>();
    const auto qubits = j.at("qubits").get<std::vector<int>>();
    const auto angles = j.at("angles").get<std::vector<double>>();
    if (qubits.empty()) throw ValidationError("gate without qubits");
    const std::vector<int> controls(qubits.begin() + 1, qubits.end());
    if (kind == "MultiplexedRy") return MultiplexedRy{qubits[0], controls, angles};
    if (kind == "MultiplexedRz") return MultiplexedRz{qubits[0], controls, angles};
    if (kind == "SingleZYZ") {
      if (angles.size() != 4 || qubits.size() != 1) throw ValidationError("SingleZYZ needs one qubit and 4 angles");
      return SingleZYZ{qubits[0], angles[0], angles[1], angles[2], angles[3]};
    }
    if (kind == "NotGate") return NotGate{qubits.at(0)};
    if (kind == "ControlledU1") {
      if (angles.size() != 1) throw ValidationError("ControlledU1 needs one angle");
      return ControlledU1{qubits[0], controls, angles[0]};
    }
    throw ValidationError("unknown gate kind " + kind);
  });
}

Json to_json(const GateCircuit& circuit) {
  Json gates = Json::array();
  for (const Gate& g : circuit.gates) gates.push_back(to_json(g));
  return Json{{"num_qubits", circuit.num_qubits},
              {"leaf_blocks", circuit.leaf_blocks},
              {"multiplexors", circuit.multiplexors},
              {"depth_reported", circuit.depth_reported()},
              {"gates", std::move(gates)}};
}

GateCircuit circuit_from_json(const Json& j) {
  return checked("circuit", [&] {
    GateCircuit c;
    c.num_qubits = j.at("num_qubits").get<int>();
    c.leaf_blocks = j.at("leaf_blocks").get<int>();
    c.multiplexors = j.at("multiplexors").get<int>();
    for (const Json& g : j.at("gates")) c.gates.push_back(gate_from_json(g));
    c.validate();
    return c;
  });
}

Json to_json(const MemoryStateSet& set) {
  Json states = Json::array();
  for (const Vector& s : set.states) states.push_back(to_json(s));
  return Json{{"alphabet_size", set.alphabet_size}, {"future_length", set.future_length},
              {"labels", set.labels},               {"weights", set.weights},
              {"emission", set.emission},           {"successor", set.successor},
              {"states", std::move(states)}};
}

MemoryStateSet memory_set_from_json(const Json& j) {
  return checked("memory state set", [&] {
    MemoryStateSet set;
    set.alphabet_size = j.at("alphabet_size").get<int>();
    set.future_length = j.at("future_length").get<int>();
    set.labels = j.at("labels").get<std::vector<std::string>>();
    set.weights = j.at("weights").get<std::vector<double>>();
    set.emission = j.at("emission").get<std::vector<std::vector<double>>>();
    set.successor = j.at("successor").get<std::vector<std::vector<int>>>();
    for (const Json& s : j.at("states")) set.states.push_back(vector_from_json(s));
    set.validate();
    return set;
  });
}

Json to_json(const MergeReport& report) {
  return Json{{"delta", report.delta},
              {"clusters", report.clusters},
              {"gram", to_json(report.gram)},
              {"warnings", report.warnings}};
}

Json to_json(const EpsilonMachine& machine) {
  return Json{{"alphabet_size", machine.alphabet_size},
              {"next", machine.next},
              {"probability", machine.probability},
              {"stationary", machine.stationary}};
}

Json to_json(const QuasiprobDecomposition& d) {
  return Json{{"cost", d.cost}, {"residual", d.residual}, {"coefficients", d.coefficients}};
}

QuasiprobDecomposition decomposition_from_json(const Json& j) {
  return checked("decomposition", [&] {
    return QuasiprobDecomposition::from_coefficients(j.at("coefficients").get<std::vector<double>>(),
                                                     j.at("residual").get<double>());
  });
}

Json to_json(const MeasurementScheme& scheme) {
  Json variants = Json::array();
  for (const MeasurementVariant& v : scheme.variants)
    variants.push_back(Json{{"observable", v.observable}, {"flipped", v.flipped}, {"coefficient", v.coefficient}});
  return Json{{"cost", scheme.sampler.cost}, {"variants", std::move(variants)}};
}

MeasurementScheme measurement_scheme_from_json(const Json& j) {
  return checked("measurement scheme", [&] {
    MeasurementScheme s;
    std::vector<double> coefficients;
    for (const Json& v : j.at("variants")) {
      s.variants.push_back(
          {v.at("observable").get<int>(), v.at("flipped").get<bool>(), v.at("coefficient").get<double>()});
      coefficients.push_back(s.variants.back().coefficient);
    }
    s.sampler = QuasiprobDecomposition::from_coefficients(std::move(coefficients));
    return s;
  });
}

Json to_json(const GstDataset& gst) {
  Json ops = Json::array(), basis = Json::array();
  for (const Matrix& m : gst.operator_data) ops.push_back(to_json(m));
  for (const Matrix& m : gst.basis_data) basis.push_back(to_json(m));
  return Json{{"num_qubits", gst.num_qubits},
              {"shots", gst.shots ? Json(*gst.shots) : Json("exact")},
              {"gram_condition", gst.gram_condition},
              {"gram", to_json(gst.gram)},
              {"operators", std::move(ops)},
              {"basis", std::move(basis)}};
}

GstDataset gst_from_json(const Json& j) {
  return checked("GST dataset", [&] {
    GstDataset g;
    g.num_qubits = j.at("num_qubits").get<int>();
    const Json& shots = j.at("shots");
    if (shots.is_number_integer()) g.shots = shots.get<std::int64_t>();
    g.gram_condition = j.at("gram_condition").get<double>();
    g.gram = matrix_from_json(j.at("gram"));
    for (const Json& m : j.at("operators")) g.operator_data.push_back(matrix_from_json(m));
    for (const Json& m : j.at("basis")) g.basis_data.push_back(matrix_from_json(m));
    return g;
  });
}

Json to_json(const MitigatedDistribution& d) {
  return Json{{"steps", d.steps},
              {"outcomes_per_step", d.outcomes_per_step},
              {"runs", d.runs},
              {"total_cost", d.total_cost},
              {"stage_cost", d.stage_cost},
              {"sigma_predicted", d.sigma_predicted},
              {"labels", d.labels},
              {"p_qem", d.p_qem},
              {"positive", d.positive},
              {"negative", d.negative},
              {"chunk_size", d.chunk_size},
              {"chunk_estimates", d.chunk_estimates}};
}

MitigatedDistribution mitigated_from_json(const Json& j) {
  return checked("mitigated distribution", [&] {
    MitigatedDistribution d;
    d.steps = j.at("steps").get<int>();
    d.outcomes_per_step = j.at("outcomes_per_step").get<int>();
    d.runs = j.at("runs").get<std::int64_t>();
    d.total_cost = j.at("total_cost").get<double>();
    d.stage_cost = j.at("stage_cost").get<double>();
    d.sigma_predicted = j.at("sigma_predicted").get<double>();
    d.labels = j.at("labels").get<std::vector<std::string>>();
    d.p_qem = j.at("p_qem").get<std::vector<double>>();
    d.positive = j.at("positive").get<std::vector<std::int64_t>>();
    d.negative = j.at("negative").get<std::vector<std::int64_t>>();
    d.chunk_size = j.at("chunk_size").get<std::int64_t>();
    d.chunk_estimates = j.at("chunk_estimates").get<std::vector<std::vector<double>>>();
    return d;
  });
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw ValidationError("write failed for " + path.string());
}

}  // namespace qmpec
