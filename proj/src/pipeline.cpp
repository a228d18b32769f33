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

#include "qmpec/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "qmpec/error.hpp"
#include "qmpec/inference.hpp"
#include "qmpec/json_util.hpp"
#include "qmpec/monte_carlo.hpp"
#include "qmpec/process.hpp"
#include "qmpec/statistics.hpp"
#include "qmpec/synthesis.hpp"

namespace qmpec {

namespace fs = std::filesystem;

namespace {

constexpr Stage kStages[] = {Stage::Generate, Stage::Infer,    Stage::Synthesize,
                             Stage::Simulate, Stage::Mitigate, Stage::Report};

const std::vector<std::string>& stage_prefixes(Stage stage) {
  static const std::vector<std::vector<std::string>> table = {
      {"process."}, {"infer."}, {"synth."}, {"noise.", "gst."}, {"mc."}, {"report."}};
  return table[static_cast<int>(stage)];
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "process.p",      "process.n",         "process.seed",     "process.initial_state",
      "infer.L",        "infer.delta_override", "infer.xi",      "infer.max_order",
      "synth.seed",     "noise.q_dep",       "noise.q_dep2",     "noise.gamma_ad",
      "noise.q_z",      "noise.eps_meas",    "noise.eps_prep",   "gst.shots",
      "gst.seed",       "mc.runs",           "mc.chunk_size",    "mc.seed",
      "mc.steps",       "mc.records",        "report.sigma_target"};
  return keys;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void say(std::ostream* log, const std::string& line) {
  if (log) *log << line << '\n';
}

// Stage output files and the stage that writes them.
struct Artifact {
  const char* file;
  Stage stage;
};
constexpr Artifact kGenerate{"generate.json", Stage::Generate};
constexpr Artifact kInference{"inference.json", Stage::Infer};
constexpr Artifact kSynthesis{"synthesis.json", Stage::Synthesize};
constexpr Artifact kGst{"gst.json", Stage::Simulate};
constexpr Artifact kDecompositions{"decompositions.json", Stage::Simulate};
constexpr Artifact kMitigation{"mitigation.json", Stage::Mitigate};
constexpr Artifact kReport{"report.json", Stage::Report};

Json load_artifact(const fs::path& dir, const Artifact& a, const PipelineConfig* config) {
  const fs::path path = dir / a.file;
  if (!fs::exists(path))
    throw ValidationError("missing stage data: " + std::string(a.file) + " (stage " + stage_name(a.stage) +
                          ") not found in " + dir.string());
  Json j = read_json_file(path);
  if (config) {
    const std::string expected = config->stage_hash(a.stage);
    const std::string found = j.value("config_hash", std::string());
    if (found != expected)
      throw ValidationError(std::string(a.file) + " was produced with a different configuration (hash " + found +
                            ", expected " + expected + "); rerun stage " + stage_name(a.stage));
  }
  return j;
}

Json stamp(const PipelineConfig& config, Stage stage) {
  return Json{{"stage", stage_name(stage)}, {"config_hash", config.stage_hash(stage)}};
}

std::string csv_header(const Json& meta) {
  return "# " + meta.dump() + "\n";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
  if (!out) throw ValidationError("write failed for " + path.string());
}

// ---- stages --------------------------------------------------------------

void stage_generate(const PipelineConfig& c, const fs::path& dir, std::ostream* log) {
  PerturbedCoinParams params{c.process_p, c.process_seed, c.process_initial_state};
  const SymbolSequence seq = generate_perturbed_coin(params, static_cast<std::size_t>(c.process_n));
  std::ofstream out(dir / "sequence.txt");
  if (!out) throw ValidationError("cannot write sequence.txt");
  write_sequence(out, seq);
  out.close();
  Json j = stamp(c, Stage::Generate);
  j["process"] = Json{{"p", c.process_p}, {"n", c.process_n}, {"seed", c.process_seed},
                      {"initial_state", c.process_initial_state}};
  j["alphabet_size"] = seq.alphabet_size();
  j["sequence_file"] = "sequence.txt";
  write_json_file(dir / kGenerate.file, j);
  say(log, "generate: " + std::to_string(seq.size()) + " symbols");
}

void stage_infer(const PipelineConfig& c, const fs::path& dir, std::ostream* log) {
  const Json gen = load_artifact(dir, kGenerate, &c);
  std::ifstream in(dir / gen.at("sequence_file").get<std::string>());
  if (!in) throw ValidationError("missing stage data: sequence file (stage generate)");
  const SymbolSequence seq = read_sequence(in, gen.at("alphabet_size").get<int>());

  const double xi = c.infer_xi.value_or(default_xi(seq.size()));
  const MarkovOrderEstimate order = effective_markov_order(seq, xi, c.infer_max_order);
  const int history = c.infer_history > 0 ? c.infer_history : std::max(1, order.order);
  const ConditionalDistribution cond = conditional_distribution(seq, history);
  const MemoryStateSet raw = infer_memory_states(cond, history);
  auto [merged, report] = merge_states(raw, seq.size(), c.infer_delta_override);
  const EpsilonMachine machine = build_epsilon_machine(merged);

  Json j = stamp(c, Stage::Infer);
  j["markov_order"] = Json{{"xi", xi}, {"order", order.order}, {"converged", order.converged},
                           {"distances", order.distances}};
  j["history_length"] = history;
  j["raw_state_count"] = raw.size();
  j["C_mu"] = classical_statistical_complexity(machine);
  j["C_q"] = quantum_statistical_memory(merged);
  j["C_q_unmerged"] = quantum_statistical_memory(raw);
  j["merge_report"] = to_json(report);
  j["memory_states"] = to_json(merged);
  j["epsilon_machine"] = to_json(machine);
  write_json_file(dir / kInference.file, j);
  say(log, "infer: L=" + std::to_string(history) + ", " + std::to_string(merged.size()) + " memory states, C_q=" +
               fmt(j["C_q"].get<double>()));
}

void stage_synthesize(const PipelineConfig& c, const fs::path& dir, std::ostream* log) {
  const Json inf = load_artifact(dir, kInference, &c);
  const MemoryStateSet set = memory_set_from_json(inf.at("memory_states"));
  const ModelUnitary model = build_unitary(set, c.synth_seed);
  const UnitaryMatrix u = register_unitary(model, set.alphabet_size);
  const GateCircuit circuit = csd_decompose(u);
  const double roundtrip = max_abs_diff_up_to_phase(reconstruct(circuit).matrix(), u.matrix());
  const Matrix overlaps = model.memory_states.transpose() * model.memory_states;

  Json j = stamp(c, Stage::Synthesize);
  j["seed"] = c.synth_seed;
  j["alphabet_size"] = set.alphabet_size;
  j["memory_qubits"] = model.memory_qubits;
  j["ancilla_qubits"] = model.ancilla_qubits;
  j["initial_memory_state"] = set.labels.front();
  j["fixed_column_defect"] = model.fixed_column_defect;
  j["overlap_defect"] = max_abs(overlaps - set.gram());
  j["roundtrip_error"] = roundtrip;
  j["gram_schmidt"] = to_json(model.basis.gamma);
  j["memory_state_vectors"] = to_json(model.memory_states);
  j["unitary"] = to_json(u.matrix());
  j["circuit"] = to_json(circuit);
  j["gate_count"] = circuit.gates.size();
  j["depth_formula"] = circuit_depth_formula(circuit.num_qubits, 1);
  write_json_file(dir / kSynthesis.file, j);
  say(log, "synthesize: " + std::to_string(circuit.num_qubits) + " qubits, " + std::to_string(circuit.gates.size()) +
               " gates");
}

void stage_simulate(const PipelineConfig& c, const fs::path& dir, std::ostream* log) {
  const Json syn = load_artifact(dir, kSynthesis, &c);
  const GateCircuit circuit = circuit_from_json(syn.at("circuit"));
  const PecSetup s = prepare_pec(circuit, syn.at("memory_qubits").get<int>(), c.noise, c.gst_shots, c.gst_seed);

  Json labels = Json::array();
  for (const BasisOperation& op : s.basis.operations) labels.push_back(op.label);
  Json g = stamp(c, Stage::Simulate);
  g["seed"] = c.gst_seed;
  g["basis_labels"] = std::move(labels);
  g["circuit"] = to_json(s.gst);
  g["single_qubit"] = to_json(s.gst_single);
  write_json_file(dir / kGst.file, g);

  Json d = stamp(c, Stage::Simulate);
  d["hat"] = to_json(s.hat.matrix);
  d["inverse_noise"] = to_json(s.inverse_noise.matrix);
  d["correction"] = to_json(s.correction);
  d["state"] = to_json(s.state_measurement.rho);
  d["measurement"] = to_json(s.state_measurement.measurement);
  d["measurement_scheme"] = to_json(s.measurement);
  d["costs"] = Json{{"C_O", s.correction.cost},
                    {"C_rho", s.state_measurement.rho.cost},
                    {"C_M", s.measurement.sampler.cost}};
  d["warnings"] = s.warnings;
  write_json_file(dir / kDecompositions.file, d);
  for (const std::string& w : s.warnings) say(log, "simulate: warning: " + w);
  say(log, "simulate: C_O=" + fmt(s.correction.cost) + " C_rho=" + fmt(s.state_measurement.rho.cost) +
               " C_M=" + fmt(s.measurement.sampler.cost));
}

std::uint64_t step_seed(std::uint64_t seed, int t) {
  return seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(t);
}

void stage_mitigate(const PipelineConfig& c, const fs::path& dir, std::ostream* log) {
  const Json syn = load_artifact(dir, kSynthesis, &c);
  const Json dec = load_artifact(dir, kDecompositions, &c);
  const GateCircuit circuit = circuit_from_json(syn.at("circuit"));
  PecSetup s = device_setup(circuit, syn.at("memory_qubits").get<int>(), c.noise);
  s.correction = decomposition_from_json(dec.at("correction"));
  s.state_measurement.rho = decomposition_from_json(dec.at("state"));
  s.state_measurement.measurement = decomposition_from_json(dec.at("measurement"));
  s.measurement = measurement_scheme_from_json(dec.at("measurement_scheme"));
  if (s.correction.size() != s.implemented_basis.size())
    throw ValidationError("decompositions.json does not match the basis set for this circuit");

  Json results = Json::array();
  for (int t = 1; t <= c.mc_steps; ++t) {
    const PecSampler mitigated(s.mitigated_plan(t));
    const std::vector<double> ideal = PecSampler(s.ideal_plan(t)).expected_distribution();
    const std::vector<double> noisy = PecSampler(s.unmitigated_plan(t)).expected_distribution();
    RecordSink sink;
    std::ofstream records;
    if (c.mc_records) {
      const fs::path path = dir / ("records_t" + std::to_string(t) + ".csv");
      records.open(path);
      if (!records) throw ValidationError("cannot write " + path.string());
      Json meta = stamp(c, Stage::Mitigate);
      meta["t"] = t;
      records << csv_header(meta) << "run,word,sign\n";
      const int outcomes = mitigated.plan().outcomes_per_step();
      sink = [&records, outcomes, t](std::int64_t run, WordCode word, int sign) {
        records << run << ',' << word_to_string(word, outcomes, t) << ',' << sign << '\n';
      };
    }
    const MitigatedDistribution d = run_pec(mitigated, c.mc_runs, step_seed(c.mc_seed, t), c.mc_chunk_size, sink);
    Json r{{"t", t}, {"ideal", ideal}, {"noisy", noisy}, {"mitigated_expected", mitigated.expected_distribution()},
           {"mitigated", to_json(d)}};
    results.push_back(std::move(r));
    say(log, "mitigate: t=" + std::to_string(t) + " C=" + fmt(d.total_cost) + " sigma=" + fmt(d.sigma_predicted));
  }
  Json j = stamp(c, Stage::Mitigate);
  j["seed"] = c.mc_seed;
  j["runs"] = c.mc_runs;
  j["chunk_size"] = c.mc_chunk_size;
  j["results"] = std::move(results);
  write_json_file(dir / kMitigation.file, j);
}

// Word with the largest ideal probability; ties go to the lowest index.
std::size_t tracked_word(const std::vector<double>& ideal) {
  return static_cast<std::size_t>(std::max_element(ideal.begin(), ideal.end()) - ideal.begin());
}

void stage_report(const PipelineConfig& c, const fs::path& dir, std::ostream* log) {
  const Json gen = load_artifact(dir, kGenerate, &c);
  const Json inf = load_artifact(dir, kInference, &c);
  const Json syn = load_artifact(dir, kSynthesis, &c);
  const Json dec = load_artifact(dir, kDecompositions, &c);
  const Json mit = load_artifact(dir, kMitigation, &c);

  Json steps = Json::array();
  double cost_t1 = 1.0;
  for (const Json& r : mit.at("results")) {
    const int t = r.at("t").get<int>();
    const auto ideal = r.at("ideal").get<std::vector<double>>();
    const auto noisy = r.at("noisy").get<std::vector<double>>();
    const MitigatedDistribution d = mitigated_from_json(r.at("mitigated"));
    if (t == 1) cost_t1 = d.total_cost;
    const std::size_t w = tracked_word(ideal);
    const std::vector<double> clipped = d.clipped();
    const double fidelity = distribution_fidelity(ideal, clipped);
    Json entry{{"t", t},
               {"labels", d.labels},
               {"ideal", ideal},
               {"noisy", noisy},
               {"mitigated", d.p_qem},
               {"mitigated_clipped", clipped},
               {"mitigated_sum", d.sum()},
               {"total_cost", d.total_cost},
               {"stage_cost", d.stage_cost},
               {"runs", d.runs},
               {"sigma_predicted", d.sigma_predicted},
               {"tracked_word", d.labels[w]},
               {"bias_mitigated", std::abs(d.p_qem[w] - ideal[w])},
               {"bias_unmitigated", std::abs(noisy[w] - ideal[w])},
               {"fidelity_mitigated", fidelity},
               {"infidelity_mitigated", 1.0 - fidelity},
               {"fidelity_unmitigated", distribution_fidelity(ideal, noisy)}};
    const bool positive = std::all_of(ideal.begin(), ideal.end(), [](double p) { return p > 0.0; });
    entry["infidelity_predicted"] =
        positive ? Json(predict_fidelity_perturbation(d.stage_cost, t, static_cast<double>(d.runs), ideal)) : Json();
    if (d.chunk_estimates.size() >= 2) {
      std::vector<double> tracked;
      for (const auto& chunk : d.chunk_estimates) tracked.push_back(chunk[w]);
      entry["chunk_sigma_measured"] = sample_std(tracked);
      entry["chunk_sigma_predicted"] = d.total_cost / std::sqrt(static_cast<double>(d.chunk_size));
      entry["chunks"] = d.chunk_estimates.size();
    }
    steps.push_back(std::move(entry));
  }

  const double c_mu = inf.at("C_mu").get<double>();
  const double sigma = c.report_sigma_target;
  const double n_classical = 1.0 / (sigma * sigma);
  const double n_mc = cost_t1 * cost_t1 / (sigma * sigma);
  Json advantage{{"sigma_target", sigma}, {"cost", cost_t1}, {"n_classical", n_classical}, {"n_mc", n_mc},
                 {"C_mu", c_mu}};
  if (c_mu > 0.0) {
    const AdvantageRegion region = memory_advantage_region(n_mc, n_classical, c_mu);
    advantage["threshold"] = region.threshold;
    advantage["full_range"] = region.full_range;
    advantage["p_low"] = region.p_low;
    advantage["p_high"] = region.p_high;
  } else {
    advantage["threshold"] = Json();
    advantage["full_range"] = false;
    advantage["p_low"] = Json();
    advantage["p_high"] = Json();
  }

  Json j = stamp(c, Stage::Report);
  j["provenance"] = Json{{"seeds",
                          {{"process", c.process_seed},
                           {"synth", c.synth_seed},
                           {"gst", c.gst_seed},
                           {"mc", c.mc_seed}}},
                         {"stage_hashes",
                          {{"generate", gen.at("config_hash")},
                           {"infer", inf.at("config_hash")},
                           {"synthesize", syn.at("config_hash")},
                           {"simulate", dec.at("config_hash")},
                           {"mitigate", mit.at("config_hash")}}}};
  j["memory"] = Json{{"C_mu", c_mu},
                     {"C_q", inf.at("C_q")},
                     {"C_q_exact", perturbed_coin_cq(gen.at("process").at("p").get<double>())},
                     {"memory_states", inf.at("memory_states").at("labels").size()}};
  j["circuit"] = Json{{"num_qubits", syn.at("circuit").at("num_qubits")},
                      {"gate_count", syn.at("gate_count")},
                      {"depth_reported", syn.at("circuit").at("depth_reported")},
                      {"depth_formula", syn.at("depth_formula")}};
  j["costs"] = dec.at("costs");
  j["warnings"] = dec.at("warnings");
  j["advantage"] = std::move(advantage);
  j["steps"] = std::move(steps);
  write_json_file(dir / kReport.file, j);
  for (const char* fig : {"joint_dist", "chunk_hist", "cq_vs_p"}) {
    if (std::string(fig) == "chunk_hist" && c.mc_chunk_size == 0) continue;
    emit_figure_data(dir, fig);
  }
  say(log, "report: written to " + (dir / kReport.file).string());
}

}  // namespace

std::string stage_name(Stage stage) {
  static const char* names[] = {"generate", "infer", "synthesize", "simulate", "mitigate", "report"};
  return names[static_cast<int>(stage)];
}

Stage parse_stage(const std::string& name) {
  for (Stage s : kStages)
    if (stage_name(s) == name) return s;
  throw ValidationError("unknown stage '" + name + "'");
}

std::vector<Stage> parse_stages(const std::string& list) {
  if (list.empty()) return {std::begin(kStages), std::end(kStages)};
  std::set<int> chosen;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    chosen.insert(static_cast<int>(parse_stage(item)));
  }
  if (chosen.empty()) throw ValidationError("no stages selected");
  if (*chosen.rbegin() - *chosen.begin() + 1 != static_cast<int>(chosen.size()))
    throw ValidationError("stages must form a contiguous chain; missing stages between " +
                          stage_name(static_cast<Stage>(*chosen.begin())) + " and " +
                          stage_name(static_cast<Stage>(*chosen.rbegin())));
  std::vector<Stage> out;
  for (int s : chosen) out.push_back(static_cast<Stage>(s));
  return out;
}

PipelineConfig PipelineConfig::from_config(const Config& config) {
  for (const auto& [key, value] : config.entries())
    if (!known_keys().count(key)) throw ValidationError("unknown config key '" + key + "'");
  PipelineConfig c;
  c.process_p = config.get_double("process.p", c.process_p);
  c.process_n = config.get_int("process.n", c.process_n);
  c.process_seed = config.get_uint("process.seed", c.process_seed);
  c.process_initial_state = static_cast<int>(config.get_int("process.initial_state", c.process_initial_state));
  c.infer_history = static_cast<int>(config.get_int("infer.L", c.infer_history));
  if (config.has("infer.delta_override")) c.infer_delta_override = config.get_double("infer.delta_override", 0.0);
  if (config.has("infer.xi")) c.infer_xi = config.get_double("infer.xi", 0.0);
  c.infer_max_order = static_cast<int>(config.get_int("infer.max_order", c.infer_max_order));
  c.synth_seed = config.get_uint("synth.seed", c.synth_seed);
  c.noise.q_dep = config.get_double("noise.q_dep", 0.0);
  c.noise.q_dep2 = config.get_double("noise.q_dep2", 0.0);
  c.noise.gamma_ad = config.get_double("noise.gamma_ad", 0.0);
  c.noise.q_z = config.get_double("noise.q_z", 0.0);
  c.noise.eps_meas = config.get_double("noise.eps_meas", 0.0);
  c.noise.eps_prep = config.get_double("noise.eps_prep", 0.0);
  const std::string shots = config.get_string("gst.shots", "exact");
  if (shots != "exact") c.gst_shots = config.get_int("gst.shots", 0);
  c.gst_seed = config.get_uint("gst.seed", c.gst_seed);
  c.mc_runs = config.get_int("mc.runs", c.mc_runs);
  c.mc_chunk_size = config.get_int("mc.chunk_size", c.mc_chunk_size);
  c.mc_seed = config.get_uint("mc.seed", c.mc_seed);
  c.mc_steps = static_cast<int>(config.get_int("mc.steps", c.mc_steps));
  c.mc_records = config.get_bool("mc.records", c.mc_records);
  c.report_sigma_target = config.get_double("report.sigma_target", c.report_sigma_target);
  c.validate();
  return c;
}

void PipelineConfig::validate() const {
  qmpec::validate(PerturbedCoinParams{process_p, process_seed, process_initial_state});
  if (process_n < 2) throw ValidationError("process.n must be at least 2");
  if (infer_history < 0) throw ValidationError("infer.L must be non-negative");
  if (infer_delta_override && !(*infer_delta_override >= 0.0 && *infer_delta_override <= 1.0))
    throw ValidationError("infer.delta_override must lie in [0, 1]");
  if (infer_xi && !(*infer_xi > 0.0)) throw ValidationError("infer.xi must be positive");
  if (infer_max_order < 0) throw ValidationError("infer.max_order must be non-negative");
  noise.validate();
  if (gst_shots && *gst_shots < 1) throw ValidationError("gst.shots must be positive or 'exact'");
  if (mc_runs < 1) throw ValidationError("mc.runs must be positive");
  if (mc_chunk_size < 0) throw ValidationError("mc.chunk_size must be non-negative");
  if (mc_steps < 1 || mc_steps > 12) throw ValidationError("mc.steps must lie in [1, 12]");
  if (!(report_sigma_target > 0.0)) throw ValidationError("report.sigma_target must be positive");
}

std::map<std::string, std::string> PipelineConfig::entries() const {
  std::map<std::string, std::string> e;
  e["process.p"] = fmt(process_p);
  e["process.n"] = std::to_string(process_n);
  e["process.seed"] = std::to_string(process_seed);
  e["process.initial_state"] = std::to_string(process_initial_state);
  e["infer.L"] = std::to_string(infer_history);
  e["infer.delta_override"] = infer_delta_override ? fmt(*infer_delta_override) : "default";
  e["infer.xi"] = infer_xi ? fmt(*infer_xi) : "default";
  e["infer.max_order"] = std::to_string(infer_max_order);
  e["synth.seed"] = std::to_string(synth_seed);
  e["noise.q_dep"] = fmt(noise.q_dep);
  e["noise.q_dep2"] = fmt(noise.q_dep2);
  e["noise.gamma_ad"] = fmt(noise.gamma_ad);
  e["noise.q_z"] = fmt(noise.q_z);
  e["noise.eps_meas"] = fmt(noise.eps_meas);
  e["noise.eps_prep"] = fmt(noise.eps_prep);
  e["gst.shots"] = gst_shots ? std::to_string(*gst_shots) : "exact";
  e["gst.seed"] = std::to_string(gst_seed);
  e["mc.runs"] = std::to_string(mc_runs);
  e["mc.chunk_size"] = std::to_string(mc_chunk_size);
  e["mc.seed"] = std::to_string(mc_seed);
  e["mc.steps"] = std::to_string(mc_steps);
  e["mc.records"] = mc_records ? "true" : "false";
  e["report.sigma_target"] = fmt(report_sigma_target);
  return e;
}

std::string PipelineConfig::stage_hash(Stage stage) const {
  std::vector<std::string> prefixes;
  for (Stage s : kStages) {
    if (static_cast<int>(s) > static_cast<int>(stage)) break;
    for (const std::string& p : stage_prefixes(s)) prefixes.push_back(p);
  }
  std::string text;
  for (const auto& [key, value] : entries())
    for (const std::string& p : prefixes)
      if (key.compare(0, p.size(), p) == 0) text += key + "=" + value + "\n";
  return hex64(fnv1a(text));
}

void run_pipeline(const PipelineConfig& config, const std::vector<Stage>& stages, const fs::path& out_dir,
                  std::ostream* log) {
  config.validate();
  fs::create_directories(out_dir);
  for (Stage s : stages) {
    switch (s) {
      case Stage::Generate: stage_generate(config, out_dir, log); break;
      case Stage::Infer: stage_infer(config, out_dir, log); break;
      case Stage::Synthesize: stage_synthesize(config, out_dir, log); break;
      case Stage::Simulate: stage_simulate(config, out_dir, log); break;
      case Stage::Mitigate: stage_mitigate(config, out_dir, log); break;
      case Stage::Report: stage_report(config, out_dir, log); break;
    }
  }
}

fs::path emit_figure_data(const fs::path& bundle, const std::string& which) {
  std::ostringstream csv;
  if (which == "joint_dist" || which == "chunk_hist") {
    const Json mit = load_artifact(bundle, kMitigation, nullptr);
    Json meta{{"figure", which}, {"source", kMitigation.file}, {"config_hash", mit.at("config_hash")},
              {"seed", mit.at("seed")}, {"runs", mit.at("runs")}};
    if (which == "joint_dist") {
      csv << csv_header(meta) << "t,word,ideal,noisy,mitigated\n";
      for (const Json& r : mit.at("results")) {
        const int t = r.at("t").get<int>();
        const auto ideal = r.at("ideal").get<std::vector<double>>();
        const auto noisy = r.at("noisy").get<std::vector<double>>();
        const auto labels = r.at("mitigated").at("labels").get<std::vector<std::string>>();
        const auto p = r.at("mitigated").at("p_qem").get<std::vector<double>>();
        for (std::size_t w = 0; w < labels.size(); ++w)
          csv << t << ',' << labels[w] << ',' << csv_number(ideal[w]) << ',' << csv_number(noisy[w]) << ','
              << csv_number(p[w]) << '\n';
      }
    } else {
      if (mit.at("chunk_size").get<std::int64_t>() == 0)
        throw ValidationError("chunk_hist needs mitigate stage output produced with mc.chunk_size > 0");
      meta["chunk_size"] = mit.at("chunk_size");
      csv << csv_header(meta) << "t,chunk,word,estimate\n";
      for (const Json& r : mit.at("results")) {
        const int t = r.at("t").get<int>();
        const std::size_t w = tracked_word(r.at("ideal").get<std::vector<double>>());
        const std::string label = r.at("mitigated").at("labels").at(w).get<std::string>();
        const Json& chunks = r.at("mitigated").at("chunk_estimates");
        for (std::size_t k = 0; k < chunks.size(); ++k)
          csv << t << ',' << k << ',' << label << ',' << csv_number(chunks[k][w].get<double>()) << '\n';
      }
    }
  } else if (which == "cq_vs_p") {
    const Json rep = load_artifact(bundle, kReport, nullptr);
    const Json& adv = rep.at("advantage");
    Json meta{{"figure", which}, {"source", kReport.file}, {"config_hash", rep.at("config_hash")},
              {"advantage", adv}};
    csv << csv_header(meta) << "p,C_mu,C_q,in_advantage_interval\n";
    const bool applicable = !adv.at("p_low").is_null();
    for (int k = 1; k <= 199; ++k) {
      const double p = k / 200.0;
      const double c_mu = classical_statistical_complexity(perturbed_coin_machine(p));
      const double c_q = perturbed_coin_cq(p);
      bool inside = false;
      if (applicable && k != 100)
        inside = adv.at("full_range").get<bool>() ||
                 (p >= adv.at("p_low").get<double>() && p <= adv.at("p_high").get<double>());
      csv << csv_number(p) << ',' << csv_number(c_mu) << ',' << csv_number(c_q) << ',' << (inside ? 1 : 0) << '\n';
    }
  } else {
    throw ValidationError("unknown figure '" + which + "' (expected joint_dist, chunk_hist or cq_vs_p)");
  }
  const fs::path path = bundle / (which + ".csv");
  write_text(path, csv.str());
  return path;
}

}  // namespace qmpec
