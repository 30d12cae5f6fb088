// Copyright 2026 The procmat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// procmat command-line front end.

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "procmat/procmat.hpp"
#include "procmat_io/document.hpp"
#include "procmat_io/report.hpp"

namespace {

using namespace procmat;
using io::ExitCode;
using io::RunReport;
using nlohmann::json;

struct Options {
  std::string input;
  std::string output;
  std::string basis = "z";
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::size_t max_iter = 50000;
  bool json = false;
  bool hs = false;
  std::string variant = "general";
  std::string fixture;
  double p = 0.5;
  double strength = 0.9;
  std::vector<std::size_t> dims{2, 2, 2, 2};
  std::string alice_in = "z0", alice_out = "z0", bob_in = "z0", bob_out = "z0";
  std::size_t samples = 100;
  std::size_t random_strategies = 0;
};

/// Output of a command: a document for stdout or --output, plus the report.
struct Outcome {
  std::optional<std::string> document;
};

class CheckFailed : public Error {
 public:
  using Error::Error;
};

SystemLayout layout_from(const std::vector<std::size_t>& dims) {
  if (dims.size() != 4) throw ContractViolation("--dims needs four values dA1,dA2,dB1,dB2");
  return SystemLayout(dims[0], dims[1], dims[2], dims[3]);
}

json layout_json(const SystemLayout& l) { return {l.d_a1(), l.d_a2(), l.d_b1(), l.d_b2()}; }

json validity_json(const ValidityReport& r) {
  json j;
  j["valid"] = r.overall;
  j["psd"] = r.is_psd;
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["trace_ok"] = r.trace_ok;
  j["trace"] = r.trace;
  j["mask_ok"] = r.mask_ok;
  json off = json::array();
  for (const auto& t : r.offending)
    off.push_back({{"pattern", pattern_name(t.pattern)}, {"max_coefficient", t.max_coefficient}});
  j["offending_terms"] = std::move(off);
  return j;
}

MaskVariant variant_from(const std::string& s) {
  if (s == "general") return MaskVariant::general;
  if (s == "a-before-b") return MaskVariant::a_before_b;
  if (s == "b-before-a") return MaskVariant::b_before_a;
  throw ContractViolation("unknown mask variant '" + s + "'");
}

std::string hs_label(const HSDecomposition& dec, std::size_t index) {
  static const char kPauli[] = {'I', 'X', 'Y', 'Z'};
  const auto element = dec.element_of(index);
  std::string label;
  for (std::size_t k = 0; k < element.size(); ++k) {
    if (k > 0) label += ".";
    if (dec.shape.dims()[k] == 2)
      label += kPauli[element[k]];
    else
      label += "g" + std::to_string(element[k]);
  }
  return label;
}

json hs_table(const ProcessMatrix& w) {
  const HSDecomposition dec = hs_decompose(w.matrix(), w.layout().shape());
  json rows = json::array();
  for (std::size_t i = 0; i < dec.coefficients.size(); ++i) {
    if (std::abs(dec.coefficients[i]) <= 1e-12) continue;
    rows.push_back({{"term", hs_label(dec, i)},
                    {"pattern", pattern_name(dec.pattern_of(i))},
                    {"coefficient", dec.coefficients[i]}});
  }
  return rows;
}

/// "z0", "x1", "y0" for qubits; "e<k>" for computational vector k of any dim.
Vector state_vector(const std::string& label, std::size_t dim) {
  const double s = 1.0 / std::sqrt(2.0);
  if (label.size() >= 2 && label[0] == 'e') {
    const std::size_t k = std::stoul(label.substr(1));
    if (k >= dim) throw ContractViolation("state '" + label + "' out of range");
    Vector v(dim, complex(0.0));
    v[k] = 1.0;
    return v;
  }
  if (dim != 2 || label.size() != 2 || (label[1] != '0' && label[1] != '1'))
    throw ContractViolation("unknown state '" + label + "' for dimension " + std::to_string(dim));
  const bool one = label[1] == '1';
  switch (label[0]) {
    case 'z':
      return one ? Vector{0.0, 1.0} : Vector{1.0, 0.0};
    case 'x':
      return one ? Vector{s, -s} : Vector{s, s};
    case 'y':
      return one ? Vector{s, complex(0.0, -s)} : Vector{s, complex(0.0, s)};
    default:
      throw ContractViolation("unknown state '" + label + "'");
  }
}

class Command {
 public:
  Command(const Options& o, RunReport& report) : o_(o), report_(report) {
    report_.set_tolerance("tol", o_.tol);
  }

  io::ProcessDocument load_process() {
    const std::string text = io::read_input(o_.input);
    report_.add_input(o_.input.empty() ? "stdin" : o_.input, io::digest(text));
    return io::decode(text);
  }

  /// Loads the input and insists that it is a valid process.
  ProcessMatrix load_valid_process() {
    ProcessMatrix w = load_process().process;
    const ValidityReport v = validate_process(w, o_.tol);
    if (!v.overall) {
      report_.results()["input_validity"] = validity_json(v);
      throw ContractViolation("input is not a valid process matrix at tol " +
                              std::to_string(o_.tol));
    }
    return w;
  }

  io::BasisSet bases(const SystemLayout& layout) {
    if (o_.basis == "z") return io::computational_bases(layout);
    const std::string text = io::read_input(o_.basis);
    report_.add_input(o_.basis, io::digest(text));
    return io::decode_bases(text, layout);
  }

  std::string emit(const ProcessMatrix& w, io::Metadata meta) {
    report_.results()["layout"] = layout_json(w.layout());
    return io::encode({w, std::move(meta)});
  }

 protected:
  const Options& o_;
  RunReport& report_;
};

Outcome run_fixture(const Options& o, RunReport& report) {
  Command cmd(o, report);
  std::optional<ProcessMatrix> w;
  io::Metadata meta;
  meta.name = o.fixture;
  meta.provenance = "fixture";
  if (o.fixture == "ocb") {
    w = ocb_process();
  } else if (o.fixture == "w0") {
    if (!(o.p >= 0.0 && o.p <= 1.0)) throw ContractViolation("--p must lie in [0,1]");
    w = w0_process(o.p);
    report.results()["p"] = o.p;
  } else if (o.fixture == "identity") {
    w = identity_process(layout_from(o.dims));
  } else if (o.fixture == "channel") {
    w = channel_process(layout_from(o.dims));
  } else {
    throw ContractViolation("unknown fixture '" + o.fixture + "'");
  }
  report.results()["fixture"] = o.fixture;
  report.results()["validity"] = validity_json(validate_process(*w, o.tol));
  return {cmd.emit(*w, meta)};
}

Outcome run_gen_random(const Options& o, RunReport& report) {
  Command cmd(o, report);
  const ProcessMatrix w = random_process(o.seed, layout_from(o.dims), o.strength);
  report.results()["seed"] = o.seed;
  report.results()["strength"] = o.strength;
  report.results()["validity"] = validity_json(validate_process(w, o.tol));
  io::Metadata meta;
  meta.name = "random";
  meta.seed = o.seed;
  meta.provenance = "gen-random";
  return {cmd.emit(w, meta)};
}

Outcome run_validate(const Options& o, RunReport& report) {
  Command cmd(o, report);
  const ProcessMatrix w = cmd.load_process().process;
  const ValidityReport v = validate_process(w, o.tol, variant_from(o.variant));
  report.results()["layout"] = layout_json(w.layout());
  report.results()["variant"] = o.variant;
  report.results()["validity"] = validity_json(v);
  report.set_tolerance("psd", psd_tolerance(w.layout().d_total()));
  if (o.hs) report.results()["hs_terms"] = hs_table(w);
  if (!v.overall) throw CheckFailed("not a valid process matrix");
  return {};
}

Outcome run_born(const Options& o, RunReport& report) {
  Command cmd(o, report);
  const ProcessMatrix w = cmd.load_valid_process();
  const SystemLayout& l = w.layout();
  const CPMap alice = measure_reprepare(state_vector(o.alice_in, l.d_a1()),
                                        state_vector(o.alice_out, l.d_a2()));
  const CPMap bob =
      measure_reprepare(state_vector(o.bob_in, l.d_b1()), state_vector(o.bob_out, l.d_b2()));
  report.results()["alice"] = {{"measure", o.alice_in}, {"prepare", o.alice_out}};
  report.results()["bob"] = {{"measure", o.bob_in}, {"prepare", o.bob_out}};
  report.results()["probability"] = born_probability(w, alice, bob);
  return {};
}

Outcome run_dephase(const Options& o, RunReport& report) {
  Command cmd(o, report);
  const ProcessMatrix w = cmd.load_valid_process();
  const io::BasisSet b = cmd.bases(w.layout());
  const EffectiveProcess eff = luders_input_dephase(w, b.a1, b.b1);
  report.results()["basis"] = o.basis;
  report.results()["validity"] = validity_json(validate_process(eff.matrix, o.tol));
  report.results()["indistinguishability"] = {
      {"samples", o.samples},
      {"seed", o.seed},
      {"max_abs_difference", indistinguishability_residual(w, eff, o.samples, o.seed)}};
  io::Metadata meta;
  meta.name = "dephased";
  meta.provenance = "dephase --basis " + o.basis;
  return {cmd.emit(eff.matrix, meta)};
}

Outcome run_effective_classical(const Options& o, RunReport& report) {
  Command cmd(o, report);
  const ProcessMatrix w = cmd.load_valid_process();
  const io::BasisSet b = cmd.bases(w.layout());
  const ProcessMatrix c = classical_effective(w, b.a1, b.a2, b.b1, b.b2);
  report.results()["basis"] = o.basis;
  report.results()["validity"] = validity_json(validate_process(c, o.tol));
  io::Metadata meta;
  meta.name = "classical";
  meta.provenance = "effective-classical --basis " + o.basis;
  return {cmd.emit(c, meta)};
}

json decomposition_summary(const ProcessMatrix& w, const CausalDecomposition& dec, double tol) {
  const DecompositionCheck check = verify_decomposition(w, dec, tol);
  json j;
  j["p"] = dec.p;
  j["has_a_before_b"] = dec.w_ab.has_value();
  j["has_b_before_a"] = dec.w_ba.has_value();
  j["reconstruction_error"] = check.reconstruction_error;
  j["parts_valid"] = check.parts_ok;
  if (check.ab_report) j["a_before_b"] = validity_json(*check.ab_report);
  if (check.ba_report) j["b_before_a"] = validity_json(*check.ba_report);
  j["verified"] = check.passed;
  return j;
}

Outcome run_separate(const Options& o, RunReport& report) {
  Command cmd(o, report);
  const ProcessMatrix w = cmd.load_valid_process();
  const io::BasisSet b = cmd.bases(w.layout());
  const ConstructiveResult r = constructive_decomposition_detailed(w, b.a1, b.b1);
  const EigenStructure& s = r.structure;
  json& res = report.results();
  res["basis"] = o.basis;
  res["lambda0"] = r.split.lambda0;
  res["conditions"] = {{"commutator_k1_k2", s.commutator_k1_k2},
                       {"commutator_k1_p", s.commutator_k1_p},
                       {"commutator_p_k2", s.commutator_p_k2},
                       {"product_form_residual", s.product_form_residual},
                       {"eigen_residual", s.eigen_residual},
                       {"min_eigen_sum", s.min_eigen_sum}};
  res["shifts"] = r.shifts;
  res["decomposition"] = decomposition_summary(w, r.decomposition, o.tol);
  report.set_tolerance("structure", kStructureTol);
  if (!res["decomposition"]["verified"].get<bool>()) throw CheckFailed("decomposition rejected");
  if (!o.output.empty()) return {io::decomposition_to_json(r.decomposition).dump() + "\n"};
  return {};
}

Outcome run_check_sep(const Options& o, RunReport& report) {
  Command cmd(o, report);
  const ProcessMatrix w = cmd.load_valid_process();
  const io::BasisSet b = cmd.bases(w.layout());
  json& res = report.results();
  report.set_tolerance("structure", kStructureTol);

  std::optional<CausalDecomposition> found;
  try {
    CausalDecomposition dec = constructive_decomposition(w, b.a1, b.b1);
    if (verify_decomposition(w, dec, o.tol).passed) {
      found = std::move(dec);
      res["path"] = "constructive";
      res["status"] = to_string(SeparabilityStatus::separable);
    } else {
      res["constructive_fallback_reason"] = "decomposition did not verify";
    }
  } catch (const PreconditionError& e) {
    res["constructive_fallback_reason"] = e.what();
  } catch (const StructureError& e) {
    res["constructive_fallback_reason"] = e.what();
  } catch (const InternalConsistencyError& e) {
    res["constructive_fallback_reason"] = e.what();
  }

  SeparabilityStatus status = SeparabilityStatus::separable;
  if (!found) {
    DykstraOptions opts;
    opts.tol = o.tol;
    opts.max_iter = o.max_iter;
    const FeasibilityReport f = dykstra_separability(w, opts);
    status = f.status;
    res["path"] = "dykstra";
    res["status"] = to_string(f.status);
    res["residual"] = f.residual;
    res["plateau_residual"] = f.plateau_residual;
    res["iterations"] = f.iterations;
    report.set_tolerance("max_iter", static_cast<double>(o.max_iter));
    found = f.decomposition;
  }
  if (found) res["decomposition"] = decomposition_summary(w, *found, o.tol);
  if (status != SeparabilityStatus::separable)
    throw CheckFailed(std::string("status ") + to_string(status));
  if (!o.output.empty() && found) return {io::decomposition_to_json(*found).dump() + "\n"};
  return {};
}

json game_json(const GameResult& g) {
  return {{"value", g.value},
          {"p_alice_guesses_b", g.p_alice_guesses_b},
          {"p_bob_guesses_a", g.p_bob_guesses_a},
          {"strategy", g.strategy_id},
          {"variant_index", g.variant_index}};
}

Outcome run_game(const Options& o, RunReport& report) {
  Command cmd(o, report);
  const ProcessMatrix w = cmd.load_valid_process();
  const CausalGame game = ocb_game();
  const GameResult best = enumerate_strategies(w, game, ocb_strategy_family());
  json& res = report.results();
  res["game"] = game.name;
  res["classical_bound"] = game.classical_bound;
  res["family_best"] = game_json(best);
  double overall = best.value;
  if (o.random_strategies > 0) {
    double best_random = 0.0;
    for (std::size_t k = 0; k < o.random_strategies; ++k) {
      const GameResult g = evaluate_game(w, game, random_cq_strategy(w.layout(), o.seed + k));
      best_random = std::max(best_random, g.value);
    }
    res["random_strategies"] = {
        {"count", o.random_strategies}, {"seed", o.seed}, {"best_value", best_random}};
    overall = std::max(overall, best_random);
  }
  res["exceeds_bound"] = overall > game.classical_bound + 1e-9;
  return {};
}

bool is_input_error(const std::exception& e) {
  return dynamic_cast<const io::DecodeError*>(&e) || dynamic_cast<const io::IoError*>(&e) ||
         dynamic_cast<const ShapeError*>(&e) || dynamic_cast<const ContractViolation*>(&e) ||
         dynamic_cast<const std::invalid_argument*>(&e) ||
         dynamic_cast<const std::out_of_range*>(&e);
}

void add_input(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "Process document (default: stdin)");
}
void add_output(CLI::App* sub, Options& o) {
  sub->add_option("--output", o.output, "Write the produced document here");
}
void add_basis(CLI::App* sub, Options& o) {
  sub->add_option("--basis", o.basis, "'z' or a JSON file of unitaries keyed A1, A2, B1, B2");
}
void add_dims(CLI::App* sub, Options& o) {
  sub->add_option("--dims", o.dims, "dA1 dA2 dB1 dB2")->expected(4)->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"procmat: bipartite process matrices, dephasing and causal separability"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--tol", o.tol, "Tolerance for validity and verification checks")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", o.json, "Machine-readable report");
  app.fallthrough();

  using Runner = Outcome (*)(const Options&, RunReport&);
  std::vector<std::pair<CLI::App*, Runner>> commands;

  auto* fixture = app.add_subcommand("fixture", "Emit a built-in process");
  fixture->add_option("name", o.fixture, "ocb | w0 | identity | channel")
      ->required()
      ->check(CLI::IsMember({"ocb", "w0", "identity", "channel"}));
  fixture->add_option("--p", o.p, "Mixing weight for w0");
  add_dims(fixture, o);
  add_output(fixture, o);
  commands.emplace_back(fixture, run_fixture);

  auto* gen = app.add_subcommand("gen-random", "Seeded random valid process");
  gen->add_option("--seed", o.seed, "Generator seed")->required();
  gen->add_option("--strength", o.strength, "Distance fraction towards the PSD boundary, in (0,1)");
  add_dims(gen, o);
  add_output(gen, o);
  commands.emplace_back(gen, run_gen_random);

  auto* validate = app.add_subcommand("validate", "Check positivity, trace and term mask");
  add_input(validate, o);
  validate->add_flag("--hs", o.hs, "Include the Hilbert-Schmidt coefficient table");
  validate->add_option("--variant", o.variant, "general | a-before-b | b-before-a")
      ->check(CLI::IsMember({"general", "a-before-b", "b-before-a"}));
  commands.emplace_back(validate, run_validate);

  auto* born = app.add_subcommand("born", "Probability of one measure-and-prepare pair");
  add_input(born, o);
  born->add_option("--alice-in", o.alice_in, "State Alice projects her input on (z0, x1, e2, ...)");
  born->add_option("--alice-out", o.alice_out, "State Alice prepares");
  born->add_option("--bob-in", o.bob_in, "State Bob projects his input on");
  born->add_option("--bob-out", o.bob_out, "State Bob prepares");
  commands.emplace_back(born, run_born);

  auto* dephase = app.add_subcommand("dephase", "Lueders dephasing of both inputs");
  add_input(dephase, o);
  add_output(dephase, o);
  add_basis(dephase, o);
  dephase->add_option("--seed", o.seed, "Seed for the indistinguishability sample");
  dephase->add_option("--samples", o.samples, "Random instrument pairs to compare");
  commands.emplace_back(dephase, run_dephase);

  auto* classical = app.add_subcommand("effective-classical", "Diagonal in all four bases");
  add_input(classical, o);
  add_output(classical, o);
  add_basis(classical, o);
  commands.emplace_back(classical, run_effective_classical);

  auto* separate = app.add_subcommand("separate", "Constructive causal decomposition");
  add_input(separate, o);
  add_output(separate, o);
  add_basis(separate, o);
  commands.emplace_back(separate, run_separate);

  auto* check = app.add_subcommand("check-sep", "Causal separability check");
  add_input(check, o);
  add_output(check, o);
  add_basis(check, o);
  check->add_option("--max-iter", o.max_iter, "Iteration cap for the projection solver");
  commands.emplace_back(check, run_check_sep);

  auto* game = app.add_subcommand("game", "OCB game over the built-in strategy family");
  add_input(game, o);
  game->add_option("--seed", o.seed, "Seed for random strategies");
  game->add_option("--random-strategies", o.random_strategies, "Extra random CQ strategies");
  commands.emplace_back(game, run_game);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : static_cast<int>(ExitCode::invalid_input);
  }

  std::ostringstream echo;
  echo << "procmat";
  for (int i = 1; i < argc; ++i) echo << " " << argv[i];
  RunReport report(echo.str());

  Outcome outcome;
  for (const auto& [sub, run] : commands) {
    if (!sub->parsed()) continue;
    try {
      outcome = run(o, report);
    } catch (const std::exception& e) {
      report.set_exit(is_input_error(e) ? ExitCode::invalid_input : ExitCode::check_failed,
                      e.what());
    }
  }

  const bool doc_to_stdout = outcome.document && o.output.empty();
  if (outcome.document && !o.output.empty()) {
    try {
      io::write_file_atomic(o.output, *outcome.document);
    } catch (const io::IoError& e) {
      report.set_exit(ExitCode::invalid_input, e.what());
    }
  }
  if (doc_to_stdout) std::cout << *outcome.document << std::flush;
  (doc_to_stdout ? std::cerr : std::cout) << report.render(o.json);
  return static_cast<int>(report.exit_code());
}
