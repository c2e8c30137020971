// Copyright 2026 The lmekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// lmetool: command-line frontend for the lme library.
//
// Every command reads JSON files and writes a JSON report to stdout or
// --out. Exit codes: 0 success, 1 bad input, 2 violated internal invariant.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "lme/certifier.hpp"
#include "lme/errors.hpp"
#include "lme/json_io.hpp"
#include "lme/phasecompiler.hpp"
#include "lme/protosim.hpp"
#include "lme/stabgen.hpp"
#include "lme/tracedecomp.hpp"

namespace {

using lme::json_io::json;

struct CommonFlags {
  std::string out;
  std::uint64_t seed = 0;
  int restarts = 64;
  double tol = 1e-9;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--out", f.out, "Write the report here instead of stdout");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--restarts", f.restarts, "Optimizer restarts");
  cmd->add_option("--tol", f.tol, "Certification tolerance");
}

void emit(const json& j, const std::string& out) {
  const std::string text = lme::json_io::dump(j);
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw lme::InputError("cannot write " + out);
  f << text;
}

// A phase table from either a table file or a flat state file.
lme::PhaseTable load_table(const std::string& path) {
  const json j = lme::json_io::read_file(path);
  if (j.is_object() && j.contains("alpha")) return lme::json_io::table_from_json(j);
  return lme::extract_phase_table(lme::json_io::state_from_json(j));
}

lme::StateVector load_state(const std::string& path) {
  return lme::json_io::state_from_json(lme::json_io::read_file(path));
}

json cmd_analyze(const std::string& path) {
  const lme::StateVector s = load_state(path);
  const lme::TraceDecomposition t = lme::trace_decompose(s);
  const int n = s.num_qubits();
  json spectra = json::array(), degenerate = json::array(), site_entropy = json::array();
  for (int q = 0; q < n; ++q) {
    spectra.push_back({t.spectra[static_cast<std::size_t>(q)][0], t.spectra[static_cast<std::size_t>(q)][1]});
    degenerate.push_back(static_cast<bool>(t.degenerate[static_cast<std::size_t>(q)]));
  }
  // Bipartitions A | complement with qubit 1 in A, so each cut appears once.
  json cuts = json::array();
  if (n >= 2 && n <= 12) {
    const std::size_t top = lme::qubit_bit(n, 0);
    for (std::size_t m = top; m < (std::size_t{1} << n) - 1; ++m) {
      if (!(m & top)) continue;
      const std::vector<int> a = lme::mask_qubits(n, m);
      json names = json::array();
      for (int q : a) names.push_back(q + 1);
      cuts.push_back(json{{"subset", std::move(names)}, {"entropy", lme::cut_entropy(s, a)}});
    }
  }
  for (int q = 0; q < n && n >= 2; ++q) {
    const int site[] = {q};
    site_entropy.push_back(lme::cut_entropy(s, site));
  }
  return json{{"command", "analyze"},
              {"n", n},
              {"spectra", std::move(spectra)},
              {"degenerate", std::move(degenerate)},
              {"site_entropies", std::move(site_entropy)},
              {"cut_entropies", std::move(cuts)}};
}

json cmd_certify(const std::string& path, const CommonFlags& f) {
  lme::CertifierConfig cfg;
  cfg.seed = f.seed;
  cfg.restarts = f.restarts;
  cfg.cert_tol = f.tol;
  cfg.validate();
  json j = lme::json_io::to_json(lme::certify_lme(load_state(path), cfg));
  j["config"] = json{{"seed", cfg.seed},
                     {"restarts", cfg.restarts},
                     {"tol", cfg.cert_tol},
                     {"max_iters", cfg.max_iters},
                     {"torus_grid", cfg.torus_grid}};
  return j;
}

json cmd_compile(const std::string& path) {
  const lme::PhaseTable t = load_table(path);
  const lme::PhaseCircuit c = lme::moebius_decompose(t);
  return json{{"command", "compile"},
              {"circuit", lme::json_io::to_json(c)},
              {"degree", lme::interaction_degree(c)},
              {"round_trip_error", lme::max_phase_deviation(lme::evaluate_circuit(c), t)}};
}

json cmd_stabilizers(const std::string& path) {
  const lme::PhaseTable t = load_table(path);
  const lme::StabilizerSet s = lme::build_stabilizers(t);
  json per_site = json::array();
  for (int k = 0; k < s.num_qubits(); ++k) {
    const lme::Factorization fz = lme::factorization_check(s, k);
    json entry{{"qubit", k + 1}, {"beta", s.beta[static_cast<std::size_t>(k)]}, {"factorizes", fz.factorizes}};
    if (fz.factorizes) {
      json f_tables = json::array();
      for (int l = 0; l < s.num_qubits(); ++l) {
        if (l == k) continue;
        f_tables.push_back(json{{"qubit", l + 1}, {"f", {0.0, fz.f1[static_cast<std::size_t>(l)]}}});
      }
      entry["offset"] = fz.offset;
      entry["f_tables"] = std::move(f_tables);
    }
    entry["tensor_product"] = fz.tensor_product;
    entry["local_ops"] = fz.local_ops ? lme::json_io::to_json(lme::LocalUnitarySet(*fz.local_ops)) : json(nullptr);
    per_site.push_back(std::move(entry));
  }
  const lme::HamiltonianSpectrum h = lme::analyze_parent_hamiltonian(s);
  const lme::StateVector psi = lme::family::flat_phase(t);
  const lme::CMatrix p = lme::stabilizer_group_projector(s);
  const lme::CMatrix target = psi.amplitudes() * psi.amplitudes().adjoint();
  return json{{"command", "stabilizers"},
              {"n", s.num_qubits()},
              {"stabilizers", std::move(per_site)},
              {"projector_error", (p - target).cwiseAbs().maxCoeff()},
              {"hamiltonian_gap", h.gap},
              {"ground_overlap", h.ground_overlap}};
}

json cmd_entangle(const std::string& path, const std::string& spec_name) {
  const lme::StateVector s = load_state(path);
  const int n = s.num_qubits();
  lme::ControlledGateSpec spec = spec_name == "identity" ? lme::ControlledGateSpec::identity(n)
                                                         : lme::ControlledGateSpec::pi_phase(n);
  const lme::MaximalityReport r = lme::verify_maximal(lme::entangle_ancillas(s, spec));
  return json{{"command", "entangle"},
              {"n", n},
              {"spec", spec_name},
              {"entropy_bits", r.entropy_bits},
              {"mixedness_deviation", r.mixedness_deviation},
              {"maximal", r.maximal}};
}

json cmd_encode(const std::string& path) {
  const lme::StateVector base = lme::family::flat_phase(load_table(path));
  const int n = base.num_qubits();
  if (n > 6) throw lme::InputError("encode: the exhaustive leak scan is limited to 6 qubits");
  const lme::EncodingEnsemble e = lme::build_ensemble(base);
  json leaks = json::array();
  double worst = 0.0;
  for (std::size_t m = 1; m + 1 < (std::size_t{1} << n); ++m) {
    const std::vector<int> a = lme::mask_qubits(n, m);
    const double leak = lme::local_leak_check(e, a);
    worst = std::max(worst, leak);
    json names = json::array();
    for (int q : a) names.push_back(q + 1);
    leaks.push_back(json{{"subset", std::move(names)}, {"leak", leak}});
  }
  return json{{"command", "encode"},
              {"n", n},
              {"states", e.states.size()},
              {"gram_max_offdiagonal", lme::gram_max_offdiagonal(e)},
              {"max_leak", worst},
              {"leaks", std::move(leaks)}};
}

json cmd_lockdemo(const CommonFlags& f, int max_iters) {
  lme::LockDemoConfig cfg;
  cfg.seed = f.seed;
  cfg.restarts = f.restarts;
  cfg.max_iters = max_iters;
  const lme::LockDemoReport r = lme::third_party_lock_demo(cfg);
  return json{{"command", "lockdemo"},
              {"max_entropy", r.max_entropy},
              {"gap_from_3", r.gap_from_3},
              {"baseline_entropy", r.baseline_entropy},
              {"best_params", r.best_params},
              {"seed", r.seed},
              {"restarts", r.restarts},
              {"max_iters", cfg.max_iters},
              {"note", "numerical bound from multi-start optimization, not a proof"}};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

struct Edge {
  int a;
  int b;
  double w;
};

std::vector<Edge> parse_edges(const std::string& text) {
  std::vector<Edge> edges;
  for (const std::string& item : split(text, ',')) {
    Edge e{0, 0, 1.0};
    std::string pair = item;
    if (const auto colon = item.find(':'); colon != std::string::npos) {
      pair = item.substr(0, colon);
      try {
        e.w = std::stod(item.substr(colon + 1));
      } catch (const std::exception&) {
        throw lme::InputError("--edges: bad weight in '" + item + "'");
      }
    }
    const auto dash = pair.find('-');
    try {
      if (dash == std::string::npos) throw lme::InputError("");
      e.a = std::stoi(pair.substr(0, dash));
      e.b = std::stoi(pair.substr(dash + 1));
    } catch (const std::exception&) {
      throw lme::InputError("--edges: expected 'i-j' or 'i-j:w', got '" + item + "'");
    }
    if (e.a < 1 || e.b < 1 || e.a == e.b) throw lme::InputError("--edges: bad vertex pair '" + item + "'");
    edges.push_back(e);
  }
  return edges;
}

json cmd_make(const std::string& family, int n, const std::string& edges_text, bool as_table, std::uint64_t seed) {
  const std::vector<Edge> edges = parse_edges(edges_text);
  if (n == 0) {
    for (const Edge& e : edges) n = std::max({n, e.a, e.b});
  }
  if (n < 1 || n > lme::kMaxQubits) throw lme::InputError("make: qubit count missing or out of range");
  for (const Edge& e : edges) {
    if (e.a > n || e.b > n) throw lme::InputError("--edges: vertex beyond n");
  }
  if (family == "graph") {
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
    for (const Edge& e : edges) adj(e.a - 1, e.b - 1) = adj(e.b - 1, e.a - 1) = 1;
    return as_table ? lme::json_io::to_json(lme::family::graph_table(adj))
                    : lme::json_io::to_json(lme::family::graph(adj));
  }
  if (family == "weighted_graph") {
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : edges) gamma(e.a - 1, e.b - 1) = gamma(e.b - 1, e.a - 1) = e.w;
    return as_table ? lme::json_io::to_json(lme::family::weighted_graph_table(gamma))
                    : lme::json_io::to_json(lme::family::weighted_graph(gamma));
  }
  if (!edges.empty()) throw lme::InputError("make: --edges only applies to graph families");
  if (as_table) {
    if (family != "plus") throw lme::InputError("make: --table needs a flat family (plus, graph, weighted_graph)");
    return lme::json_io::to_json(lme::PhaseTable::zeros(n));
  }
  if (family == "ghz") return lme::json_io::to_json(lme::family::ghz(n));
  if (family == "w") return lme::json_io::to_json(lme::family::w(n));
  if (family == "plus") return lme::json_io::to_json(lme::family::plus(n));
  if (family == "random") return lme::json_io::to_json(lme::family::random(n, seed));
  throw lme::InputError("make: unknown family '" + family + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyze and certify locally maximally entanglable states"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string input;
  std::string spec = "pi";
  int lock_iters = 300;
  std::string family;
  int make_n = 0;
  std::string edges;
  bool as_table = false;

  auto* analyze = app.add_subcommand("analyze", "Trace decomposition spectra and cut entropies of a state");
  auto* certify = app.add_subcommand("certify", "Decide whether a state is LME");
  auto* compile = app.add_subcommand("compile", "Phase-gate circuit for a phase table or flat state");
  auto* stabilizers = app.add_subcommand("stabilizers", "Generalized stabilizers of a phase table or flat state");
  auto* entangle = app.add_subcommand("entangle", "Entangle each qubit with an ancilla and measure the cut");
  auto* encode = app.add_subcommand("encode", "Bit-encoding ensemble: distinguishability and local leaks");
  auto* lockdemo = app.add_subcommand("lockdemo", "Third-party lock scenario on the W state");
  auto* make = app.add_subcommand("make", "Write a named state or phase table");

  for (auto* cmd : {analyze, certify, compile, stabilizers, entangle, encode}) {
    cmd->add_option("input", input, "Input JSON file")->required();
  }
  for (auto* cmd : {analyze, certify, compile, stabilizers, entangle, encode, lockdemo, make}) add_common(cmd, flags);
  entangle->add_option("--spec", spec, "Controlled gates: pi (U1 = Z) or identity")
      ->check(CLI::IsMember({"pi", "identity"}));
  lockdemo->add_option("--max-iters", lock_iters, "Iterations per restart");
  make->add_option("family", family, "ghz, w, plus, random, graph or weighted_graph")->required();
  make->add_option("n", make_n, "Number of qubits (inferred from --edges when omitted)");
  make->add_option("--edges", edges, "Edges such as \"1-2,2-3\"; weighted: \"1-2:0.25\"");
  make->add_flag("--table", as_table, "Emit the phase table instead of the state");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    json report;
    if (*analyze) report = cmd_analyze(input);
    else if (*certify) report = cmd_certify(input, flags);
    else if (*compile) report = cmd_compile(input);
    else if (*stabilizers) report = cmd_stabilizers(input);
    else if (*entangle) report = cmd_entangle(input, spec);
    else if (*encode) report = cmd_encode(input);
    else if (*lockdemo) report = cmd_lockdemo(flags, lock_iters);
    else report = cmd_make(family, make_n, edges, as_table, flags.seed);
    emit(report, flags.out);
  } catch (const lme::InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
