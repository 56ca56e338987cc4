// Command-line front end: build polytopes, convert representations, test
// membership, evaluate inequalities, run the quantum simulator and the
// verification claims.
//
// Input labels on the command line (pd:IX;IY, --k, --iy) are 1-based, as in
// the usual scenario notation; file formats use the library's 0-based
// coordinates throughout.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lfpoly/lfpoly.hpp"

namespace {

using namespace lfpoly;

constexpr int exit_ok = 0;
constexpr int exit_other = 1;
constexpr int exit_parse = 2;
constexpr int exit_spec = 3;
constexpr int exit_scale = 4;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string tok;
  std::istringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw format_error("empty entry in list '" + text + "'");
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw format_error("bad integer '" + tok + "'");
    } catch (const std::logic_error&) {
      throw format_error("bad integer '" + tok + "' in '" + text + "'");
    }
  }
  return out;
}

struct ScenarioArgs {
  std::string spec;            // MA,NA,MB,NB
  std::string alice_outcomes;  // heterogeneous escape hatch
  std::string bob_outcomes;

  Scenario build() const {
    if (!spec.empty()) {
      auto v = parse_int_list(spec);
      if (v.size() != 4) throw format_error("--scenario expects MA,NA,MB,NB");
      return Scenario::homogeneous(v[0], v[1], v[2], v[3]);
    }
    if (alice_outcomes.empty() || bob_outcomes.empty())
      throw format_error("need --scenario or both --alice-outcomes and --bob-outcomes");
    Scenario s;
    s.alice_outcomes = parse_int_list(alice_outcomes);
    s.bob_outcomes = parse_int_list(bob_outcomes);
    s.validate();
    return s;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--scenario", spec, "homogeneous scenario MA,NA,MB,NB");
    cmd->add_option("--alice-outcomes", alice_outcomes, "per-input Alice outcome counts");
    cmd->add_option("--bob-outcomes", bob_outcomes, "per-input Bob outcome counts");
  }
};

// Family spec: ld | ns | pd:IX;IY | lf | sw:R  (input labels 1-based).
VPolytope build_family(const std::string& family, const Scenario& s) {
  if (family == "ld") return ld_vertices(s);
  if (family == "ns") return ns_vertices(s);
  if (family == "lf") return lf_vertices(s);
  if (family.rfind("pd:", 0) == 0) {
    std::string rest = family.substr(3);
    auto semi = rest.find(';');
    if (semi == std::string::npos) throw format_error("pd family needs pd:IX;IY");
    PDSpec spec;
    spec.scenario = s;
    auto to_zero_based = [](const std::vector<int>& labels) {
      std::vector<int> out;
      for (int v : labels) out.push_back(v - 1);
      return out;
    };
    std::string ix = rest.substr(0, semi), iy = rest.substr(semi + 1);
    if (!ix.empty() && ix != "-") spec.det_alice = to_zero_based(parse_int_list(ix));
    if (!iy.empty() && iy != "-") spec.det_bob = to_zero_based(parse_int_list(iy));
    spec.validate();
    return pd_vertices(spec);
  }
  if (family.rfind("sw:", 0) == 0) {
    int rounds = lfpoly::detail::parse_int(family.substr(3));
    if (rounds < 1) throw format_error("sw family needs a positive round count");
    if (s.alice_inputs() != rounds + 1)
      throw format_error("sw:" + std::to_string(rounds) + " needs " +
                         std::to_string(rounds + 1) + " Alice inputs");
    for (int i = 1; i < rounds; ++i)
      if (s.alice_outcomes[i] != s.alice_outcomes[0])
        throw format_error("sw family: friend alphabet must be uniform over rounds");
    return sw_vertices(rounds, s.alice_outcomes[0],
                       s.alice_outcomes[static_cast<std::size_t>(rounds)], s.bob_outcomes);
  }
  throw format_error("unknown family '" + family + "'");
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw format_error("cannot open output file '" + path + "'");
  out << content;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw format_error("cannot open input file '" + path + "'");
  return in;
}

std::string vrep_string(const VPolytope& v) {
  std::ostringstream ss;
  write_vrep(ss, v);
  return ss.str();
}

std::string hrep_string(const HPolytope& h) {
  std::ostringstream ss;
  write_hrep(ss, h);
  return ss.str();
}

void print_summary_v(const VPolytope& v) { std::cout << "vertices: " << v.vertices.size() << "\n"; }

void print_summary_h(const HPolytope& h, const VPolytope* v) {
  std::cout << "inequalities: " << h.inequalities.size()
            << " equalities: " << h.equalities.size() << "\n";
  if (v && !v->vertices.empty() && !h.inequalities.empty()) {
    bool first = true;
    Rational lo, hi;
    for (const auto& row : h.inequalities)
      for (const auto& vert : v->vertices) {
        Rational val = evaluate_row(row, vert);
        if (first || val < lo) lo = val;
        if (first || val > hi) hi = val;
        first = false;
      }
    std::cout << "inequality value range over vertices: [" << format_rational(lo) << ", "
              << format_rational(hi) << "]\n";
  }
}

int run_verify_claim(const VerificationReport& rep, const std::string& witness_dir) {
  std::string path = (witness_dir.empty() ? std::string(".") : witness_dir) + "/claim_" +
                     rep.claim_id + ".txt";
  std::ostringstream content;
  content << "claim: " << rep.claim_id << "\n";
  content << "parameters: " << rep.parameters << "\n";
  content << "outcome: " << (rep.pass ? "pass" : "fail") << "\n";
  for (const auto& w : rep.witness) content << w << "\n";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw format_error("cannot open witness file '" + path + "'");
  out << content.str();
  rep.print(std::cout);
  std::cout << rep.summary_line(path) << "\n";
  return rep.pass ? exit_ok : exit_other;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"exact Bell / Wigner's-friend correlation polytope toolkit"};
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "parallelism hint (the engine is deterministic)");

  // vertices ----------------------------------------------------------------
  auto* vertices_cmd = app.add_subcommand("vertices", "enumerate a polytope family's vertices");
  ScenarioArgs vertices_scn;
  vertices_scn.attach(vertices_cmd);
  std::string vertices_family = "ld", vertices_out;
  bool vertices_summary = false;
  vertices_cmd->add_option("--family", vertices_family, "ld|ns|pd:IX;IY|lf|sw:R");
  vertices_cmd->add_option("--out", vertices_out, "output V-representation file");
  vertices_cmd->add_flag("--summary", vertices_summary, "print counts");

  // facets ------------------------------------------------------------------
  auto* facets_cmd = app.add_subcommand("facets", "facet enumeration");
  ScenarioArgs facets_scn;
  facets_scn.attach(facets_cmd);
  std::string facets_family = "ld", facets_in, facets_out;
  bool facets_summary = false;
  facets_cmd->add_option("--family", facets_family, "family to build when no --in is given");
  facets_cmd->add_option("--in", facets_in, "input V-representation file");
  facets_cmd->add_option("--out", facets_out, "output H-representation file");
  facets_cmd->add_flag("--summary", facets_summary, "print counts and value range");

  // member ------------------------------------------------------------------
  auto* member_cmd = app.add_subcommand("member", "membership test with exact certificate");
  ScenarioArgs member_scn;
  member_scn.attach(member_cmd);
  std::string member_family = "ld", member_in, member_behaviour, member_out;
  member_cmd->add_option("--family", member_family, "family to test against");
  member_cmd->add_option("--in", member_in, "V-representation to test against");
  member_cmd->add_option("--behaviour", member_behaviour, "behaviour file")->required();
  member_cmd->add_option("--out", member_out, "certificate output file");

  // eval --------------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("eval", "evaluate inequality rows on a behaviour");
  std::string eval_behaviour, eval_hrep;
  bool eval_ch = false;
  int eval_row = -1;
  eval_cmd->add_option("--behaviour", eval_behaviour, "behaviour file")->required();
  eval_cmd->add_flag("--ch", eval_ch, "evaluate the CH rows of the behaviour's scenario");
  eval_cmd->add_option("--hrep", eval_hrep, "evaluate rows of this H-representation");
  eval_cmd->add_option("--row", eval_row, "restrict to one inequality row (0-based)");

  // quantum -----------------------------------------------------------------
  auto* quantum_cmd = app.add_subcommand("quantum", "Born-rule behaviour generation");
  std::string quantum_mode, quantum_setup, quantum_out;
  quantum_cmd->add_option("mode", quantum_mode, "'ch-demo' for the built-in violation demo");
  quantum_cmd->add_option("--setup", quantum_setup, "quantum setup file");
  quantum_cmd->add_option("--out", quantum_out, "output behaviour file");

  // sequential ----------------------------------------------------------------
  auto* seq_cmd = app.add_subcommand("sequential", "simulate the sequential protocol");
  std::string seq_protocol, seq_out;
  bool seq_summary = false;
  seq_cmd->add_option("--protocol", seq_protocol, "protocol file")->required();
  seq_cmd->add_option("--out", seq_out, "output behaviour file");
  seq_cmd->add_flag("--summary", seq_summary, "print scenario shape");

  // verify --------------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "run a verification claim");
  std::string verify_claim, verify_bob = "2,2", verify_iy, verify_witness_dir;
  ScenarioArgs verify_scn;
  int verify_r = 1, verify_k = 1, verify_m = 2;
  verify_cmd->add_option("claim", verify_claim,
                         "theorem5|woodhead|lf-gap|quantum-violation|all")
      ->required();
  verify_cmd->add_option("--R", verify_r, "rounds for theorem5");
  verify_cmd->add_option("--bob", verify_bob, "Bob outcome counts for theorem5");
  verify_scn.attach(verify_cmd);
  verify_cmd->add_option("--k", verify_k, "free Alice input for woodhead (1-based)");
  verify_cmd->add_option("--iy", verify_iy, "deterministic Bob inputs for woodhead (1-based)");
  verify_cmd->add_option("--M", verify_m, "settings per party for lf-gap");
  verify_cmd->add_option("--witness-dir", verify_witness_dir, "directory for witness files");

  // convert -------------------------------------------------------------------
  auto* convert_cmd = app.add_subcommand("convert", "convert between V- and H-representations");
  std::string convert_in, convert_out;
  convert_cmd->add_option("--in", convert_in, "input file")->required();
  convert_cmd->add_option("--out", convert_out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_parse;
  }

  if (vertices_cmd->parsed()) {
    VPolytope v = build_family(vertices_family, vertices_scn.build());
    write_output(vertices_out, vrep_string(v));
    if (vertices_summary) print_summary_v(v);
    return exit_ok;
  }

  if (facets_cmd->parsed()) {
    VPolytope v;
    if (!facets_in.empty()) {
      auto in = open_input(facets_in);
      v = read_vrep(in);
    } else {
      v = build_family(facets_family, facets_scn.build());
    }
    HPolytope h = facet_enum(v);
    write_output(facets_out, hrep_string(h));
    if (facets_summary) {
      print_summary_v(v);
      print_summary_h(h, &v);
    }
    return exit_ok;
  }

  if (member_cmd->parsed()) {
    auto bin = open_input(member_behaviour);
    Behaviour p = read_behaviour(bin);
    VPolytope v;
    if (!member_in.empty()) {
      auto in = open_input(member_in);
      v = read_vrep(in);
    } else {
      v = build_family(member_family, p.scenario);
    }
    MembershipResult r = membership(p, v);
    std::ostringstream out;
    if (r.inside) {
      out << "inside\n";
      for (std::size_t i = 0; i < r.weights.size(); ++i)
        if (!is_zero(r.weights[i]))
          out << "weight " << i << " " << format_rational(r.weights[i]) << "\n";
    } else {
      out << "outside\n";
      out << "separator " << format_rational(r.separator.offset);
      for (const auto& c : r.separator.coeffs) out << " " << format_rational(c);
      out << "\n";
    }
    write_output(member_out, out.str());
    return exit_ok;
  }

  if (eval_cmd->parsed()) {
    auto bin = open_input(eval_behaviour);
    Behaviour p = read_behaviour(bin);
    std::vector<HRow> rows;
    if (eval_ch) {
      rows = ch_inequalities(p.scenario);
    } else if (!eval_hrep.empty()) {
      auto in = open_input(eval_hrep);
      rows = read_hrep(in).inequalities;
    } else {
      throw format_error("eval needs --ch or --hrep");
    }
    if (eval_row >= 0) {
      if (eval_row >= static_cast<int>(rows.size()))
        throw format_error("--row out of range");
      rows = {rows[static_cast<std::size_t>(eval_row)]};
    }
    Rational best;
    bool first = true;
    std::cout.precision(12);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Rational val = evaluate_inequality(rows[i], p);
      std::cout << "row " << i << ": " << format_rational(val) << " (" << to_double(val)
                << ")\n";
      if (first || val > best) best = val;
      first = false;
    }
    if (rows.size() > 1) std::cout << "max: " << format_rational(best) << "\n";
    return exit_ok;
  }

  if (quantum_cmd->parsed()) {
    if (quantum_mode == "ch-demo") {
      VerificationReport rep = verify_quantum_violation();
      const double pi = std::acos(-1.0);
      StateVector phi_plus;
      phi_plus.dims = {2, 2};
      phi_plus.amps = {1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0)};
      QuantumBehaviour qb = born_behaviour(
          phi_plus, {polarization_projectors(0.0), polarization_projectors(pi / 4)},
          {polarization_projectors(pi / 8), polarization_projectors(-pi / 8)});
      double value =
          evaluate_inequality(ch_base_row(Scenario::homogeneous(2, 2, 2, 2)), qb.raw);
      std::cout.precision(16);
      std::cout << "CH value = " << value << "  [(sqrt(2)-1)/2 = " << ch_quantum_value
                << "]\n";
      std::cout << (rep.pass ? "violation certified outside the local polytope\n"
                             : "violation check failed\n");
      return rep.pass ? exit_ok : exit_other;
    }
    if (quantum_mode.empty() && !quantum_setup.empty()) {
      auto in = open_input(quantum_setup);
      QuantumSetup q = read_quantum_setup(in);
      QuantumBehaviour qb = born_behaviour(q.state, q.alice, q.bob);
      std::ostringstream out;
      write_behaviour(out, qb.behaviour);
      write_output(quantum_out, out.str());
      return exit_ok;
    }
    throw format_error("quantum needs 'ch-demo' or --setup");
  }

  if (seq_cmd->parsed()) {
    auto in = open_input(seq_protocol);
    SequentialProtocol proto = read_protocol(in);
    QuantumBehaviour qb = sequential_behaviour(proto);
    std::ostringstream out;
    write_behaviour(out, qb.behaviour);
    write_output(seq_out, out.str());
    if (seq_summary) {
      const Scenario& s = qb.behaviour.scenario;
      std::cout << "effective scenario: " << s.alice_inputs() << " Alice inputs, "
                << s.bob_inputs() << " Bob inputs, dimension " << s.dimension() << "\n";
    }
    return exit_ok;
  }

  if (verify_cmd->parsed()) {
    auto run_woodhead = [&]() {
      Scenario s = verify_scn.spec.empty() && verify_scn.alice_outcomes.empty()
                       ? Scenario::homogeneous(2, 2, 2, 2)
                       : verify_scn.build();
      std::vector<int> iy;
      if (!verify_iy.empty() && verify_iy != "-")
        for (int v : parse_int_list(verify_iy)) iy.push_back(v - 1);
      return verify_woodhead(s, verify_k - 1, iy);
    };
    if (verify_claim == "theorem5")
      return run_verify_claim(verify_theorem5(verify_r, parse_int_list(verify_bob)),
                              verify_witness_dir);
    if (verify_claim == "woodhead") return run_verify_claim(run_woodhead(), verify_witness_dir);
    if (verify_claim == "lf-gap")
      return run_verify_claim(verify_lf_gap(verify_m), verify_witness_dir);
    if (verify_claim == "quantum-violation")
      return run_verify_claim(verify_quantum_violation(), verify_witness_dir);
    if (verify_claim == "all") {
      int worst = exit_ok;
      for (auto rep : {verify_quantum_violation(), verify_theorem5(1, {2, 2}),
                       verify_woodhead(Scenario::homogeneous(2, 2, 2, 2), 0, {}),
                       verify_lf_gap(2)})
        worst = std::max(worst, run_verify_claim(rep, verify_witness_dir));
      return worst;
    }
    throw format_error("unknown claim '" + verify_claim + "'");
  }

  if (convert_cmd->parsed()) {
    auto in = open_input(convert_in);
    std::string first_line;
    {
      std::istream& ref = in;
      std::streampos pos = ref.tellg();
      first_line = lfpoly::detail::next_data_line(ref);
      ref.seekg(pos);
    }
    if (first_line == "V-representation") {
      VPolytope v = read_vrep(in);
      write_output(convert_out, hrep_string(facet_enum(v)));
    } else if (first_line == "H-representation") {
      HPolytope h = read_hrep(in);
      write_output(convert_out, vrep_string(vertex_enum(h)));
    } else {
      throw format_error("unrecognized representation header '" + first_line + "'");
    }
    return exit_ok;
  }

  return exit_parse;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const scale_error& e) {
    std::cerr << "scale guard: " << e.what() << "\n";
    return exit_scale;
  } catch (const format_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_spec;
  } catch (const bounds_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_spec;
  } catch (const dimension_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_spec;
  } catch (const unbounded_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_spec;
  } catch (const empty_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_spec;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_other;
  }
}
