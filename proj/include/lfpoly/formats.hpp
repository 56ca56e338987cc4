#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lfpoly/common.hpp"
#include "lfpoly/polytope.hpp"
#include "lfpoly/quantum.hpp"
#include "lfpoly/scenario.hpp"

namespace lfpoly {

// Text formats. All rationals are written exactly as num or num/den; the
// writers are deterministic so identical inputs produce byte-identical
// files.

namespace detail {

inline std::string next_data_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    return line.substr(start, end - start + 1);
  }
  throw format_error("unexpected end of input");
}

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

inline int parse_int(const std::string& tok) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw format_error("bad integer '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    throw format_error("bad integer '" + tok + "'");
  }
}

inline std::size_t parse_size(const std::string& tok) {
  int v = parse_int(tok);
  if (v < 0) throw format_error("negative count '" + tok + "'");
  return static_cast<std::size_t>(v);
}

inline double parse_double(const std::string& tok) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw format_error("bad number '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    throw format_error("bad number '" + tok + "'");
  }
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

// --- behaviour ------------------------------------------------------------
//
//   behaviour
//   MA MB | a-counts | b-counts
//   x y a b num/den          (one line per coordinate, any order)

inline void write_behaviour(std::ostream& out, const Behaviour& p) {
  const Scenario& s = p.scenario;
  out << "behaviour\n";
  out << s.alice_inputs() << " " << s.bob_inputs() << " |";
  for (int n : s.alice_outcomes) out << " " << n;
  out << " |";
  for (int n : s.bob_outcomes) out << " " << n;
  out << "\n";
  for (int x = 0; x < s.alice_inputs(); ++x)
    for (int y = 0; y < s.bob_inputs(); ++y)
      for (int a = 0; a < s.alice_outcomes[x]; ++a)
        for (int b = 0; b < s.bob_outcomes[y]; ++b)
          out << x << " " << y << " " << a << " " << b << " "
              << format_rational(p.at(x, y, a, b)) << "\n";
}

inline Behaviour read_behaviour(std::istream& in) {
  if (detail::next_data_line(in) != "behaviour")
    throw format_error("behaviour file must start with 'behaviour'");
  auto toks = detail::split_tokens(detail::next_data_line(in));
  std::size_t bar1 = 0, bar2 = 0;
  for (std::size_t i = 0; i < toks.size(); ++i)
    if (toks[i] == "|") {
      if (!bar1)
        bar1 = i;
      else
        bar2 = i;
    }
  if (bar1 != 2 || bar2 == 0) throw format_error("behaviour: malformed scenario line");
  Scenario s;
  int ma = detail::parse_int(toks[0]);
  int mb = detail::parse_int(toks[1]);
  for (std::size_t i = bar1 + 1; i < bar2; ++i) s.alice_outcomes.push_back(detail::parse_int(toks[i]));
  for (std::size_t i = bar2 + 1; i < toks.size(); ++i) s.bob_outcomes.push_back(detail::parse_int(toks[i]));
  if (ma != s.alice_inputs() || mb != s.bob_inputs())
    throw format_error("behaviour: input counts disagree with outcome lists");
  s.validate();
  Behaviour p;
  p.scenario = s;
  p.coords.assign(static_cast<std::size_t>(s.dimension()), Rational(0));
  std::vector<bool> seen(p.coords.size(), false);
  for (int i = 0; i < s.dimension(); ++i) {
    auto t = detail::split_tokens(detail::next_data_line(in));
    if (t.size() != 5) throw format_error("behaviour: expected 'x y a b value'");
    int idx = s.coord_index(detail::parse_int(t[0]), detail::parse_int(t[1]), detail::parse_int(t[2]), detail::parse_int(t[3]));
    if (seen[static_cast<std::size_t>(idx)]) throw format_error("behaviour: duplicate coordinate");
    seen[static_cast<std::size_t>(idx)] = true;
    p.coords[static_cast<std::size_t>(idx)] = parse_rational(t[4]);
  }
  return p;
}

// --- V-representation ------------------------------------------------------
//
//   V-representation
//   begin
//   n dim+1 rational
//   1 coords...
//   end

inline void write_vrep(std::ostream& out, const VPolytope& v) {
  out << "V-representation\n";
  out << "begin\n";
  out << v.vertices.size() << " " << (v.dim + 1) << " rational\n";
  for (const auto& vert : v.vertices) {
    out << "1";
    for (const auto& c : vert) out << " " << format_rational(c);
    out << "\n";
  }
  out << "end\n";
}

// --- H-representation ------------------------------------------------------
//
//   H-representation
//   linearity k i1 .. ik      (optional; 1-based rows that are equalities)
//   begin
//   m dim+1 rational
//   offset coeffs...
//   end

inline void write_hrep(std::ostream& out, const HPolytope& h) {
  out << "H-representation\n";
  if (!h.equalities.empty()) {
    out << "linearity " << h.equalities.size();
    for (std::size_t i = 0; i < h.equalities.size(); ++i) out << " " << (i + 1);
    out << "\n";
  }
  out << "begin\n";
  out << (h.equalities.size() + h.inequalities.size()) << " " << (h.dim + 1) << " rational\n";
  auto emit = [&](const HRow& r) {
    out << format_rational(r.offset);
    for (const auto& c : r.coeffs) out << " " << format_rational(c);
    out << "\n";
  };
  for (const auto& r : h.equalities) emit(r);
  for (const auto& r : h.inequalities) emit(r);
  out << "end\n";
}

namespace detail {

struct RepHeader {
  std::size_t rows = 0;
  int dim = 0;
  std::vector<std::size_t> linearity;  // 0-based row indices
};

inline RepHeader read_rep_header(std::istream& in) {
  RepHeader h;
  std::string line = next_data_line(in);
  if (line.rfind("linearity", 0) == 0) {
    auto toks = split_tokens(line);
    if (toks.size() < 2) throw format_error("malformed linearity line");
    std::size_t k = parse_size(toks[1]);
    if (toks.size() != 2 + k) throw format_error("linearity count mismatch");
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t idx = parse_size(toks[2 + i]);
      if (idx == 0) throw format_error("linearity rows are 1-based");
      h.linearity.push_back(idx - 1);
    }
    line = next_data_line(in);
  }
  if (line != "begin") throw format_error("expected 'begin'");
  auto counts = split_tokens(next_data_line(in));
  if (counts.size() != 3 || counts[2] != "rational")
    throw format_error("expected 'rows dim+1 rational'");
  h.rows = parse_size(counts[0]);
  h.dim = parse_int(counts[1]) - 1;
  if (h.dim < 0) throw format_error("bad column count");
  return h;
}

}  // namespace detail

inline VPolytope read_vrep(std::istream& in) {
  if (detail::next_data_line(in) != "V-representation")
    throw format_error("expected 'V-representation'");
  auto hdr = detail::read_rep_header(in);
  if (!hdr.linearity.empty()) throw format_error("V-representation with lines is not supported");
  VPolytope v;
  v.dim = hdr.dim;
  for (std::size_t i = 0; i < hdr.rows; ++i) {
    auto toks = detail::split_tokens(detail::next_data_line(in));
    if (static_cast<int>(toks.size()) != hdr.dim + 1)
      throw format_error("V-representation: row of wrong length");
    if (parse_rational(toks[0]) != 1)
      throw format_error("V-representation: only bounded polytopes (leading 1) are supported");
    RVec vert;
    vert.reserve(static_cast<std::size_t>(hdr.dim));
    for (int c = 1; c <= hdr.dim; ++c) vert.push_back(parse_rational(toks[static_cast<std::size_t>(c)]));
    v.vertices.push_back(std::move(vert));
  }
  if (detail::next_data_line(in) != "end") throw format_error("expected 'end'");
  v.sort_dedup();
  return v;
}

inline HPolytope read_hrep(std::istream& in) {
  if (detail::next_data_line(in) != "H-representation")
    throw format_error("expected 'H-representation'");
  auto hdr = detail::read_rep_header(in);
  HPolytope h;
  h.dim = hdr.dim;
  std::vector<bool> is_eq(hdr.rows, false);
  for (auto idx : hdr.linearity) {
    if (idx >= hdr.rows) throw format_error("linearity index out of range");
    is_eq[idx] = true;
  }
  for (std::size_t i = 0; i < hdr.rows; ++i) {
    auto toks = detail::split_tokens(detail::next_data_line(in));
    if (static_cast<int>(toks.size()) != hdr.dim + 1)
      throw format_error("H-representation: row of wrong length");
    HRow r;
    r.offset = parse_rational(toks[0]);
    for (int c = 1; c <= hdr.dim; ++c) r.coeffs.push_back(parse_rational(toks[static_cast<std::size_t>(c)]));
    (is_eq[i] ? h.equalities : h.inequalities).push_back(std::move(r));
  }
  if (detail::next_data_line(in) != "end") throw format_error("expected 'end'");
  return h;
}

// --- quantum setup ----------------------------------------------------------
//
//   dims d1 d2
//   re im                     (d1*d2 amplitude lines)
//   alice: angles...          (qubit polarization), or
//   alice-matrix m            (m measurements; each "outcomes k" then k
//                              projectors given as dim rows of "re im" pairs)
//   bob: ... / bob-matrix ...

namespace detail {

inline std::vector<ProjectiveMeasurement> parse_angle_measurements(
    const std::vector<std::string>& toks) {
  std::vector<ProjectiveMeasurement> out;
  for (std::size_t i = 1; i < toks.size(); ++i)
    out.push_back(polarization_projectors(parse_double(toks[i])));
  if (out.empty()) throw format_error("measurement line with no angles");
  return out;
}

inline std::vector<ProjectiveMeasurement> parse_matrix_measurements(std::istream& in,
                                                                    const std::string& header,
                                                                    int dim) {
  auto toks = split_tokens(header);
  if (toks.size() != 2) throw format_error("expected '<party>-matrix <count>'");
  int count = detail::parse_int(toks[1]);
  std::vector<ProjectiveMeasurement> out;
  for (int m = 0; m < count; ++m) {
    auto o = split_tokens(next_data_line(in));
    if (o.size() != 2 || o[0] != "outcomes") throw format_error("expected 'outcomes k'");
    int k = parse_int(o[1]);
    ProjectiveMeasurement meas;
    for (int proj = 0; proj < k; ++proj) {
      CMatrix p(dim, dim);
      for (int r = 0; r < dim; ++r) {
        auto row = split_tokens(next_data_line(in));
        if (static_cast<int>(row.size()) != 2 * dim)
          throw format_error("projector row needs re/im pairs for each column");
        for (int c = 0; c < dim; ++c)
          p.at(r, c) = Complex(parse_double(row[static_cast<std::size_t>(2 * c)]),
                               parse_double(row[static_cast<std::size_t>(2 * c + 1)]));
      }
      meas.projectors.push_back(std::move(p));
    }
    meas.validate();
    out.push_back(std::move(meas));
  }
  return out;
}

inline StateVector parse_state(std::istream& in) {
  auto d = split_tokens(next_data_line(in));
  if (d.size() != 3 || d[0] != "dims") throw format_error("expected 'dims d1 d2'");
  StateVector st;
  st.dims = {parse_int(d[1]), parse_int(d[2])};
  for (int i = 0; i < st.dims[0] * st.dims[1]; ++i) {
    auto amp = split_tokens(next_data_line(in));
    if (amp.size() != 2) throw format_error("expected amplitude line 're im'");
    st.amps.emplace_back(parse_double(amp[0]), parse_double(amp[1]));
  }
  st.validate();
  return st;
}

}  // namespace detail

struct QuantumSetup {
  StateVector state;
  std::vector<ProjectiveMeasurement> alice;
  std::vector<ProjectiveMeasurement> bob;
};

inline QuantumSetup read_quantum_setup(std::istream& in) {
  QuantumSetup q;
  q.state = detail::parse_state(in);
  for (int party = 0; party < 2; ++party) {
    std::string line = detail::next_data_line(in);
    auto toks = detail::split_tokens(line);
    bool alice_line = toks[0] == "alice:" || toks[0] == "alice-matrix";
    bool bob_line = toks[0] == "bob:" || toks[0] == "bob-matrix";
    if ((party == 0 && !alice_line) || (party == 1 && !bob_line))
      throw format_error("expected alice measurements then bob measurements");
    int dim = q.state.dims[static_cast<std::size_t>(party)];
    auto& dst = party == 0 ? q.alice : q.bob;
    if (toks[0] == "alice:" || toks[0] == "bob:") {
      if (dim != 2) throw format_error("angle measurements need qubit subsystems");
      dst = detail::parse_angle_measurements(toks);
    } else {
      dst = detail::parse_matrix_measurements(in, line, dim);
    }
  }
  return q;
}

inline SequentialProtocol read_protocol(std::istream& in) {
  auto r = detail::split_tokens(detail::next_data_line(in));
  if (r.size() != 2 || r[0] != "rounds") throw format_error("expected 'rounds R'");
  SequentialProtocol proto;
  proto.rounds = detail::parse_int(r[1]);
  auto reg = detail::split_tokens(detail::next_data_line(in));
  if (reg.size() != 2 || reg[0] != "register-dim")
    throw format_error("expected 'register-dim d'");
  proto.friend_register_dim = detail::parse_int(reg[1]);
  proto.initial_state = detail::parse_state(in);

  auto fr = detail::split_tokens(detail::next_data_line(in));
  if (fr[0] != "friend:") throw format_error("expected 'friend: angles...'");
  if (proto.initial_state.dims[0] != 2)
    throw format_error("angle measurements need qubit subsystems");
  proto.friend_measurements = detail::parse_angle_measurements(fr);

  auto fin = detail::split_tokens(detail::next_data_line(in));
  if (fin.size() != 2 || fin[0] != "final:") throw format_error("expected 'final: angle'");
  proto.final_alice = polarization_projectors(detail::parse_double(fin[1]));

  auto bb = detail::split_tokens(detail::next_data_line(in));
  if (bb[0] != "bob:") throw format_error("expected 'bob: angles...'");
  proto.bob_measurements = detail::parse_angle_measurements(bb);
  proto.validate();
  return proto;
}

inline void write_quantum_state(std::ostream& out, const StateVector& st) {
  out << "dims";
  for (int d : st.dims) out << " " << d;
  out << "\n";
  for (const auto& a : st.amps)
    out << detail::format_double(a.real()) << " " << detail::format_double(a.imag()) << "\n";
}

}  // namespace lfpoly
