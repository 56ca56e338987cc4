#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "lfpoly/common.hpp"
#include "lfpoly/scenario.hpp"

namespace lfpoly {

// Born-rule behaviour generation and the sequential measure/reverse
// protocol. Everything here runs in double precision; exact rationals enter
// only at the boundary, where probabilities are rationalized and each block
// renormalized so the polytope side sees a valid exact behaviour. The raw
// doubles are kept alongside for tolerance-based checks.

using Complex = std::complex<double>;

inline constexpr double quantum_tolerance = 1e-12;

struct CMatrix {
  int rows = 0, cols = 0;
  std::vector<Complex> a;

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  Complex& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const Complex& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  static CMatrix identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  CMatrix operator*(const CMatrix& o) const {
    if (cols != o.rows) throw dimension_error("CMatrix: shape mismatch in product");
    CMatrix out(rows, o.cols);
    for (int r = 0; r < rows; ++r)
      for (int k = 0; k < cols; ++k) {
        Complex v = at(r, k);
        if (v == Complex(0)) continue;
        for (int c = 0; c < o.cols; ++c) out.at(r, c) += v * o.at(k, c);
      }
    return out;
  }

  CMatrix dagger() const {
    CMatrix out(cols, rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) out.at(c, r) = std::conj(at(r, c));
    return out;
  }

  static CMatrix kron(const CMatrix& x, const CMatrix& y) {
    CMatrix out(x.rows * y.rows, x.cols * y.cols);
    for (int r1 = 0; r1 < x.rows; ++r1)
      for (int c1 = 0; c1 < x.cols; ++c1) {
        Complex v = x.at(r1, c1);
        if (v == Complex(0)) continue;
        for (int r2 = 0; r2 < y.rows; ++r2)
          for (int c2 = 0; c2 < y.cols; ++c2)
            out.at(r1 * y.rows + r2, c1 * y.cols + c2) = v * y.at(r2, c2);
      }
    return out;
  }

  double max_abs_diff(const CMatrix& o) const {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - o.a[i]));
    return m;
  }
};

struct StateVector {
  std::vector<Complex> amps;
  std::vector<int> dims;

  int dimension() const {
    int d = 1;
    for (int x : dims) d *= x;
    return d;
  }

  double norm() const {
    double s = 0;
    for (const auto& c : amps) s += std::norm(c);
    return std::sqrt(s);
  }

  void validate() const {
    if (static_cast<int>(amps.size()) != dimension())
      throw dimension_error("StateVector: amplitude count does not match dims");
    if (std::abs(norm() - 1.0) > quantum_tolerance)
      throw dimension_error("StateVector: not normalized");
  }
};

struct ProjectiveMeasurement {
  std::vector<CMatrix> projectors;  // one per outcome, in label order

  int outcomes() const { return static_cast<int>(projectors.size()); }
  int dim() const { return projectors.empty() ? 0 : projectors.front().rows; }

  // Hermitian, idempotent, pairwise orthogonal, complete.
  void validate(double tol = quantum_tolerance) const {
    if (projectors.empty()) throw dimension_error("measurement with no outcomes");
    const int d = dim();
    CMatrix sum(d, d);
    for (const auto& p : projectors) {
      if (p.rows != d || p.cols != d)
        throw dimension_error("measurement: projector shape mismatch");
      if (p.max_abs_diff(p.dagger()) > tol)
        throw dimension_error("measurement: projector not Hermitian");
      if ((p * p).max_abs_diff(p) > tol)
        throw dimension_error("measurement: projector not idempotent");
      for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += p.a[i];
    }
    for (const auto& p : projectors)
      for (const auto& q : projectors) {
        if (&p == &q) continue;
        CMatrix prod = p * q;
        double m = 0;
        for (const auto& c : prod.a) m = std::max(m, std::abs(c));
        if (m > tol) throw dimension_error("measurement: projectors not orthogonal");
      }
    if (sum.max_abs_diff(CMatrix::identity(d)) > tol)
      throw dimension_error("measurement: projectors do not sum to identity");
  }
};

// Qubit polarization measurement at angle phi: outcome 0 ("+1") projects
// onto cos(phi)|H> + sin(phi)|V>, outcome 1 ("-1") onto the orthogonal
// direction.
inline ProjectiveMeasurement polarization_projectors(double phi) {
  auto outer = [](double c, double s) {
    CMatrix m(2, 2);
    m.at(0, 0) = c * c;
    m.at(0, 1) = c * s;
    m.at(1, 0) = s * c;
    m.at(1, 1) = s * s;
    return m;
  };
  ProjectiveMeasurement m;
  m.projectors.push_back(outer(std::cos(phi), std::sin(phi)));
  m.projectors.push_back(outer(-std::sin(phi), std::cos(phi)));
  return m;
}

// Exact behaviour from raw Born probabilities: continued-fraction rounding
// per coordinate, then an exact per-block renormalization.
inline Behaviour behaviour_from_raw(const Scenario& s, const std::vector<double>& raw) {
  if (static_cast<int>(raw.size()) != s.dimension())
    throw dimension_error("behaviour_from_raw: length mismatch");
  Behaviour p;
  p.scenario = s;
  p.coords.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Rational r = rationalize(raw[i]);
    if (r < 0) r = 0;  // floating dust below the rounding tolerance
    p.coords[i] = r;
  }
  for (int x = 0; x < s.alice_inputs(); ++x)
    for (int y = 0; y < s.bob_inputs(); ++y) {
      Rational sum = 0;
      for (int a = 0; a < s.alice_outcomes[x]; ++a)
        for (int b = 0; b < s.bob_outcomes[y]; ++b) sum += p.at(x, y, a, b);
      if (sum <= 0) throw dimension_error("behaviour_from_raw: empty block");
      if (sum != 1)
        for (int a = 0; a < s.alice_outcomes[x]; ++a)
          for (int b = 0; b < s.bob_outcomes[y]; ++b) p.at(x, y, a, b) /= sum;
    }
  return p;
}

struct QuantumBehaviour {
  Behaviour behaviour;      // exact, block-normalized
  std::vector<double> raw;  // unrounded Born values, same coordinate order
};

// p(ab|xy) = <psi| P^x_a (x) P^y_b |psi> for a bipartite pure state.
inline QuantumBehaviour born_behaviour(const StateVector& state,
                                       const std::vector<ProjectiveMeasurement>& alice,
                                       const std::vector<ProjectiveMeasurement>& bob) {
  state.validate();
  if (state.dims.size() != 2)
    throw dimension_error("born_behaviour: state must be bipartite");
  const int da = state.dims[0], db = state.dims[1];
  Scenario s;
  for (const auto& m : alice) {
    m.validate();
    if (m.dim() != da) throw dimension_error("born_behaviour: alice measurement dimension");
    s.alice_outcomes.push_back(m.outcomes());
  }
  for (const auto& m : bob) {
    m.validate();
    if (m.dim() != db) throw dimension_error("born_behaviour: bob measurement dimension");
    s.bob_outcomes.push_back(m.outcomes());
  }
  s.validate();

  std::vector<double> raw(static_cast<std::size_t>(s.dimension()));
  for (int x = 0; x < s.alice_inputs(); ++x)
    for (int y = 0; y < s.bob_inputs(); ++y)
      for (int a = 0; a < s.alice_outcomes[x]; ++a)
        for (int b = 0; b < s.bob_outcomes[y]; ++b) {
          const CMatrix& pa = alice[static_cast<std::size_t>(x)].projectors[static_cast<std::size_t>(a)];
          const CMatrix& pb = bob[static_cast<std::size_t>(y)].projectors[static_cast<std::size_t>(b)];
          Complex acc = 0;
          for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j) {
              Complex w = 0;
              for (int ip = 0; ip < da; ++ip)
                for (int jp = 0; jp < db; ++jp) {
                  Complex f = pa.at(i, ip) * pb.at(j, jp);
                  if (f == Complex(0)) continue;
                  w += f * state.amps[static_cast<std::size_t>(ip) * db + jp];
                }
              acc += std::conj(state.amps[static_cast<std::size_t>(i) * db + j]) * w;
            }
          raw[static_cast<std::size_t>(s.coord_index(x, y, a, b))] = acc.real();
        }
  return {behaviour_from_raw(s, raw), std::move(raw)};
}

// Measurement dilation: the unitary on system (x) register that writes the
// outcome into a computational pointer state, U (P_k |psi> (x) |ready>) =
// P_k |psi> (x) |k>. Built as sum_k P_k (x) shift^k with the cyclic shift
// on the register, which is unitary for any complete projective family.
inline CMatrix dilate_measurement(const ProjectiveMeasurement& m, int register_dim) {
  m.validate();
  if (register_dim < m.outcomes())
    throw bounds_error("dilate_measurement: register smaller than outcome count");
  const int ds = m.dim();
  CMatrix u(ds * register_dim, ds * register_dim);
  for (int k = 0; k < m.outcomes(); ++k) {
    CMatrix shift(register_dim, register_dim);
    for (int r = 0; r < register_dim; ++r) shift.at((r + k) % register_dim, r) = 1;
    CMatrix term = CMatrix::kron(m.projectors[static_cast<std::size_t>(k)], shift);
    for (std::size_t i = 0; i < u.a.size(); ++i) u.a[i] += term.a[i];
  }
  if ((u.dagger() * u).max_abs_diff(CMatrix::identity(ds * register_dim)) > quantum_tolerance)
    throw dimension_error("dilate_measurement: dilation is not unitary");
  return u;
}

// The friend's instructed measurements are fixed data shared by every run;
// only the superobserver's stop/continue choices vary.
struct SequentialProtocol {
  int rounds = 0;
  StateVector initial_state;  // dims = {system, bob}
  std::vector<ProjectiveMeasurement> friend_measurements;  // z_1..z_R on the system
  ProjectiveMeasurement final_alice;                       // fixed basis for the last input
  std::vector<ProjectiveMeasurement> bob_measurements;
  int friend_register_dim = 0;

  void validate() const {
    initial_state.validate();
    if (initial_state.dims.size() != 2)
      throw dimension_error("protocol: state must cover system and Bob's particle");
    if (rounds < 1 || static_cast<int>(friend_measurements.size()) != rounds)
      throw dimension_error("protocol: need one friend measurement per round");
    const int ds = initial_state.dims[0], db = initial_state.dims[1];
    int c = friend_measurements.front().outcomes();
    for (const auto& m : friend_measurements) {
      m.validate();
      if (m.dim() != ds) throw dimension_error("protocol: friend measurement dimension");
      if (m.outcomes() != c)
        throw dimension_error("protocol: friend outcome alphabet must be uniform");
    }
    final_alice.validate();
    if (final_alice.dim() != ds) throw dimension_error("protocol: final measurement dimension");
    if (bob_measurements.empty()) throw dimension_error("protocol: no Bob measurements");
    for (const auto& m : bob_measurements) {
      m.validate();
      if (m.dim() != db) throw dimension_error("protocol: bob measurement dimension");
    }
    if (friend_register_dim < c)
      throw bounds_error("protocol: register smaller than friend alphabet");
  }
};

namespace detail {

// State layout (s, b, f) -> (s*db + b)*df + f.
inline void apply_system_register(std::vector<Complex>& amps, const CMatrix& u, int ds, int db,
                                  int df) {
  std::vector<Complex> out(amps.size());
  for (int b = 0; b < db; ++b)
    for (int s = 0; s < ds; ++s)
      for (int f = 0; f < df; ++f) {
        Complex acc = 0;
        for (int sp = 0; sp < ds; ++sp)
          for (int fp = 0; fp < df; ++fp) {
            Complex v = u.at(s * df + f, sp * df + fp);
            if (v == Complex(0)) continue;
            acc += v * amps[static_cast<std::size_t>((sp * db + b) * df + fp)];
          }
        out[static_cast<std::size_t>((s * db + b) * df + f)] = acc;
      }
  amps.swap(out);
}

inline std::vector<Complex> apply_bob_projector(const std::vector<Complex>& amps,
                                                const CMatrix& p, int ds, int db, int df) {
  std::vector<Complex> out(amps.size());
  for (int s = 0; s < ds; ++s)
    for (int f = 0; f < df; ++f)
      for (int b = 0; b < db; ++b) {
        Complex acc = 0;
        for (int bp = 0; bp < db; ++bp) {
          Complex v = p.at(b, bp);
          if (v == Complex(0)) continue;
          acc += v * amps[static_cast<std::size_t>((s * db + bp) * df + f)];
        }
        out[static_cast<std::size_t>((s * db + b) * df + f)] = acc;
      }
  return out;
}

}  // namespace detail

// Full simulation of the sequential protocol. For the round-i input the
// evolution is U_1, U_1^+, ..., U_{i-1}, U_{i-1}^+, U_i and the friend
// register is read jointly with Bob's measurement; for the final input
// every measurement is reversed and the particle is measured directly.
// Perfect reversal makes the result coincide with born_behaviour on the
// settings {z_1..z_R, final}.
inline QuantumBehaviour sequential_behaviour(const SequentialProtocol& proto) {
  proto.validate();
  const int ds = proto.initial_state.dims[0];
  const int db = proto.initial_state.dims[1];
  const int df = proto.friend_register_dim;
  const int rounds = proto.rounds;
  const int friend_alpha = proto.friend_measurements.front().outcomes();

  Scenario eff;
  eff.alice_outcomes.assign(static_cast<std::size_t>(rounds), friend_alpha);
  eff.alice_outcomes.push_back(proto.final_alice.outcomes());
  for (const auto& m : proto.bob_measurements) eff.bob_outcomes.push_back(m.outcomes());
  eff.validate();

  std::vector<CMatrix> dilations;
  dilations.reserve(static_cast<std::size_t>(rounds));
  for (const auto& m : proto.friend_measurements)
    dilations.push_back(dilate_measurement(m, df));

  std::vector<Complex> start(static_cast<std::size_t>(ds * db * df), Complex(0));
  for (int s = 0; s < ds; ++s)
    for (int b = 0; b < db; ++b)
      start[static_cast<std::size_t>((s * db + b) * df + 0)] =
          proto.initial_state.amps[static_cast<std::size_t>(s * db + b)];

  std::vector<double> raw(static_cast<std::size_t>(eff.dimension()), 0.0);

  for (int input = 0; input <= rounds; ++input) {
    std::vector<Complex> amps = start;
    const int last = input < rounds ? input : rounds - 1;
    for (int j = 0; j < last; ++j) {
      detail::apply_system_register(amps, dilations[static_cast<std::size_t>(j)], ds, db, df);
      detail::apply_system_register(amps, dilations[static_cast<std::size_t>(j)].dagger(), ds, db,
                                    df);
    }
    if (input < rounds) {
      detail::apply_system_register(amps, dilations[static_cast<std::size_t>(input)], ds, db, df);
    } else {
      detail::apply_system_register(amps, dilations[static_cast<std::size_t>(rounds - 1)], ds, db,
                                    df);
      detail::apply_system_register(amps, dilations[static_cast<std::size_t>(rounds - 1)].dagger(),
                                    ds, db, df);
    }

    for (int y = 0; y < eff.bob_inputs(); ++y) {
      const auto& meas = proto.bob_measurements[static_cast<std::size_t>(y)];
      for (int b = 0; b < eff.bob_outcomes[y]; ++b) {
        auto projected =
            detail::apply_bob_projector(amps, meas.projectors[static_cast<std::size_t>(b)], ds,
                                        db, df);
        if (input < rounds) {
          // Read the friend register: the recorded outcome is c_i with
          // probability 1 given the round, so a = f.
          for (int a = 0; a < friend_alpha; ++a) {
            double p = 0;
            for (int s = 0; s < ds; ++s)
              for (int bb = 0; bb < db; ++bb)
                p += std::norm(projected[static_cast<std::size_t>((s * db + bb) * df + a)]);
            raw[static_cast<std::size_t>(eff.coord_index(input, y, a, b))] = p;
          }
        } else {
          for (int a = 0; a < proto.final_alice.outcomes(); ++a) {
            const CMatrix& pa = proto.final_alice.projectors[static_cast<std::size_t>(a)];
            double p = 0;
            for (int bb = 0; bb < db; ++bb)
              for (int f = 0; f < df; ++f) {
                for (int s = 0; s < ds; ++s) {
                  Complex acc = 0;
                  for (int sp = 0; sp < ds; ++sp) {
                    Complex v = pa.at(s, sp);
                    if (v == Complex(0)) continue;
                    acc += v * projected[static_cast<std::size_t>((sp * db + bb) * df + f)];
                  }
                  p += std::norm(acc);
                }
              }
            raw[static_cast<std::size_t>(eff.coord_index(rounds, y, a, b))] = p;
          }
        }
      }
    }
  }
  return {behaviour_from_raw(eff, raw), std::move(raw)};
}

}  // namespace lfpoly
