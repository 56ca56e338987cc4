#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "lfpoly/common.hpp"

namespace lfpoly {

// Exact arithmetic backbone. cpp_rational keeps numerator/denominator in
// lowest terms with a positive denominator, which is exactly the contract
// the polytope code relies on.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>;

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(const Int& n) { return n.is_zero(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "num" when the denominator is 1, otherwise "num/den".
inline std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw format_error("empty rational token");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw format_error("zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw format_error("bad rational token '" + s + "'");
  }
}

// Continued-fraction rounding of a double. Walks the convergents until one
// is within `tol` of x, or the denominator cap is hit, in which case the
// last convergent under the cap is returned.
inline Rational rationalize(double x, double tol = 1e-12,
                            const Int& max_den = Int(1000000)) {
  if (!std::isfinite(x)) throw format_error("cannot rationalize non-finite value");
  bool neg = x < 0;
  double target = neg ? -x : x;

  Int h_prev = 1, h_prev2 = 0;  // numerator recurrence
  Int k_prev = 0, k_prev2 = 1;  // denominator recurrence
  double cur = target;
  Rational best = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(cur);
    if (fl > 9e17) break;  // degenerate tail from floating noise
    Int a(static_cast<long long>(fl));
    Int h = a * h_prev + h_prev2;
    Int k = a * k_prev + k_prev2;
    if (k > max_den) break;
    best = Rational(h, k);
    if (std::fabs(to_double(best) - target) <= tol) break;
    double rem = cur - fl;
    if (rem < 1e-18) break;
    cur = 1.0 / rem;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return neg ? -best : best;
}

inline Rational dot(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) throw dimension_error("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!is_zero(a[i]) && !is_zero(b[i])) s += a[i] * b[i];
  }
  return s;
}

// Scales a rational vector to coprime integers without changing orientation.
inline void normalize_integer(RVec& v) {
  Int lcm_den = 1;
  for (const auto& r : v) lcm_den = lcm(lcm_den, denominator(r));
  Int gcd_num = 0;
  std::vector<Int> ints(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = numerator(v[i]) * (lcm_den / denominator(v[i]));
    gcd_num = gcd(gcd_num, ints[i]);
  }
  if (gcd_num == 0) return;  // zero vector
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(ints[i] / gcd_num);
}

}  // namespace lfpoly
