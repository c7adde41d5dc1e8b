/// @file dual.hpp
/// @brief Nested forward-mode differentiation numbers ("jets").
///
/// Dual<T> carries a value and one directional-derivative slot.  Nesting the
/// template gives exact higher derivatives:
///
///   Jet1 = Dual<double>        first derivatives
///   Jet2 = Dual<Jet1>          second derivatives
///   Jet3 = Dual<Jet2>          third derivatives
///
/// Metric and potential components are written once as templated functions of
/// the coordinates; evaluating them on seeded jets yields partial derivatives
/// that are exact to machine precision.  This is the primary derivative path
/// for the geometry kernels; finite differences appear only as test oracles
/// and for the outermost derivative of second-order (Laplacian-type) terms.

#pragma once

#include <cmath>

namespace solgeo {

template <class T>
struct Dual {
  T v{};  // value
  T d{};  // derivative along the direction seeded at this nesting level

  Dual() = default;
  Dual(double c) : v(c), d(0.0) {}  // NOLINT: implicit lift of constants
  Dual(const T& value, const T& deriv) : v(value), d(deriv) {}
};

using Jet1 = Dual<double>;
using Jet2 = Dual<Jet1>;
using Jet3 = Dual<Jet2>;

// --- value extraction (recursive) ------------------------------------------

inline double value(double x) { return x; }
template <class T>
double value(const Dual<T>& x) { return value(x.v); }

// --- arithmetic -------------------------------------------------------------

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T>
Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T>
Dual<T> operator+(const Dual<T>& a) { return a; }

template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

template <class T> Dual<T> operator+(const Dual<T>& a, double c) { return a + Dual<T>(c); }
template <class T> Dual<T> operator+(double c, const Dual<T>& a) { return Dual<T>(c) + a; }
template <class T> Dual<T> operator-(const Dual<T>& a, double c) { return a - Dual<T>(c); }
template <class T> Dual<T> operator-(double c, const Dual<T>& a) { return Dual<T>(c) - a; }
template <class T> Dual<T> operator*(const Dual<T>& a, double c) { return {a.v * c, a.d * c}; }
template <class T> Dual<T> operator*(double c, const Dual<T>& a) { return {a.v * c, a.d * c}; }
template <class T> Dual<T> operator/(const Dual<T>& a, double c) { return {a.v / c, a.d / c}; }
template <class T> Dual<T> operator/(double c, const Dual<T>& a) { return Dual<T>(c) / a; }

template <class T> Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) { a = a + b; return a; }
template <class T> Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) { a = a - b; return a; }
template <class T> Dual<T>& operator*=(Dual<T>& a, const Dual<T>& b) { a = a * b; return a; }

// --- elementary functions (chain rule) ---------------------------------------

using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tanh;

template <class T>
Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.v);
  return {e, e * x.d};
}
template <class T>
Dual<T> log(const Dual<T>& x) { return {log(x.v), x.d / x.v}; }
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  T s = sqrt(x.v);
  return {s, x.d / (2.0 * s)};
}
template <class T>
Dual<T> sin(const Dual<T>& x) { return {sin(x.v), cos(x.v) * x.d}; }
template <class T>
Dual<T> cos(const Dual<T>& x) { return {cos(x.v), -sin(x.v) * x.d}; }
template <class T>
Dual<T> sinh(const Dual<T>& x) { return {sinh(x.v), cosh(x.v) * x.d}; }
template <class T>
Dual<T> cosh(const Dual<T>& x) { return {cosh(x.v), sinh(x.v) * x.d}; }
template <class T>
Dual<T> tanh(const Dual<T>& x) {
  T t = tanh(x.v);
  return {t, (1.0 - t * t) * x.d};
}

/// Real power for positive base (used for radii/conformal factors).
template <class T>
Dual<T> pow(const Dual<T>& x, double p) {
  return {pow(x.v, p), p * pow(x.v, p - 1.0) * x.d};
}

/// Small integer powers without domain restrictions.
template <class T>
T ipow(const T& x, int p) {
  T r(1.0);
  for (int k = 0; k < p; ++k) r = r * x;
  return r;
}

}  // namespace solgeo
