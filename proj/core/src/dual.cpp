#include <weakval/dual.hpp>

#include <cmath>
#include <cstdint>

#include <weakval/errors.hpp>

namespace weakval {

namespace {

struct Derivs {
  Complex f;
  Complex f1;
  Complex f2;
};

Derivs derivs(AnalyticFn fn, const Complex& v) {
  switch (fn) {
    case AnalyticFn::Exp: {
      const Complex e = std::exp(v);
      return {e, e, e};
    }
    case AnalyticFn::Ln: {
      if (v == Complex{}) throw DomainError("ln of zero");
      return {std::log(v), 1.0 / v, -1.0 / (v * v)};
    }
    case AnalyticFn::Sin: {
      const Complex s = std::sin(v), c = std::cos(v);
      return {s, c, -s};
    }
    case AnalyticFn::Cos: {
      const Complex s = std::sin(v), c = std::cos(v);
      return {c, -s, -c};
    }
    case AnalyticFn::Tan: {
      const Complex t = std::tan(v);
      const Complex sec2 = 1.0 + t * t;
      return {t, sec2, 2.0 * t * sec2};
    }
    case AnalyticFn::Sqrt: {
      if (v == Complex{}) throw DomainError("sqrt derivative undefined at zero");
      const Complex r = std::sqrt(v);
      return {r, 0.5 / r, -0.25 / (r * v)};
    }
  }
  throw DomainError("unknown analytic primitive");
}

// True when z is an exact real integer of moderate size.
bool as_integer(const Complex& z, std::int64_t& out) {
  if (z.imag() != 0.0) return false;
  const double re = z.real();
  if (!(std::abs(re) <= 1024.0)) return false;
  if (re != std::floor(re)) return false;
  out = static_cast<std::int64_t>(re);
  return true;
}

template <class S>
S pow_integer(S base, std::int64_t n) {
  if (n == 0) return S(1.0);
  const bool negative = n < 0;
  std::uint64_t k = negative ? static_cast<std::uint64_t>(-n)
                             : static_cast<std::uint64_t>(n);
  S acc(1.0);
  while (k != 0) {
    if (k & 1u) acc = acc * base;
    base = base * base;
    k >>= 1u;
  }
  if (negative) return S(1.0) / acc;
  return acc;
}

}  // namespace

DualBi apply(AnalyticFn fn, const DualBi& a) {
  const Derivs d = derivs(fn, a.v);
  return {d.f, d.f1 * a.dQ, d.f1 * a.dB, d.f1 * a.dQB + d.f2 * a.dQ * a.dB};
}

Complex apply(AnalyticFn fn, const Complex& a) {
  switch (fn) {
    case AnalyticFn::Exp: return std::exp(a);
    case AnalyticFn::Ln:
      if (a == Complex{}) throw DomainError("ln of zero");
      return std::log(a);
    case AnalyticFn::Sin: return std::sin(a);
    case AnalyticFn::Cos: return std::cos(a);
    case AnalyticFn::Tan: return std::tan(a);
    case AnalyticFn::Sqrt: return std::sqrt(a);
  }
  throw DomainError("unknown analytic primitive");
}

DualBi inverse(const DualBi& a) {
  if (a.v == Complex{}) throw DomainError("division by zero");
  const Complex iv = 1.0 / a.v;
  const Complex iv2 = iv * iv;
  return {iv, -a.dQ * iv2, -a.dB * iv2,
          -a.dQB * iv2 + 2.0 * a.dQ * a.dB * iv2 * iv};
}

DualBi operator/(const DualBi& a, const DualBi& b) {
  if (b.v == Complex{}) throw DomainError("division by zero");
  const Complex v = a.v / b.v;
  const Complex dq = (a.dQ - v * b.dQ) / b.v;
  const Complex db = (a.dB - v * b.dB) / b.v;
  const Complex dqb =
      (a.dQB - db * b.dQ - v * b.dQB) / b.v - dq * b.dB / b.v;
  return {v, dq, db, dqb};
}

DualBi exp(const DualBi& a) { return apply(AnalyticFn::Exp, a); }
DualBi log(const DualBi& a) { return apply(AnalyticFn::Ln, a); }
DualBi sin(const DualBi& a) { return apply(AnalyticFn::Sin, a); }
DualBi cos(const DualBi& a) { return apply(AnalyticFn::Cos, a); }
DualBi tan(const DualBi& a) { return apply(AnalyticFn::Tan, a); }
DualBi sqrt(const DualBi& a) { return apply(AnalyticFn::Sqrt, a); }

DualBi alg_pow(const DualBi& base, const DualBi& exponent) {
  std::int64_t n = 0;
  const bool plain = exponent.dQ == Complex{} && exponent.dB == Complex{} &&
                     exponent.dQB == Complex{};
  if (plain && as_integer(exponent.v, n)) {
    if (n < 0 && base.v == Complex{})
      throw DomainError("zero raised to a negative power");
    return pow_integer(base, n);
  }
  return exp(exponent * log(base));
}

Complex alg_pow(const Complex& base, const Complex& exponent) {
  std::int64_t n = 0;
  if (as_integer(exponent, n)) {
    if (n < 0 && base == Complex{})
      throw DomainError("zero raised to a negative power");
    return pow_integer(base, n);
  }
  if (base == Complex{}) throw DomainError("ln of zero");
  return std::exp(exponent * std::log(base));
}

}  // namespace weakval
