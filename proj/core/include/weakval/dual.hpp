#pragma once

#include <weakval/complex.hpp>

namespace weakval {

/// Element of the two-infinitesimal truncated algebra over Complex,
///
///   x = v + dQ*eQ + dB*eB + dQB*eQ*eB,   eQ^2 = eB^2 = 0,  eQ*eB != 0.
///
/// Seeding the pointer variable with eQ and the width parameter with eB,
/// evaluating a wavefunction, and reading the eQ*eB coefficient of its
/// logarithm yields the mixed derivative d_beta d_Q ln(psi) exactly
/// (up to rounding), with no step-size error.
struct DualBi {
  Complex v{};
  Complex dQ{};
  Complex dB{};
  Complex dQB{};

  DualBi() = default;
  DualBi(double x) : v(x) {}                // NOLINT: value lift is intentional
  DualBi(const Complex& x) : v(x) {}        // NOLINT
  DualBi(const Complex& value, const Complex& dq, const Complex& db,
         const Complex& dqb)
      : v(value), dQ(dq), dB(db), dQB(dqb) {}

  /// x + eQ  (pointer-variable seed).
  static DualBi seed_q(const Complex& x) { return {x, 1.0, 0.0, 0.0}; }
  /// x + eB  (width-parameter seed).
  static DualBi seed_beta(const Complex& x) { return {x, 0.0, 1.0, 0.0}; }

  bool operator==(const DualBi&) const = default;
};

inline DualBi operator+(const DualBi& a, const DualBi& b) {
  return {a.v + b.v, a.dQ + b.dQ, a.dB + b.dB, a.dQB + b.dQB};
}

inline DualBi operator-(const DualBi& a, const DualBi& b) {
  return {a.v - b.v, a.dQ - b.dQ, a.dB - b.dB, a.dQB - b.dQB};
}

inline DualBi operator-(const DualBi& a) {
  return {-a.v, -a.dQ, -a.dB, -a.dQB};
}

/// Truncated product: the eQ*eB slot picks up the cross term
/// a.dQ*b.dB + a.dB*b.dQ because eQ^2 = eB^2 = 0.
inline DualBi operator*(const DualBi& a, const DualBi& b) {
  return {a.v * b.v,
          a.v * b.dQ + a.dQ * b.v,
          a.v * b.dB + a.dB * b.v,
          a.v * b.dQB + a.dQB * b.v + a.dQ * b.dB + a.dB * b.dQ};
}

/// Analytic primitives supported by the algebra (and by the expression
/// language, which dispatches through the same table).
enum class AnalyticFn { Exp, Ln, Sin, Cos, Tan, Sqrt };

/// Chain rule through one analytic primitive:
///   f(v + h) = f(v) + f'(v) h + f''(v) h^2 / 2,   h^2 = 2 dQ dB eQ eB.
/// Throws DomainError when a.v violates the primitive's domain.
DualBi apply(AnalyticFn f, const DualBi& a);

/// Plain complex counterpart (principal branches). Same numeric path as
/// the value slot of the DualBi overload, so the two algebras agree
/// exactly on values.
Complex apply(AnalyticFn f, const Complex& a);

/// 1/a. Throws DomainError when a.v == 0.
DualBi inverse(const DualBi& a);

/// Quotient rule; the value slot is computed with std::complex division
/// so it coincides bit-for-bit with the plain algebra.
DualBi operator/(const DualBi& a, const DualBi& b);

DualBi exp(const DualBi& a);
DualBi log(const DualBi& a);
DualBi sin(const DualBi& a);
DualBi cos(const DualBi& a);
DualBi tan(const DualBi& a);
DualBi sqrt(const DualBi& a);

/// base^exponent with the convention shared by both algebras: an
/// exponent that is an exact real integer (and carries no infinitesimal
/// part) is applied by repeated multiplication, which keeps the result
/// exact in the truncated algebra even when base.v == 0; anything else
/// goes through exp(exponent * log(base)) on the principal branch.
DualBi alg_pow(const DualBi& base, const DualBi& exponent);
Complex alg_pow(const Complex& base, const Complex& exponent);

}  // namespace weakval
