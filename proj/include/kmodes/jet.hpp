#pragma once

#include <array>
#include <complex>

namespace kmodes {

using cplx = std::complex<double>;

/// Value and first three derivatives of a complex function of one real
/// variable. Arithmetic follows the Leibniz and Faà di Bruno rules, so
/// closed forms built from jets carry exact analytic derivatives.
struct Jet {
  static constexpr int kMaxOrder = 3;
  std::array<cplx, kMaxOrder + 1> d{};

  constexpr Jet() = default;
  constexpr Jet(cplx v, cplx d1 = 0.0, cplx d2 = 0.0, cplx d3 = 0.0)
      : d{v, d1, d2, d3} {}

  static Jet constant(cplx v) { return Jet(v); }
  /// The identity function t ↦ t at t.
  static Jet variable(double t) { return Jet(t, 1.0); }

  cplx value() const { return d[0]; }
  cplx operator[](int k) const { return d[static_cast<std::size_t>(k)]; }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= kMaxOrder; ++k) d[k] += o.d[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= kMaxOrder; ++k) d[k] -= o.d[k];
    return *this;
  }
  Jet& operator*=(cplx s) {
    for (auto& x : d) x *= s;
    return *this;
  }
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator-(Jet a) { return a *= -1.0; }
inline Jet operator*(Jet a, cplx s) { return a *= s; }
inline Jet operator*(cplx s, Jet a) { return a *= s; }

inline Jet operator*(const Jet& f, const Jet& g) {
  const auto& a = f.d;
  const auto& b = g.d;
  return Jet(a[0] * b[0], a[1] * b[0] + a[0] * b[1],
             a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2],
             a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3]);
}

/// h∘g given h and its first three derivatives evaluated at g.value().
inline Jet compose(const std::array<cplx, 4>& h, const Jet& g) {
  const cplx g1 = g.d[1], g2 = g.d[2], g3 = g.d[3];
  return Jet(h[0], h[1] * g1, h[2] * g1 * g1 + h[1] * g2,
             h[3] * g1 * g1 * g1 + 3.0 * h[2] * g1 * g2 + h[1] * g3);
}

inline Jet reciprocal(const Jet& g) {
  const cplx inv = 1.0 / g.value();
  return compose({inv, -inv * inv, 2.0 * inv * inv * inv,
                  -6.0 * inv * inv * inv * inv},
                 g);
}

inline Jet exp(const Jet& g) {
  const cplx e = std::exp(g.value());
  return compose({e, e, e, e}, g);
}

}  // namespace kmodes
