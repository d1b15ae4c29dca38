#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgd/blockr.hpp"
#include "qgd/frac.hpp"

namespace qgd {

/// Counter-based deterministic generator (splitmix64). Instances depend only
/// on the seed, never on scheduling, so suites can run checks in parallel
/// and still produce byte-identical reports.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi].
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Derives an independent stream for a named check.
  static std::uint64_t derive(std::uint64_t seed, const std::string& suite,
                              const std::string& check) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
    auto mix = [&h](const std::string& s) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
      }
      h ^= 0xff;
      h *= 0x100000001b3ULL;
    };
    mix(suite);
    mix(check);
    return h;
  }

private:
  std::uint64_t state_;
};

/// Rational with numerator in [-9,9] and denominator in [1,9].
inline Rational random_rational(Rng& rng, bool nonzero = false) {
  for (;;) {
    long num = rng.range(-9, 9);
    if (nonzero && num == 0) continue;
    return Rational(num, rng.range(1, 9));
  }
}

/// Laurent polynomial with z-exponents in [-3, 3].
inline LaurentPoly<Rational> random_laurent(Rng& rng, int terms = 3, int lo = -3, int hi = 3) {
  LaurentPoly<Rational> p;
  for (int t = 0; t < terms; ++t) p.set(static_cast<int>(rng.range(lo, hi)), random_rational(rng));
  return p;
}

inline MonicQDiff<Rational> random_monic(Rng& rng, int n, int terms = 2) {
  std::vector<LaurentPoly<Rational>> u(n);
  for (int i = 0; i < n; ++i) u[i] = random_laurent(rng, terms);
  return MonicQDiff<Rational>(n, std::move(u));
}

/// Complete operator with D-degrees in [dlo, dhi].
inline QOp<Rational> random_qop(Rng& rng, int dlo = -2, int dhi = 2, int terms = 2) {
  QOp<Rational> a;
  for (int d = dlo; d <= dhi; ++d) a.set_coeff(d, random_laurent(rng, terms));
  return a;
}

inline QOp<Rational> random_qop_part(Rng& rng, Part part, int band = 2, int terms = 2) {
  switch (part) {
    case Part::Plus: return random_qop(rng, 1, band, terms);
    case Part::Minus: return random_qop(rng, -band, -1, terms);
    case Part::Zero: return QOp<Rational>(random_laurent(rng, terms));
    case Part::PlusZero: return random_qop(rng, 0, band, terms);
    case Part::MinusZero: return random_qop(rng, -band, 0, terms);
  }
  return {};
}

/// Composition chain over the generating family {z^p, h^k, P00}.
inline J0Chain<Rational> random_j0chain(Rng& rng, int len = 2) {
  J0Chain<Rational> ch;
  ch.scale = random_rational(rng, true);
  for (int t = 0; t < len; ++t) {
    switch (rng.range(0, 2)) {
      case 0: ch.atoms.push_back({J0Atom<Rational>::MulZ, static_cast<int>(rng.range(-2, 2))}); break;
      case 1: ch.atoms.push_back({J0Atom<Rational>::Dilate, static_cast<int>(rng.range(-3, 3))}); break;
      default: ch.atoms.push_back({J0Atom<Rational>::P00, 0}); break;
    }
  }
  return ch;
}

inline J0OpSum<Rational> random_j0op(Rng& rng, int chains = 2) {
  J0OpSum<Rational> op;
  for (int c = 0; c < chains; ++c) op.chains.push_back(random_j0chain(rng));
  return op;
}

/// Arbitrary block draw (a, b, c, d unconstrained).
inline BlockR<Rational> random_blockr(Rng& rng, const Context<Rational>& ctx) {
  return blocks::generic(random_j0op(rng), random_j0op(rng), random_j0op(rng), random_j0op(rng),
                         ctx);
}

/// Skew draw: a = T - T*, d = U - U*, c = V, b = V*; gives a skew-symmetric
/// block matrix of the admissible shape.
inline BlockR<Rational> random_skew_blockr(Rng& rng, const Context<Rational>& ctx) {
  J0OpSum<Rational> T = random_j0op(rng), U = random_j0op(rng), V = random_j0op(rng);
  return blocks::generic(T - T.adjoint(), V.adjoint(), V, U - U.adjoint(), ctx);
}

}  // namespace qgd
