#pragma once

#include <stdexcept>
#include <vector>

#include "qgd/frac.hpp"

namespace qgd {

/// n x n matrix over C((z^-1)) at desk scale: the loop algebra Lgl(n).
template <class S>
class LoopMat {
public:
  LoopMat() : n_(0) {}
  explicit LoopMat(int n) : n_(n), e_(static_cast<size_t>(n) * n) {}

  static LoopMat identity(int n) {
    LoopMat m(n);
    for (int k = 0; k < n; ++k) m.at(k, k) = LaurentPoly<S>(S(1));
    return m;
  }

  int n() const { return n_; }
  LaurentPoly<S>& at(int r, int c) { return e_[static_cast<size_t>(r) * n_ + c]; }
  const LaurentPoly<S>& at(int r, int c) const { return e_[static_cast<size_t>(r) * n_ + c]; }

  LoopMat operator-() const {
    LoopMat r(n_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = -e_[k];
    return r;
  }
  friend LoopMat operator+(const LoopMat& a, const LoopMat& b) {
    LoopMat r(a.n_);
    for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
    return r;
  }
  friend LoopMat operator-(const LoopMat& a, const LoopMat& b) { return a + (-b); }
  friend LoopMat operator*(const LoopMat& a, const LoopMat& b) {
    LoopMat r(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j < a.n_; ++j) {
        LaurentPoly<S> s;
        for (int k = 0; k < a.n_; ++k) s += a.at(i, k) * b.at(k, j);
        r.at(i, j) = std::move(s);
      }
    return r;
  }
  friend bool operator==(const LoopMat& a, const LoopMat& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

  bool is_zero() const {
    for (auto& p : e_)
      if (!p.is_zero()) return false;
    return true;
  }

  LaurentPoly<S> trace_poly() const {
    LaurentPoly<S> t;
    for (int k = 0; k < n_; ++k) t += at(k, k);
    return t;
  }

private:
  int n_;
  std::vector<LaurentPoly<S>> e_;
};

/// Entrywise dilation ^h^t M.
template <class S>
LoopMat<S> dilate(const LoopMat<S>& m, long t, const Context<S>& ctx) {
  LoopMat<S> r(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) r.at(i, j) = dilate(m.at(i, j), t, ctx);
  return r;
}

/// <A, B> = integral of Tr(A B) dz/z.
template <class S>
S loop_inner(const LoopMat<S>& a, const LoopMat<S>& b) {
  S acc(0);
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) acc += formal_integral(a.at(i, j) * b.at(j, i));
  return acc;
}

/// Companion matrix of L = D^n + u_{n-1} D^{n-1} + ... + u_0.
template <class S>
LoopMat<S> companion_of(const MonicQDiff<S>& L) {
  int n = L.n();
  LoopMat<S> m(n);
  for (int k = 0; k + 1 < n; ++k) m.at(k, k + 1) = LaurentPoly<S>(S(1));
  for (int j = 0; j < n; ++j) m.at(n - 1, j) = -L.u(j);
  return m;
}

template <class S>
bool is_companion(const LoopMat<S>& m) {
  int n = m.n();
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i + 1) {
        if (m.at(i, j) != LaurentPoly<S>(S(1))) return false;
      } else if (!m.at(i, j).is_zero()) {
        return false;
      }
    }
  return true;
}

/// Member of Y_n: superdiagonal ones, zeros strictly above, arbitrary at or
/// below the diagonal.
template <class S>
bool is_yn(const LoopMat<S>& m) {
  int n = m.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (j == i + 1 && i + 1 < n) {
        if (m.at(i, j) != LaurentPoly<S>(S(1))) return false;
      } else if (!m.at(i, j).is_zero()) {
        return false;
      }
    }
  return true;
}

/// Unipotent lower-triangular gauge element; inverse by forward substitution.
template <class S>
bool is_unipotent_lower(const LoopMat<S>& m) {
  int n = m.n();
  for (int i = 0; i < n; ++i) {
    if (m.at(i, i) != LaurentPoly<S>(S(1))) return false;
    for (int j = i + 1; j < n; ++j)
      if (!m.at(i, j).is_zero()) return false;
  }
  return true;
}

template <class S>
LoopMat<S> unipotent_inverse(const LoopMat<S>& s) {
  if (!is_unipotent_lower(s)) throw std::invalid_argument("gauge element must be unipotent lower");
  int n = s.n();
  LoopMat<S> x = LoopMat<S>::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      LaurentPoly<S> acc;
      for (int k = j; k < i; ++k) acc += s.at(i, k) * x.at(k, j);
      x.at(i, j) = -acc;
    }
  return x;
}

/// Gauge action S : M -> (^h S) M S^{-1}.
template <class S>
LoopMat<S> gauge(const LoopMat<S>& s, const LoopMat<S>& m, const Context<S>& ctx) {
  return dilate(s, 1, ctx) * m * unipotent_inverse(s);
}

/// The unique unipotent lower-triangular S carrying an element of Y_n to its
/// companion representative, by forward elimination against the
/// superdiagonal ones. Returns (S, companion).
template <class S>
std::pair<LoopMat<S>, MonicQDiff<S>> gauge_to_companion(const LoopMat<S>& y,
                                                        const Context<S>& ctx) {
  if (!is_yn(y)) throw std::invalid_argument("gauge_to_companion: input is not in Y_n");
  int n = y.n();
  // row recursion s_{k+1} = (^h s_k) y, starting from s_0 = e_0
  std::vector<std::vector<LaurentPoly<S>>> srow(n, std::vector<LaurentPoly<S>>(n));
  srow[0][0] = LaurentPoly<S>(S(1));
  auto step = [&](const std::vector<LaurentPoly<S>>& v) {
    std::vector<LaurentPoly<S>> w(n);
    for (int j = 0; j < n; ++j) {
      LaurentPoly<S> acc;
      for (int i = 0; i < n; ++i) {
        if (v[i].is_zero()) continue;
        acc += dilate(v[i], 1, ctx) * y.at(i, j);
      }
      w[j] = std::move(acc);
    }
    return w;
  };
  for (int k = 0; k + 1 < n; ++k) srow[k + 1] = step(srow[k]);
  std::vector<LaurentPoly<S>> t = step(srow[n - 1]);
  // solve sum_j u_j s_j = -t by back substitution against the unit pivots
  std::vector<LaurentPoly<S>> u(n);
  for (int j = n - 1; j >= 0; --j) {
    LaurentPoly<S> acc = -t[j];
    for (int k = j + 1; k < n; ++k) acc -= u[k] * srow[k][j];
    u[j] = std::move(acc);
  }
  LoopMat<S> s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.at(i, j) = srow[i][j];
  return {s, MonicQDiff<S>(n, std::move(u))};
}

}  // namespace qgd
