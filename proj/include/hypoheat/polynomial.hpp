#pragma once

#include <array>
#include <map>
#include <string>

#include "hypoheat/rational.hpp"

namespace hypoheat {

/// Sparse multivariate polynomial in N variables over an exact or floating
/// coefficient ring. Terms map exponent tuples to nonzero coefficients.
template <int N, typename C>
class SparsePoly {
 public:
  using Exponents = std::array<int, N>;
  using TermMap = std::map<Exponents, C>;

  SparsePoly() = default;

  static SparsePoly constant(const C& c) {
    SparsePoly p;
    p.add_term(Exponents{}, c);
    return p;
  }

  static SparsePoly variable(int index, int power = 1) {
    Exponents e{};
    e[index] = power;
    SparsePoly p;
    p.add_term(e, C(1));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int total_degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) {
      int d = 0;
      for (int k : e) d += k;
      if (d > deg) deg = d;
    }
    return deg;
  }

  SparsePoly& add_term(const Exponents& e, const C& c) {
    if (c == C(0)) return *this;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == C(0)) terms_.erase(it);
    }
    return *this;
  }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }

  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }

  SparsePoly operator-() const {
    SparsePoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e;
        for (int k = 0; k < N; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  friend SparsePoly operator*(const C& s, const SparsePoly& a) {
    SparsePoly r;
    if (s == C(0)) return r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
    return r;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.terms_ == b.terms_;
  }

  /// Partial derivative with respect to variable `index`.
  SparsePoly derivative(int index) const {
    SparsePoly r;
    for (const auto& [e, c] : terms_) {
      if (e[index] == 0) continue;
      Exponents d = e;
      d[index] -= 1;
      r.add_term(d, c * C(e[index]));
    }
    return r;
  }

  /// Multiplication by a single variable power (monomial shift).
  SparsePoly shifted(int index, int power) const {
    SparsePoly r;
    for (const auto& [e, c] : terms_) {
      Exponents d = e;
      d[index] += power;
      r.terms_.emplace(d, c);
    }
    return r;
  }

  template <typename V>
  V eval(const std::array<V, N>& point) const {
    V acc = V(0);
    for (const auto& [e, c] : terms_) {
      V term = V(to_double(c));
      for (int k = 0; k < N; ++k)
        for (int p = 0; p < e[k]; ++p) term *= point[k];
      acc += term;
    }
    return acc;
  }

  /// Exact evaluation, only meaningful for exact coefficient rings.
  C eval_exact(const std::array<C, N>& point) const {
    C acc = C(0);
    for (const auto& [e, c] : terms_) {
      C term = c;
      for (int k = 0; k < N; ++k)
        for (int p = 0; p < e[k]; ++p) term *= point[k];
      acc += term;
    }
    return acc;
  }

  std::string to_string(const std::array<std::string, N>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      std::string coeff = coeff_string(c);
      std::string mono;
      for (int k = 0; k < N; ++k) {
        if (e[k] == 0) continue;
        if (!mono.empty()) mono += " ";
        mono += names[k];
        if (e[k] > 1) mono += "^" + std::to_string(e[k]);
      }
      std::string term;
      if (mono.empty()) {
        term = coeff;
      } else if (coeff == "1") {
        term = mono;
      } else if (coeff == "-1") {
        term = "-" + mono;
      } else {
        term = coeff + " " + mono;
      }
      if (first) {
        out = term;
        first = false;
      } else if (!term.empty() && term.front() == '-') {
        out += " - " + term.substr(1);
      } else {
        out += " + " + term;
      }
    }
    return out;
  }

 private:
  static std::string coeff_string(const Rational& c) { return to_fraction_string(c); }
  static std::string coeff_string(double c) { return format_double(c); }

  TermMap terms_;
};

}  // namespace hypoheat
