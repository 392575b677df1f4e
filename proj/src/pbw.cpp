#include "hypoheat/pbw.hpp"

#include <stdexcept>

namespace hypoheat {

PBWPoly PBWPoly::constant(const Rational& c) {
  PBWPoly p;
  p.add_term({0, 0, 0}, c);
  return p;
}

PBWPoly PBWPoly::generator(Gen g) {
  Exponents e{};
  e[static_cast<int>(g)] = 1;
  return monomial(e, Rational(1));
}

PBWPoly PBWPoly::monomial(const Exponents& e, const Rational& c) {
  PBWPoly p;
  p.add_term(e, c);
  return p;
}

int PBWPoly::total_degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) {
    int d = e[0] + e[1] + e[2];
    if (d > deg) deg = d;
  }
  return deg;
}

PBWPoly& PBWPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return *this;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

PBWPoly operator+(const PBWPoly& a, const PBWPoly& b) {
  PBWPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

PBWPoly operator-(const PBWPoly& a, const PBWPoly& b) {
  PBWPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
  return r;
}

PBWPoly PBWPoly::operator-() const {
  PBWPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

PBWPoly operator*(const Rational& s, const PBWPoly& a) {
  PBWPoly r;
  if (s == 0) return r;
  for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
  return r;
}

std::string PBWPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  static const char* names[3] = {"X", "Y", "Z"};
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (int k = 0; k < 3; ++k) {
      if (e[k] == 0) continue;
      mono += names[k];
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    std::string coeff = to_fraction_string(c);
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
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

// Left multiplication by a generator keeps results normal-ordered: prefixing
// X is an exponent bump, prefixing Y or Z recurses on strictly smaller
// leading exponents via the bracket rewrites.
PBWPoly PbwAlgebra::lmul_gen_mono(Gen g, const PBWPoly::Exponents& e) const {
  const int a = e[0], b = e[1], c = e[2];
  switch (g) {
    case Gen::X:
      return PBWPoly::monomial({a + 1, b, c}, Rational(1));
    case Gen::Y: {
      if (a == 0) return PBWPoly::monomial({0, b + 1, c}, Rational(1));
      // Y X^a .. = X (Y X^{a-1} ..) - Z X^{a-1} ..
      PBWPoly inner = lmul_gen_mono(Gen::Y, {a - 1, b, c});
      PBWPoly r;
      for (const auto& [ee, cc] : inner.terms()) r.add_term({ee[0] + 1, ee[1], ee[2]}, cc);
      return r - lmul_gen_mono(Gen::Z, {a - 1, b, c});
    }
    case Gen::Z: {
      if (a == 0 && b == 0) return PBWPoly::monomial({0, 0, c + 1}, Rational(1));
      if (a == 0) {
        // Z Y^b Z^c = Y (Z Y^{b-1} Z^c) - rho X Y^{b-1} Z^c
        PBWPoly r = lmul_gen(Gen::Y, lmul_gen_mono(Gen::Z, {0, b - 1, c}));
        return r - rho_ * PBWPoly::monomial({1, b - 1, c}, Rational(1));
      }
      // Z X^a .. = X (Z X^{a-1} ..) + rho Y X^{a-1} ..
      PBWPoly inner = lmul_gen_mono(Gen::Z, {a - 1, b, c});
      PBWPoly r;
      for (const auto& [ee, cc] : inner.terms()) r.add_term({ee[0] + 1, ee[1], ee[2]}, cc);
      return r + rho_ * lmul_gen_mono(Gen::Y, {a - 1, b, c});
    }
  }
  return {};
}

PBWPoly PbwAlgebra::lmul_gen(Gen g, const PBWPoly& p) const {
  PBWPoly r;
  for (const auto& [e, c] : p.terms()) r = r + c * lmul_gen_mono(g, e);
  return r;
}

PBWPoly PbwAlgebra::mul(const PBWPoly& a, const PBWPoly& b) const {
  PBWPoly result;
  for (const auto& [e, c] : a.terms()) {
    PBWPoly r = b;
    for (int k = 0; k < e[2]; ++k) r = lmul_gen(Gen::Z, r);
    for (int k = 0; k < e[1]; ++k) r = lmul_gen(Gen::Y, r);
    if (e[0] > 0) {
      PBWPoly shifted;
      for (const auto& [ee, cc] : r.terms()) shifted.add_term({ee[0] + e[0], ee[1], ee[2]}, cc);
      r = shifted;
    }
    result = result + c * r;
  }
  return result;
}

PBWPoly PbwAlgebra::commutator(const PBWPoly& a, const PBWPoly& b) const {
  return mul(a, b) - mul(b, a);
}

PBWPoly PbwAlgebra::normal_form(const Word& word, ReduceOrder order) const {
  // Adjacent-pair rewriting on formal sums of words. A pair (u, v) is
  // reducible when u > v in the order X < Y < Z; the rewrite swaps the pair
  // and adds the bracket term, so each step lowers (length, inversions).
  PBWPoly result;
  struct Item {
    Word w;
    Rational c;
  };
  std::vector<Item> stack;
  stack.push_back({word, Rational(1)});

  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();

    int pos = -1;
    const int n = static_cast<int>(item.w.size());
    if (order == ReduceOrder::leftmost) {
      for (int i = 0; i + 1 < n; ++i)
        if (static_cast<int>(item.w[i]) > static_cast<int>(item.w[i + 1])) {
          pos = i;
          break;
        }
    } else {
      for (int i = n - 2; i >= 0; --i)
        if (static_cast<int>(item.w[i]) > static_cast<int>(item.w[i + 1])) {
          pos = i;
          break;
        }
    }

    if (pos < 0) {
      PBWPoly::Exponents e{};
      for (Gen g : item.w) e[static_cast<int>(g)] += 1;
      result.add_term(e, item.c);
      continue;
    }

    const Gen u = item.w[pos], v = item.w[pos + 1];
    Word swapped = item.w;
    std::swap(swapped[pos], swapped[pos + 1]);
    stack.push_back({std::move(swapped), item.c});

    // [Y,X] = -Z, [Z,X] = rho Y, [Z,Y] = -rho X.
    Rational coeff;
    Gen bracket_gen;
    if (u == Gen::Y && v == Gen::X) {
      coeff = Rational(-1);
      bracket_gen = Gen::Z;
    } else if (u == Gen::Z && v == Gen::X) {
      coeff = rho_;
      bracket_gen = Gen::Y;
    } else {
      coeff = -rho_;
      bracket_gen = Gen::X;
    }
    if (coeff != 0) {
      Word shorter;
      shorter.reserve(item.w.size() - 1);
      shorter.insert(shorter.end(), item.w.begin(), item.w.begin() + pos);
      shorter.push_back(bracket_gen);
      shorter.insert(shorter.end(), item.w.begin() + pos + 2, item.w.end());
      stack.push_back({std::move(shorter), item.c * coeff});
    }
  }
  return result;
}

PBWPoly PbwAlgebra::sub_laplacian() const {
  PBWPoly l;
  l.add_term({2, 0, 0}, Rational(1));
  l.add_term({0, 2, 0}, Rational(1));
  return l;
}

OpMatrix PbwAlgebra::box_matrix(const Rational& eps) const {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  const Rational inv_eps = Rational(1) / eps;
  OpMatrix box = box_infinity();
  // The torsion contribution -(1/eps) T d acts only through the third row
  // and the vertical diagonal term.
  box[2][0] = box[2][0] - inv_eps * PBWPoly::generator(Gen::Y);
  box[2][1] = box[2][1] + inv_eps * PBWPoly::generator(Gen::X);
  box[2][2] = box[2][2] - PBWPoly::constant(inv_eps);
  return box;
}

OpMatrix PbwAlgebra::box_infinity() const {
  OpMatrix box;
  const PBWPoly l = sub_laplacian();
  const PBWPoly l_minus_rho = l - PBWPoly::constant(rho_);
  box[0][0] = l_minus_rho;
  box[1][1] = l_minus_rho;
  box[2][2] = l;
  box[0][2] = Rational(2) * PBWPoly::generator(Gen::Y);
  box[1][2] = Rational(-2) * PBWPoly::generator(Gen::X);
  return box;
}

std::array<PBWPoly, 3> PbwAlgebra::commutation_residuals(const Rational& eps) const {
  const OpMatrix box = box_matrix(eps);
  const PBWPoly l = sub_laplacian();
  const std::array<PBWPoly, 3> d = {PBWPoly::generator(Gen::X), PBWPoly::generator(Gen::Y),
                                    PBWPoly::generator(Gen::Z)};
  std::array<PBWPoly, 3> residuals;
  for (int i = 0; i < 3; ++i) {
    PBWPoly r = mul(d[i], l);
    for (int j = 0; j < 3; ++j) r = r - mul(box[i][j], d[j]);
    residuals[i] = r;
  }
  return residuals;
}

bool parse_word(const std::string& text, Word& out) {
  out.clear();
  for (char ch : text) {
    switch (ch) {
      case 'x': case 'X': out.push_back(Gen::X); break;
      case 'y': case 'Y': out.push_back(Gen::Y); break;
      case 'z': case 'Z': out.push_back(Gen::Z); break;
      case ' ': break;
      default: return false;
    }
  }
  return true;
}

}  // namespace hypoheat
