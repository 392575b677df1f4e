#include "hypoheat/heis.hpp"

#include <stdexcept>

#include "hypoheat/model.hpp"
#include "hypoheat/rng.hpp"

namespace hypoheat {

namespace {
const Rational kHalf(1, 2);
}

HeisPoly apply_field(Field which, const HeisPoly& p) {
  switch (which) {
    case Field::X:
      return p.derivative(0) - kHalf * p.derivative(2).shifted(1, 1);
    case Field::Y:
      return p.derivative(1) + kHalf * p.derivative(2).shifted(0, 1);
    case Field::Z:
      return p.derivative(2);
  }
  return {};
}

HeisPoly sub_laplacian(const HeisPoly& p) {
  return apply_field(Field::X, apply_field(Field::X, p)) +
         apply_field(Field::Y, apply_field(Field::Y, p));
}

int weighted_degree(const HeisPoly& p) {
  int deg = -1;
  for (const auto& [e, c] : p.terms()) {
    int w = e[0] + e[1] + 2 * e[2];
    if (w > deg) deg = w;
  }
  return deg;
}

OneFormPoly exterior_d(const HeisPoly& f) {
  return {apply_field(Field::X, f), apply_field(Field::Y, f), apply_field(Field::Z, f)};
}

HeisPoly heat_apply(const Rational& t, const HeisPoly& f) {
  HeisPoly acc = f;
  HeisPoly term = f;
  const Rational half_t = t / 2;
  for (int k = 1; !term.is_zero(); ++k) {
    term = (half_t / k) * sub_laplacian(term);
    acc = acc + term;
  }
  return acc;
}

OneFormPoly box_apply(const Rational& eps, const OneFormPoly& eta) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  const Rational inv_eps = Rational(1) / eps;
  OneFormPoly out;
  out.f1 = sub_laplacian(eta.f1) + Rational(2) * apply_field(Field::Y, eta.g);
  out.f2 = sub_laplacian(eta.f2) - Rational(2) * apply_field(Field::X, eta.g);
  out.g = inv_eps * (apply_field(Field::X, eta.f2) - apply_field(Field::Y, eta.f1)) +
          sub_laplacian(eta.g) - inv_eps * eta.g;
  return out;
}

HeisPoly inner_2eps(const Rational& eps, const OneFormPoly& a, const OneFormPoly& b) {
  return a.f1 * b.f1 + a.f2 * b.f2 + (2 * eps) * (a.g * b.g);
}

HeisPoly norm2_2eps(const Rational& eps, const OneFormPoly& a) { return inner_2eps(eps, a, a); }

OneFormPoly apply_tensor(const QMat3& m, const OneFormPoly& eta) {
  const std::array<const HeisPoly*, 3> in = {&eta.f1, &eta.f2, &eta.g};
  std::array<HeisPoly, 3> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] = out[i] + m(i, j) * (*in[j]);
  return {out[0], out[1], out[2]};
}

HeisPoly bw_residual(const Rational& eps, const OneFormPoly& eta) {
  const TensorSet t = tensor_set(build_model(Rational(0)), eps);
  return bw_residual_with_tensors(eps, eta, t.t_x, t.t_y, t.ric, t.jj);
}

HeisPoly bw_residual_with_tensors(const Rational& eps, const OneFormPoly& eta, const QMat3& t_x,
                                  const QMat3& t_y, const QMat3& ric, const QMat3& jj) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");

  const HeisPoly lhs =
      kHalf * sub_laplacian(norm2_2eps(eps, eta)) - inner_2eps(eps, box_apply(eps, eta), eta);

  // The left-invariant coframe is parallel along horizontal directions, so
  // nabla_{X_i} eta acts coefficientwise.
  auto field_apply = [](Field which, const OneFormPoly& form) {
    return OneFormPoly{apply_field(which, form.f1), apply_field(which, form.f2),
                       apply_field(which, form.g)};
  };
  const OneFormPoly grad_x = field_apply(Field::X, eta) - apply_tensor(t_x, eta);
  const OneFormPoly grad_y = field_apply(Field::Y, eta) - apply_tensor(t_y, eta);
  HeisPoly rhs = norm2_2eps(eps, grad_x) + norm2_2eps(eps, grad_y);

  const Rational half_inv_eps = Rational(1) / (2 * eps);
  QMat3 curv = ric;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) curv(i, j) -= half_inv_eps * jj(i, j);
  rhs = rhs + inner_2eps(eps, apply_tensor(curv, eta), eta);

  return lhs - rhs;
}

HeisPoly random_heis_poly(SmallRng& rng, int max_degree) {
  HeisPoly p;
  const int n_terms = static_cast<int>(rng.uniform_int(1, 6));
  for (int t = 0; t < n_terms; ++t) {
    const int i = static_cast<int>(rng.uniform_int(0, max_degree));
    const int j = static_cast<int>(rng.uniform_int(0, max_degree - i));
    const int k = static_cast<int>(rng.uniform_int(0, max_degree - i - j));
    p.add_term({i, j, k}, rng.small_rational());
  }
  return p;
}

OneFormPoly random_one_form(SmallRng& rng, int max_degree) {
  return {random_heis_poly(rng, max_degree), random_heis_poly(rng, max_degree),
          random_heis_poly(rng, max_degree)};
}

}  // namespace hypoheat
