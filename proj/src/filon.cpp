#include "nf3/filon.hpp"

#include <stdexcept>

#include "nf3/quadrature.hpp"

namespace nf3 {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

StepContext make_step_context(const EllipticOperator& op,
                              const Propagator& exp_h,
                              const Eigen::VectorXcd& u) {
  require(exp_h.matrix.rows() == op.side(),
          "step context: propagator/operator size mismatch");
  require(u.size() == op.side(), "step context: state/operator size mismatch");
  require(exp_h.step > 0.0, "step context: propagator step must be positive");

  StepContext ctx;
  ctx.op = &op;
  ctx.exp_h = &exp_h;
  ctx.h = exp_h.step;
  ctx.u = u;
  ctx.Eu = exp_h.apply(u);
  return ctx;
}

UnivariateSamples sample_univariate(const StepContext& ctx,
                                    const ModeSamples& m) {
  const bool lifted = ctx.op->lifted;
  const Propagator& E = *ctx.exp_h;

  UnivariateSamples s;
  s.F0 = E.apply(multiplier_apply(m.a0, ctx.u, lifted));
  s.dF0 = E.apply(-commutator_apply(*ctx.op, m.a0, ctx.u) +
                  multiplier_apply(m.da0, ctx.u, lifted));
  s.Fh = multiplier_apply(m.ah, ctx.Eu, lifted);
  s.dFh = -commutator_apply(*ctx.op, m.ah, ctx.Eu) +
          multiplier_apply(m.dah, ctx.Eu, lifted);
  return s;
}

BivariateSamples sample_bivariate(const StepContext& ctx,
                                  const ModeSamples& inner,
                                  const ModeSamples& outer) {
  const bool lifted = ctx.op->lifted;
  const Propagator& E = *ctx.exp_h;
  const auto mul = [lifted](const Eigen::VectorXcd& a,
                            const Eigen::VectorXcd& v) {
    return multiplier_apply(a, v, lifted);
  };

  BivariateSamples s;
  const Eigen::VectorXcd inner0_u = mul(inner.a0, ctx.u);
  s.F00 = E.apply(mul(outer.a0, inner0_u));
  s.F0h = mul(outer.ah, E.apply(inner0_u));
  s.Fhh = mul(outer.ah, mul(inner.ah, ctx.Eu));
  return s;
}

TrivariateSamples sample_trivariate(const StepContext& ctx,
                                    const ModeSamples& m1,
                                    const ModeSamples& m2,
                                    const ModeSamples& m3) {
  const bool lifted = ctx.op->lifted;
  const Propagator& E = *ctx.exp_h;
  const auto mul = [lifted](const Eigen::VectorXcd& a,
                            const Eigen::VectorXcd& v) {
    return multiplier_apply(a, v, lifted);
  };

  TrivariateSamples s;
  const Eigen::VectorXcd v1 = mul(m1.a0, ctx.u);
  const Eigen::VectorXcd v21 = mul(m2.a0, v1);
  s.F000 = E.apply(mul(m3.a0, v21));
  s.F00h = mul(m3.ah, E.apply(v21));
  s.F0hh = mul(m3.ah, mul(m2.ah, E.apply(v1)));
  s.Fhhh = mul(m3.ah, mul(m2.ah, mul(m1.ah, ctx.Eu)));
  return s;
}

HermiteCoeffs hermite_univariate(const UnivariateSamples& s, double h) {
  require(h > 0.0, "hermite_univariate: step must be positive");
  const Eigen::VectorXcd jump = s.Fh - s.F0;

  HermiteCoeffs c;
  c.a[0] = s.F0;
  c.a[1] = s.dF0;
  c.a[2] = (3.0 * jump - h * (2.0 * s.dF0 + s.dFh)) / (h * h);
  c.a[3] = (h * (s.dF0 + s.dFh) - 2.0 * jump) / (h * h * h);
  return c;
}

SimplexLinearCoeffs2 linear_bivariate(const BivariateSamples& s, double h) {
  require(h > 0.0, "linear_bivariate: step must be positive");
  SimplexLinearCoeffs2 c;
  c.a0 = s.F00;
  c.a1 = (s.Fhh - s.F0h) / h;
  c.a2 = (s.F0h - s.F00) / h;
  return c;
}

SimplexLinearCoeffs3 linear_trivariate(const TrivariateSamples& s, double h) {
  require(h > 0.0, "linear_trivariate: step must be positive");
  SimplexLinearCoeffs3 c;
  c.a0 = s.F000;
  c.a1 = (s.Fhhh - s.F0hh) / h;
  c.a2 = (s.F0hh - s.F00h) / h;
  c.a3 = (s.F00h - s.F000) / h;
  return c;
}

ResonantPairCoeffs resonant_bivariate(const BivariateSamples& s,
                                      const Eigen::VectorXcd& X, double h) {
  require(h > 0.0, "resonant_bivariate: step must be positive");
  require(X.size() == s.F00.size(), "resonant_bivariate: size mismatch");

  // Solve the four interpolation conditions for p = c0 + c1τ₁ + c2τ₂ +
  // c12τ₁τ₂:  p(0,0) = F00 and p(0,h) = F0h fix c0 and c2; the vertex
  // (h,h) and the diagonal condition c1·h + c12·h²/2 = X fix the rest.
  ResonantPairCoeffs c;
  c.c0 = s.F00;
  c.c2 = (s.F0h - s.F00) / h;
  c.c1 = (2.0 * X + s.F0h - s.Fhh) / h;
  c.c12 = 2.0 * (s.Fhh - s.F0h - X) / (h * h);
  return c;
}

DiagonalQuadrature make_diagonal_quadrature(const EllipticOperator& op,
                                            double h, int q) {
  require(h > 0.0, "diagonal quadrature: step must be positive");
  require(q >= 2, "diagonal quadrature: need at least two nodes");

  const GaussLegendre& rule = gauss_legendre(q);
  DiagonalQuadrature quad;
  quad.h = h;
  quad.tau.resize(q);
  quad.weight.resize(q);
  quad.forward.reserve(q);
  quad.backward.reserve(q);
  for (int j = 0; j < q; ++j) {
    const double tau = 0.5 * h * (rule.nodes(j) + 1.0);
    quad.tau[j] = tau;
    quad.weight[j] = 0.5 * h * rule.weights(j);
    quad.forward.push_back(matrix_exp(op, tau).matrix);
    quad.backward.push_back(matrix_exp(op, h - tau).matrix);
  }
  return quad;
}

Eigen::VectorXcd diagonal_derivative_integral(
    const EllipticOperator& op, const DiagonalQuadrature& quad,
    const std::vector<Eigen::VectorXcd>& alpha_nodes,
    const std::vector<Eigen::VectorXcd>& dalpha_nodes,
    const Eigen::VectorXcd& u) {
  const std::size_t q = quad.tau.size();
  require(alpha_nodes.size() == q && dalpha_nodes.size() == q,
          "diagonal integral: node sample count mismatch");
  require(u.size() == op.side(), "diagonal integral: state size mismatch");

  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(u.size());
  for (std::size_t j = 0; j < q; ++j) {
    const Eigen::VectorXcd w = quad.forward[j] * u;
    const Eigen::VectorXcd y = -commutator_apply(op, alpha_nodes[j], w) +
                               multiplier_apply(dalpha_nodes[j], w, op.lifted);
    const Eigen::VectorXcd z = multiplier_apply(alpha_nodes[j], y, op.lifted);
    acc += quad.weight[j] * (quad.backward[j] * z);
  }
  return acc;
}

}  // namespace nf3
