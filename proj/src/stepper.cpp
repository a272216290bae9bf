#include "nf3/stepper.hpp"

#include <cmath>
#include <complex>

#include "nf3/quadrature.hpp"
#include "nf3/reference.hpp"

namespace nf3 {

namespace {

using cplx = std::complex<double>;

ModeSamples sample_mode(const Mode& m, double t, double h) {
  ModeSamples s;
  s.a0 = m.alpha(t);
  s.ah = m.alpha(t + h);
  s.da0 = m.dalpha(t);
  s.dah = m.dalpha(t + h);
  return s;
}

/// e^{iω t Σn}: the window-start phase each correction term carries.
cplx window_phase(double omega, double t, long nsum) {
  return std::exp(cplx(0.0, omega * t * static_cast<double>(nsum)));
}

void check_step_inputs(const StateVector& u, const StepPlan& plan,
                       const Problem& prob) {
  if (plan.h <= 0.0 || !plan.moments)
    throw std::invalid_argument("step: plan not initialized");
  if (u.values.size() != prob.op.side())
    throw std::invalid_argument("step: state/operator size mismatch");
  if (plan.exp_h.matrix.rows() != prob.op.side())
    throw std::invalid_argument("step: plan built for a different operator");
}

/// Shared assembly of both schemes; `resonant_pairs` diverts n₁ + n₂ = 0
/// pairs to the bilinear treatment.
StateVector assemble_step(const StateVector& u, double t, const StepPlan& plan,
                          const Problem& prob, bool resonant_pairs) {
  check_step_inputs(u, plan, prob);
  const double h = plan.h;
  const double omega = prob.potential.omega;
  const auto& modes = prob.potential.modes;
  const MomentTable& mom = *plan.moments;

  const StepContext ctx = make_step_context(prob.op, plan.exp_h, u.values);

  std::vector<ModeSamples> ms;
  ms.reserve(modes.size());
  for (const Mode& m : modes) ms.push_back(sample_mode(m, t, h));

  Eigen::VectorXcd out = ctx.Eu;

  for (std::size_t j = 0; j < modes.size(); ++j) {
    const auto s = sample_univariate(ctx, ms[j]);
    const auto a = hermite_univariate(s, h);
    Eigen::VectorXcd term = Eigen::VectorXcd::Zero(out.size());
    for (int k = 0; k < 4; ++k)
      term += a.a[k] * mom.univariate(k, modes[j].n);
    out += window_phase(omega, t, modes[j].n) * term;
  }

  for (std::size_t j1 = 0; j1 < modes.size(); ++j1) {
    for (std::size_t j2 = 0; j2 < modes.size(); ++j2) {
      const long n1 = modes[j1].n, n2 = modes[j2].n;
      if (resonant_pairs && n1 + n2 == 0) continue;
      const auto s = sample_bivariate(ctx, ms[j1], ms[j2]);
      const auto a = linear_bivariate(s, h);
      const Eigen::VectorXcd term =
          a.a0 * mom.bivariate(MonomialIndex::bi(0, 0), n1, n2) +
          a.a1 * mom.bivariate(MonomialIndex::bi(1, 0), n1, n2) +
          a.a2 * mom.bivariate(MonomialIndex::bi(0, 1), n1, n2);
      out += window_phase(omega, t, n1 + n2) * term;
    }
  }

  if (resonant_pairs) {
    // Each ±n pair contributes once, through the paired resonant moments;
    // the phase prefactor is 1 because n₁ + n₂ = 0.
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const long n = modes[j].n;
      if (n <= 0) continue;
      bool has_partner = false;
      for (const Mode& other : modes)
        if (other.n == -n) has_partner = true;
      if (!has_partner) continue;

      const auto s = sample_bivariate(ctx, ms[j], ms[j]);
      std::vector<Eigen::VectorXcd> a_nodes, da_nodes;
      a_nodes.reserve(plan.diag_quad.tau.size());
      da_nodes.reserve(plan.diag_quad.tau.size());
      for (double tau : plan.diag_quad.tau) {
        a_nodes.push_back(modes[j].alpha(t + tau));
        da_nodes.push_back(modes[j].dalpha(t + tau));
      }
      const Eigen::VectorXcd X = diagonal_derivative_integral(
          prob.op, plan.diag_quad, a_nodes, da_nodes, u.values);
      const auto c = resonant_bivariate(s, X, h);
      out += c.c0 * mom.resonant_pair(MonomialIndex::bi(0, 0), n) +
             c.c1 * mom.resonant_pair(MonomialIndex::bi(1, 0), n) +
             c.c2 * mom.resonant_pair(MonomialIndex::bi(0, 1), n) +
             c.c12 * mom.resonant_pair(MonomialIndex::bi(1, 1), n);
    }
  }

  for (std::size_t j1 = 0; j1 < modes.size(); ++j1) {
    for (std::size_t j2 = 0; j2 < modes.size(); ++j2) {
      for (std::size_t j3 = 0; j3 < modes.size(); ++j3) {
        const long n1 = modes[j1].n, n2 = modes[j2].n, n3 = modes[j3].n;
        const auto s = sample_trivariate(ctx, ms[j1], ms[j2], ms[j3]);
        const auto a = linear_trivariate(s, h);
        const Eigen::VectorXcd term =
            a.a0 * mom.trivariate(MonomialIndex::tri(0, 0, 0), n1, n2, n3) +
            a.a1 * mom.trivariate(MonomialIndex::tri(1, 0, 0), n1, n2, n3) +
            a.a2 * mom.trivariate(MonomialIndex::tri(0, 1, 0), n1, n2, n3) +
            a.a3 * mom.trivariate(MonomialIndex::tri(0, 0, 1), n1, n2, n3);
        out += window_phase(omega, t, n1 + n2 + n3) * term;
      }
    }
  }

  return StateVector{std::move(out), u.grid, u.lifted};
}

}  // namespace

StepPlan make_step_plan(const Problem& prob, double h, bool resonance) {
  if (h <= 0.0) throw std::invalid_argument("step plan: h must be positive");
  if (resonance && !prob.potential.symmetric)
    throw std::invalid_argument(
        "step plan: resonance scheme requires a symmetric potential");

  StepPlan plan;
  plan.h = h;
  plan.exp_h = matrix_exp(prob.op, h);
  plan.moments = std::make_shared<MomentTable>(prob.potential.omega, h);
  plan.resonance = resonance;
  if (resonance) plan.diag_quad = make_diagonal_quadrature(prob.op, h, 4);
  return plan;
}

StateVector nf3_step(const StateVector& u, double t, const StepPlan& plan,
                     const Problem& prob) {
  return assemble_step(u, t, plan, prob, /*resonant_pairs=*/false);
}

StateVector nf3_resonance_step(const StateVector& u, double t,
                               const StepPlan& plan, const Problem& prob) {
  if (!prob.potential.symmetric)
    throw std::invalid_argument(
        "resonance step: potential is not symmetric (alpha_{-n} != alpha_n)");
  return assemble_step(u, t, plan, prob, /*resonant_pairs=*/true);
}

Trajectory integrate(const Problem& prob, double h, Method method) {
  if (h <= 0.0) throw std::invalid_argument("integrate: h must be positive");
  const double T = prob.t_star;
  if (T <= 0.0) throw std::invalid_argument("integrate: horizon must be positive");

  long full_steps = static_cast<long>(std::floor(T / h + 1e-9));
  double rem = T - static_cast<double>(full_steps) * h;
  if (rem <= 1e-12 * std::max(1.0, T)) rem = 0.0;

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(prob.initial);

  StepPlan plan, plan_rem;
  if (method == Method::Nf3 || method == Method::Nf3Resonance) {
    plan = make_step_plan(prob, h, method == Method::Nf3Resonance);
    if (rem > 0.0)
      plan_rem = make_step_plan(prob, rem, method == Method::Nf3Resonance);
  }

  StateVector u = prob.initial;
  const auto advance = [&](double t, double dt, const StepPlan& p) {
    switch (method) {
      case Method::Nf3:
        u = nf3_step(u, t, p, prob);
        break;
      case Method::Nf3Resonance:
        u = nf3_resonance_step(u, t, p, prob);
        break;
      case Method::M2:
        u = m2_step(u, t, dt, prob);
        break;
      case Method::M4:
        u = m4_step(u, t, dt, prob);
        break;
    }
    if (!u.values.allFinite())
      throw NonFiniteState("integration produced a non-finite state");
  };

  for (long k = 0; k < full_steps; ++k) {
    const double t = static_cast<double>(k) * h;
    advance(t, h, plan);
    traj.times.push_back(static_cast<double>(k + 1) * h);
    traj.states.push_back(u);
  }
  if (rem > 0.0) {
    advance(static_cast<double>(full_steps) * h, rem, plan_rem);
    traj.times.push_back(T);
    traj.states.push_back(u);
  }
  return traj;
}

Eigen::VectorXcd neumann_bruteforce(const Problem& prob, double t0, double h,
                                    int depth, int quad_order) {
  const Eigen::Index n = prob.op.side();
  if (n > 4)
    throw std::invalid_argument("series brute force: state too large");
  if (depth < 0 || depth > 4)
    throw std::invalid_argument("series brute force: depth out of range");
  if (quad_order < 4)
    throw std::invalid_argument("series brute force: quadrature order too low");
  if (h <= 0.0)
    throw std::invalid_argument("series brute force: h must be positive");

  // Diagonalize once so the two-sided propagators inside the iterated
  // integrals factor into prefix integrals of e^{-sΛ}·(…) against a shared
  // node grid.
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(prob.op.matrix);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("series brute force: eigendecomposition failed");
  const Eigen::MatrixXcd V = es.eigenvectors();
  const Eigen::VectorXcd lam = es.eigenvalues();
  const auto Vlu = V.partialPivLu();

  double spec_radius = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    spec_radius = std::max(spec_radius, std::abs(lam(i)));
  if (spec_radius * h > 100.0)
    throw std::invalid_argument(
        "series brute force: spectral radius too large for stable prefixes");

  double nhat = 0.0;
  for (const Mode& m : prob.potential.modes)
    nhat = std::max(nhat, std::abs(static_cast<double>(m.n)));
  // Each nesting level multiplies by f and keeps the accumulated phase of the
  // levels below it, so the deepest integrand oscillates at up to depth·n̂ω.
  const double rate =
      std::max(1, depth) * nhat * prob.potential.omega + 2.0 * spec_radius;

  const int q = quad_order;
  const int panels = PanelIntegrator::panels_for_rate(rate, h, q);
  const PanelIntegrator rule(0.0, h, panels, q);
  const Eigen::VectorXd& s = rule.nodes();
  const Eigen::Index S = s.size();

  std::vector<Eigen::VectorXcd> f_nodes(S);
  for (Eigen::Index i = 0; i < S; ++i)
    f_nodes[i] = oscillatory_sum(prob.potential, t0 + s(i));

  const auto exp_lam = [&](double tau) {
    return (tau * lam.array()).exp().matrix().asDiagonal();
  };

  const Eigen::VectorXcd& u = prob.initial.values;
  const Eigen::VectorXcd G0 = Vlu.solve(u);

  // S_d sampled at the grid; level 0 is the bare semigroup orbit.
  Eigen::MatrixXcd level(S, n);
  for (Eigen::Index i = 0; i < S; ++i)
    level.row(i) = (V * (exp_lam(s(i)) * G0)).transpose();

  Eigen::VectorXcd total = V * (exp_lam(h) * G0);

  for (int d = 1; d <= depth; ++d) {
    Eigen::MatrixXcd g(S, n);
    for (Eigen::Index i = 0; i < S; ++i) {
      const Eigen::VectorXcd w = multiplier_apply(
          f_nodes[i], level.row(i).transpose(), prob.op.lifted);
      g.row(i) = (exp_lam(-s(i)) * Vlu.solve(w)).transpose();
    }
    Eigen::RowVectorXcd tail;
    const Eigen::MatrixXcd prefix = rule.prefix(g, &tail);
    for (Eigen::Index i = 0; i < S; ++i)
      level.row(i) = (V * (exp_lam(s(i)) * prefix.row(i).transpose())).transpose();
    total += V * (exp_lam(h) * tail.transpose());
  }
  return total;
}

}  // namespace nf3
