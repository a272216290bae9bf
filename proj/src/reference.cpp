#include "nf3/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace nf3 {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Eigen::MatrixXcd full_generator(const Problem& prob, double t) {
  Eigen::MatrixXcd G = prob.op.matrix;
  if (prob.potential.modes.empty()) return G;
  const Eigen::VectorXcd f = oscillatory_sum(prob.potential, t);
  if (prob.kind == ProblemKind::WaveLifted) {
    const Eigen::Index n = f.size();
    require(G.rows() == 2 * n, "full_generator: lifted size mismatch");
    G.bottomLeftCorner(n, n) += Eigen::MatrixXcd(f.asDiagonal());
  } else {
    require(G.rows() == f.size(), "full_generator: size mismatch");
    G += Eigen::MatrixXcd(f.asDiagonal());
  }
  return G;
}

StateVector m2_step(const StateVector& u, double t, double h, const Problem& prob) {
  require(u.values.size() == prob.op.side(), "m2_step: state size mismatch");
  StateVector out = u;
  out.values = matrix_exp_dense(h * full_generator(prob, t + 0.5 * h)) * u.values;
  return out;
}

StateVector m4_step(const StateVector& u, double t, double h, const Problem& prob) {
  require(u.values.size() == prob.op.side(), "m4_step: state size mismatch");
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
  const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
  const Eigen::MatrixXcd G1 = full_generator(prob, t + c1 * h);
  const Eigen::MatrixXcd G2 = full_generator(prob, t + c2 * h);
  const Eigen::MatrixXcd arg =
      0.5 * h * (G1 + G2) +
      (h * h * std::sqrt(3.0) / 12.0) * (G2 * G1 - G1 * G2);
  StateVector out = u;
  out.values = matrix_exp_dense(arg) * u.values;
  return out;
}

double error_l2(const StateVector& u_num, const AnalyticSolution& exact, double t) {
  require(u_num.grid.state_length() == exact.grid.state_length(),
          "error_l2: grid mismatch");
  require(u_num.lifted == exact.lifted, "error_l2: lift mismatch");
  const Eigen::VectorXcd ref = exact.state(t);
  require(ref.size() == u_num.values.size(), "error_l2: state length mismatch");
  const Eigen::Index n = u_num.grid.state_length();
  const Eigen::VectorXcd diff =
      u_num.lifted ? (u_num.values.head(n) - ref.head(n)).eval()
                   : (u_num.values - ref).eval();
  const Eigen::VectorXd& w = u_num.grid.weights;
  require(w.size() == diff.size(), "error_l2: weight length mismatch");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) acc += w[i] * std::norm(diff[i]);
  return std::sqrt(acc);
}

}  // namespace nf3
