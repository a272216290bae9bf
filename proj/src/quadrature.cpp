#include "nf3/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nf3 {

namespace {

// Legendre P_n(x) and its derivative by the three-term recurrence.
std::pair<double, double> legendre_pair(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

GaussLegendre compute_rule(int q) {
  GaussLegendre rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  for (int i = 0; i < q; ++i) {
    // Tricomi initial guess, then Newton.
    double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_pair(q, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p, dp] = legendre_pair(q, x);
    (void)p;
    rule.nodes[q - 1 - i] = x;  // store ascending
    rule.weights[q - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Neumaier-compensated add of one complex row into (sum, comp).  With many
// panels and a strongly cancelling integrand the plain running sum would put
// its rounding floor above the quadrature truncation; compensation keeps the
// accumulation error independent of the panel count.
void accumulate(Eigen::RowVectorXcd& sum, Eigen::RowVectorXcd& comp,
                const Eigen::RowVectorXcd& term) {
  auto add1 = [](double& s, double& c, double t) {
    const double v = s + t;
    c += (std::abs(s) >= std::abs(t)) ? (s - v) + t : (t - v) + s;
    s = v;
  };
  for (Eigen::Index j = 0; j < sum.size(); ++j) {
    double sr = sum[j].real(), si = sum[j].imag();
    double cr = comp[j].real(), ci = comp[j].imag();
    add1(sr, cr, term[j].real());
    add1(si, ci, term[j].imag());
    sum[j] = std::complex<double>(sr, si);
    comp[j] = std::complex<double>(cr, ci);
  }
}

}  // namespace

const GaussLegendre& gauss_legendre(int q) {
  if (q < 1) throw std::invalid_argument("gauss_legendre: q must be >= 1");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, compute_rule(q)).first;
  return it->second;
}

PanelIntegrator::PanelIntegrator(double a, double b, int panels, int q)
    : a_(a), panels_(panels), q_(q) {
  if (panels < 1 || q < 2) throw std::invalid_argument("PanelIntegrator: bad subdivision");
  if (!(b > a)) throw std::invalid_argument("PanelIntegrator: empty interval");
  dx_ = (b - a) / panels;

  const GaussLegendre& rule = gauss_legendre(q);
  nodes_.resize(panels * q);
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * dx_;
    for (int i = 0; i < q; ++i) nodes_[p * q + i] = mid + 0.5 * dx_ * rule.nodes[i];
  }

  // P_k at the reference nodes, k = 0..q (one extra order for the
  // antiderivative recurrence).
  Eigen::MatrixXd P(q + 1, q);
  for (int i = 0; i < q; ++i) {
    P(0, i) = 1.0;
    P(1, i) = rule.nodes[i];
    for (int k = 2; k <= q; ++k)
      P(k, i) = ((2 * k - 1) * rule.nodes[i] * P(k - 1, i) - (k - 1) * P(k - 2, i)) / k;
  }

  coef_.resize(q, q);
  for (int k = 0; k < q; ++k)
    for (int i = 0; i < q; ++i)
      coef_(k, i) = 0.5 * (2 * k + 1) * rule.weights[i] * P(k, i);

  anti_.resize(q, q);
  for (int i = 0; i < q; ++i) {
    anti_(i, 0) = rule.nodes[i] + 1.0;  // ∫_{-1}^{x} P_0
    for (int k = 1; k < q; ++k)
      anti_(i, k) = (P(k + 1, i) - P(k - 1, i)) / (2 * k + 1);
  }
}

Eigen::MatrixXcd PanelIntegrator::prefix(const Eigen::MatrixXcd& values,
                                         Eigen::RowVectorXcd* total) const {
  if (values.rows() != nodes_.size())
    throw std::invalid_argument("PanelIntegrator::prefix: row count mismatch");
  const auto cols = values.cols();
  Eigen::MatrixXcd out(values.rows(), cols);
  Eigen::RowVectorXcd running = Eigen::RowVectorXcd::Zero(cols);
  Eigen::RowVectorXcd comp = Eigen::RowVectorXcd::Zero(cols);
  for (int p = 0; p < panels_; ++p) {
    const Eigen::MatrixXcd coeffs = coef_ * values.middleRows(p * q_, q_);
    out.middleRows(p * q_, q_) =
        ((0.5 * dx_) * (anti_ * coeffs)).rowwise() + (running + comp);
    accumulate(running, comp, dx_ * coeffs.row(0));
  }
  if (total) *total = running + comp;
  return out;
}

Eigen::RowVectorXcd PanelIntegrator::integrate(const Eigen::MatrixXcd& values) const {
  if (values.rows() != nodes_.size())
    throw std::invalid_argument("PanelIntegrator::integrate: row count mismatch");
  const GaussLegendre& rule = gauss_legendre(q_);
  Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(values.cols());
  Eigen::RowVectorXcd comp = Eigen::RowVectorXcd::Zero(values.cols());
  for (int p = 0; p < panels_; ++p)
    accumulate(acc, comp,
               rule.weights.transpose() * values.middleRows(p * q_, q_));
  return (0.5 * dx_) * (acc + comp);
}

int PanelIntegrator::panels_for_rate(double rate, double len, int q) {
  // A q-point panel resolves oscillation up to roughly q radians across the
  // panel; 0.6q leaves the Legendre tail of e^{iθξ} far below 1e-14.
  const double phase = std::abs(rate) * len;
  return std::max(1, static_cast<int>(std::ceil(phase / (0.6 * q))));
}

}  // namespace nf3
