#include "spectrunc/approximation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spectrunc {

bool DefectReport::certified(double slack) const {
  if (degenerate) return defect_norm <= 1e-12;
  return ratio <= gamma_bound + slack;
}

TrigPolynomial sigma_rho(const TrigPolynomial& f, const TruncationPtr& truncation) {
  return fourier_multiply(truncation->symbol(), f);
}

TruncatedOperator rho_sigma(const TruncatedOperator& t) { return schur_multiply(t.truncation().symbol(), t); }

namespace {

DefectReport finish(DefectReport r, double degenerate_tol) {
  r.degenerate = r.lipschitz <= degenerate_tol;
  r.ratio = r.degenerate ? std::numeric_limits<double>::quiet_NaN() : r.defect_norm / r.lipschitz;
  return r;
}

}  // namespace

DefectReport function_defect(const TrigPolynomial& f, const TruncationPtr& truncation, double gamma,
                             std::size_t resolution) {
  if (!f.is_self_adjoint(1e-12)) throw std::invalid_argument("function defect needs a real-valued polynomial");
  if (resolution == 0) resolution = default_function_grid(f.dim(), f.degree());
  const auto defect = sup_norm(f - sigma_rho(f, truncation), resolution);
  DefectReport r;
  r.truncation = truncation->label();
  r.object = "function";
  r.defect_norm = defect.lower;
  r.defect_upper = defect.upper;
  r.lipschitz = lipschitz_fn(f, resolution).lower;
  r.gamma_bound = gamma;
  return finish(r, 1e-13);
}

DefectReport function_defect(const TrigPolynomial& f, const TruncationPtr& truncation) {
  return function_defect(f, truncation, gamma_refined(*truncation).value);
}

DefectReport operator_defect(const TruncatedOperator& t, double gamma) {
  if (!t.is_self_adjoint(1e-12)) throw std::invalid_argument("operator defect needs a self-adjoint operator");
  DefectReport r;
  r.truncation = t.truncation().label();
  r.object = "operator";
  r.defect_norm = spectral_norm((t - rho_sigma(t)).dense());
  r.defect_upper = r.defect_norm;
  r.lipschitz = lipschitz_op(t);
  r.gamma_bound = gamma;
  return finish(r, 1e-13);
}

DefectReport operator_defect(const TruncatedOperator& t) {
  return operator_defect(t, gamma_refined(t.truncation()).value);
}

double antiderivative_reconstruction(const TrigPolynomial& f, const TruncationPtr& truncation,
                                     std::size_t resolution) {
  const auto g = clifford_generators(f.dim());
  const auto s = g.spinor_dim;
  const auto d = static_cast<std::size_t>(f.dim());
  const auto& m = truncation->symbol();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(s, s);

  // Right-hand side coefficient matrices, one per mode of f.
  std::map<Point, Eigen::MatrixXcd> rhs;
  double residual = 0.0;
  for (const auto& [n, c] : f.coefficients()) {
    Eigen::MatrixXcd commutator = Eigen::MatrixXcd::Zero(s, s);
    for (std::size_t nu = 0; nu < d; ++nu) commutator += (static_cast<double>(n[nu]) * c) * g.gammas[nu];
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(s, s);
    for (std::size_t mu = 0; mu < d; ++mu) {
      const Eigen::MatrixXcd w = w_value(m, static_cast<int>(mu) + 1, n) * commutator;
      r += 0.5 * (g.gammas[mu] * w + w * g.gammas[mu]);
    }
    const Eigen::MatrixXcd lhs = (1.0 - m.value(n)) * c * id;
    residual = std::max(residual, (lhs - r).cwiseAbs().maxCoeff());
    rhs.emplace(n, std::move(r));
  }

  // Both sides evaluated pointwise, one spinor entry at a time.
  if (resolution == 0) resolution = default_function_grid(f.dim(), std::max<std::int64_t>(1, f.degree()));
  const TorusGrid grid(f.dim(), resolution);
  const auto left = evaluate_on_grid(f - sigma_rho(f, truncation), grid);
  for (int a = 0; a < s; ++a) {
    for (int b = 0; b < s; ++b) {
      TrigPolynomial entry(f.dim());
      for (const auto& [n, r] : rhs) entry.add(n, r(a, b));
      const auto right = evaluate_on_grid(entry, grid);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const Complex expected = a == b ? left[k] : Complex(0.0);
        residual = std::max(residual, std::abs(expected - right[k]));
      }
    }
  }
  return residual;
}

double operator_antiderivative_residual(const TruncatedOperator& t) {
  const auto g = clifford_generators(t.dim());
  const auto s = g.spinor_dim;
  const auto& basis = t.truncation().basis();
  const auto& m = t.truncation().symbol();
  const auto commutator = dirac_commutator_op(t, g).matrix;
  const Eigen::MatrixXcd defect = (t - rho_sigma(t)).dense();

  double residual = 0.0;
  const auto n = static_cast<Eigen::Index>(basis.size());
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto p = basis[static_cast<std::size_t>(r)] - basis[static_cast<std::size_t>(c)];
      const Eigen::MatrixXcd block = commutator.block(r * s, c * s, s, s);
      Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(s, s);
      for (int mu = 0; mu < t.dim(); ++mu) {
        const Eigen::MatrixXcd w = w_value(m, mu + 1, p) * block;
        const auto& gm = g.gammas[static_cast<std::size_t>(mu)];
        rhs += 0.5 * (gm * w + w * gm);
      }
      const Eigen::MatrixXcd lhs = defect(r, c) * Eigen::MatrixXcd::Identity(s, s);
      residual = std::max(residual, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return residual;
}

}  // namespace spectrunc
