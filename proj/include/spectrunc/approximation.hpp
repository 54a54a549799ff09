#pragma once

// The compositions σ∘ρ = F_m and ρ∘σ = S_m, their defects measured against
// the Lipschitz seminorm, and the antiderivative identity that ties the
// defect to the Dirac commutator through the symbols w^μ.

#include "spectrunc/operator_system.hpp"

#include <string>

namespace spectrunc {

struct DefectReport {
  std::string truncation;
  std::string object;     // "function" or "operator"
  double defect_norm = 0;  // ‖x − composed(x)‖ (grid maximum for functions)
  double defect_upper = 0;  // certified upper bound on the same norm
  double lipschitz = 0;    // ‖[D,x]‖ (grid maximum for functions)
  double ratio = 0;        // defect_norm / lipschitz, NaN when degenerate
  double gamma_bound = 0;
  bool degenerate = false;  // zero commutator

  /// ratio ≤ gamma_bound + slack, or a degenerate input with zero defect.
  bool certified(double slack = 1e-6) const;
};

TrigPolynomial sigma_rho(const TrigPolynomial& f, const TruncationPtr& truncation);
TruncatedOperator rho_sigma(const TruncatedOperator& t);

/// Sup-norm defect of f − F_m f against sup ‖∇f‖, both on a grid of the given
/// resolution (0 picks one from the degree of f).
DefectReport function_defect(const TrigPolynomial& f, const TruncationPtr& truncation, double gamma,
                             std::size_t resolution = 0);
/// Same, computing γ by gamma_refined first.
DefectReport function_defect(const TrigPolynomial& f, const TruncationPtr& truncation);

/// ‖T − S_m T‖ against ‖[D_Λ, T]‖.
DefectReport operator_defect(const TruncatedOperator& t, double gamma);
DefectReport operator_defect(const TruncatedOperator& t);

/// Compares (f − σ∘ρ f) ⊗ 1 with ½ Σ_μ (F_{w^μ} ⊗ {γ^μ, ·})([D,f]), once
/// coefficientwise and once by evaluating both sides on a grid. Returns the
/// largest entrywise deviation.
double antiderivative_reconstruction(const TrigPolynomial& f, const TruncationPtr& truncation,
                                     std::size_t resolution = 0);

/// Operator counterpart: (T − S_m T) ⊗ 1 against ½ Σ_μ (S_{w^μ} ⊗ {γ^μ, ·})([D_Λ, T])
/// on dense matrices.
double operator_antiderivative_residual(const TruncatedOperator& t);

}  // namespace spectrunc
