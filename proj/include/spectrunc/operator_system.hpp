#pragma once

// Multi-level Toeplitz operators T = (t_{k−l}) over a truncation basis,
// trigonometric polynomials, Clifford generators, the compression ρ and the
// expectation σ, Dirac commutators and the norms they are measured in.

#include "spectrunc/kernels.hpp"
#include "spectrunc/truncation.hpp"

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <vector>

namespace spectrunc {

using Complex = std::complex<double>;

/// Self-adjoint generators with γ^μγ^ν + γ^νγ^μ = 2δ^{μν}, of size 2^⌊d/2⌋.
struct GammaRep {
  int dim = 0;
  int spinor_dim = 0;
  std::vector<Eigen::MatrixXcd> gammas;
};

/// Recursive construction; the relations are verified exactly (entries are
/// Gaussian integers) and an InternalError is thrown if they fail.
GammaRep clifford_generators(int dim);

/// Finitely supported Fourier series Σ f̂(n) e_n.
class TrigPolynomial {
 public:
  explicit TrigPolynomial(int dim);
  TrigPolynomial(int dim, std::map<Point, Complex> coefficients);

  static TrigPolynomial constant(int dim, Complex c);
  /// c·e_q.
  static TrigPolynomial mode(const Point& q, Complex c = 1.0);

  int dim() const { return dim_; }
  const std::map<Point, Complex>& coefficients() const { return coefficients_; }
  Complex coefficient(const Point& n) const;
  void add(const Point& n, Complex c);

  Complex operator()(std::span<const double> x) const;
  /// Largest |n_i| over the support.
  std::int64_t degree() const;
  bool is_self_adjoint(double tol = 0.0) const;
  TrigPolynomial adjoint() const;
  /// Drops coefficients with |f̂(n)| ≤ tol.
  TrigPolynomial pruned(double tol = 0.0) const;

  friend TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b);
  friend TrigPolynomial operator-(const TrigPolynomial& a, const TrigPolynomial& b);
  friend TrigPolynomial operator*(Complex s, const TrigPolynomial& a);

 private:
  int dim_;
  std::map<Point, Complex> coefficients_;
};

/// Values of f at every node of the grid, in flat node order.
std::vector<Complex> evaluate_on_grid(const TrigPolynomial& f, const TorusGrid& grid);

/// Element of the operator system, stored as coefficients aligned with the
/// truncation's difference set.
class TruncatedOperator {
 public:
  TruncatedOperator(TruncationPtr truncation, std::vector<Complex> coefficients);

  static TruncatedOperator zero(TruncationPtr truncation);
  static TruncatedOperator identity(TruncationPtr truncation);
  /// T_p = Σ_{n ∈ B ∩ (B+p)} E_{n−p,n}; its only coefficient is t_{−p} = 1.
  static TruncatedOperator basic(TruncationPtr truncation, const Point& p);

  const Truncation& truncation() const { return *truncation_; }
  const TruncationPtr& truncation_ptr() const { return truncation_; }
  int dim() const { return truncation_->dim(); }
  const std::vector<Complex>& coefficients() const { return coefficients_; }
  Complex coefficient(const Point& p) const;

  Eigen::MatrixXcd dense() const;
  bool is_self_adjoint(double tol = 0.0) const;
  TruncatedOperator adjoint() const;

  friend TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b);
  friend TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b);
  friend TruncatedOperator operator*(Complex s, const TruncatedOperator& a);

 private:
  TruncationPtr truncation_;
  std::vector<Complex> coefficients_;
};

/// Dense matrix on (basis point, spinor index), row = index(k)·s + a.
struct DenseOperator {
  Eigen::MatrixXcd matrix;
  LatticeSet index{1, {}};
  int spinor_dim = 1;
};

struct Bracket {
  double lower = 0;
  double upper = 0;
};

/// ρ: t_p = f̂(p) on the difference set.
TruncatedOperator compress(const TrigPolynomial& f, const TruncationPtr& truncation);
/// σ: Σ_p m(p) t_p e_p.
TrigPolynomial expectation(const TruncatedOperator& t);

/// P[D,f]P on index ⊗ C^s: block (k,l) = Σ_μ (k−l)_μ f̂(k−l) γ^μ.
DenseOperator dirac_commutator_fn(const TrigPolynomial& f, const GammaRep& g, const LatticeSet& index);
/// sup_x ‖Σ_μ ∂_μ f(x) γ^μ‖ bracketed by a grid search: lower is the grid
/// maximum, upper adds (π√d/M) Σ |f̂(n)| ‖n‖². Resolution 0 picks a grid
/// from the degree of f.
Bracket lipschitz_fn(const TrigPolynomial& f, std::size_t resolution = 0);

/// [D_Λ, T]: block (k,l) = Σ_μ (k−l)_μ t_{k−l} γ^μ.
DenseOperator dirac_commutator_op(const TruncatedOperator& t, const GammaRep& g);
double lipschitz_op(const TruncatedOperator& t);

/// Largest singular value. Hermitian and anti-Hermitian inputs take an
/// eigenvalue path. Throws std::domain_error on non-finite entries.
double spectral_norm(const Eigen::MatrixXcd& a);
double spectral_norm(const DenseOperator& a);

/// t_p ↦ s(p) t_p and f̂(n) ↦ s(n) f̂(n), with s = 0 off its support.
TruncatedOperator schur_multiply(const SymbolTable& s, const TruncatedOperator& t);
TrigPolynomial fourier_multiply(const SymbolTable& s, const TrigPolynomial& f);

/// sup_x |f(x)|: grid maximum, and that plus (π√d/M) Σ |f̂(n)| ‖n‖.
Bracket sup_norm(const TrigPolynomial& f, std::size_t resolution = 0);

/// Grid resolution used when 0 is passed above: 8·degree + 16, reduced in
/// high dimension to keep the grid at desk scale.
std::size_t default_function_grid(int dim, std::int64_t degree);

}  // namespace spectrunc
