#pragma once

#include <optional>
#include <vector>

#include "silnr/eigen.hpp"

namespace silnr {

// Floor applied to individual leakage powers inside the optimizer (never in
// reported metrics): the gradient matrices divide by each leakage term, so an
// exact zero would blow up. Metrics pass floor = 0.
inline constexpr double kLeakageFloor = 1e-12;

// ---------------------------------------------------------------------------
// Stacked precoder
// ---------------------------------------------------------------------------

/// Concatenation of the K per-user transmit beams of one base station into a
/// single vector of length N*K; user k's beam occupies slots [k*N, (k+1)*N).
struct StackedPrecoder {
  int cell_index = 0;
  int num_antennas = 0;  // N
  int num_users = 0;     // K
  Vec coeffs;

  StackedPrecoder() = default;
  StackedPrecoder(int cell, int antennas, int users)
      : cell_index(cell), num_antennas(antennas), num_users(users) {
    coeffs = Vec::Zero(static_cast<Eigen::Index>(antennas) * users);
  }

  Eigen::Index size() const { return coeffs.size(); }

  auto beam(int k) { return coeffs.segment(static_cast<Eigen::Index>(k) * num_antennas, num_antennas); }
  auto beam(int k) const { return coeffs.segment(static_cast<Eigen::Index>(k) * num_antennas, num_antennas); }

  double squared_norm() const { return coeffs.squaredNorm(); }

  /// Scales the whole vector to unit Euclidean norm. Zero vectors are left
  /// untouched.
  void normalize() {
    double n = coeffs.norm();
    if (n > 0.0) coeffs /= n;
  }

  static StackedPrecoder from_beams(int cell, const std::vector<Vec>& beams);
};

// ---------------------------------------------------------------------------
// Structured quadratic forms
// ---------------------------------------------------------------------------

enum class QuadKind { kSignal, kIuiNoise, kCrossLeakage, kError };

/// Compact representation of one of the four block-structured Hermitian PSD
/// matrices sandwiched by stacked precoders. The dense matrix is never
/// materialized; quadratic forms are evaluated from the structure:
///
///   kSignal       e_k e_k^T (x) h h^H
///   kIuiNoise     I_K (x) h h^H - (signal block k) + noise_scale * I
///   kCrossLeakage I_K (x) power_ratio * (h h^H + error_cov)
///   kError        I_K (x) error_cov
struct StructuredQuadratic {
  QuadKind kind = QuadKind::kSignal;
  Vec channel;             // length N; defining link (empty treated as zero)
  int user_slot = -1;      // kSignal / kIuiNoise
  double noise_scale = 0;  // kIuiNoise
  Mat error_cov;           // N x N; kError / kCrossLeakage (empty = zero)
  double power_ratio = 1;  // kCrossLeakage: P_tx / P_victim
};

/// f^H M f for the matrix encoded by q. Cost is linear in N*K (plus N^2 per
/// slot when an error covariance is present); no N*K x N*K matrix is formed.
/// Throws std::invalid_argument on dimension mismatch, naming both lengths.
double quad_form(const StructuredQuadratic& q, const StackedPrecoder& f);

/// Geometric mean of the per-victim leakage powers, evaluated in the log
/// domain. An exact zero term annihilates the mean (returns 0). `floor`
/// clamps each term from below before the mean; pass 0 for reported metrics.
double leakage_geomean(const std::vector<StructuredQuadratic>& leakage_quads,
                       const StackedPrecoder& f, double floor = 0.0);

// ---------------------------------------------------------------------------
// Cell problem: everything one BS knows when precoding
// ---------------------------------------------------------------------------

/// Channel knowledge for one served user: estimate, estimation-error
/// covariance (empty = perfect), and the effective noise-over-power ratio
/// entering this user's denominator.
struct UserLink {
  Vec h_hat;
  Mat phi;
  double noise_scale = 0.0;
};

/// Channel knowledge for one other-cell victim user: estimate, error
/// covariance, and the transmit-power ratio P_tx / P_victim weighting the
/// leakage as the victim sees it.
struct LeakageLink {
  Vec h_hat;
  Mat phi;
  double power_ratio = 1.0;
};

struct CellProblem {
  int num_antennas = 0;  // N
  int num_users = 0;     // K
  std::vector<UserLink> users;
  std::vector<LeakageLink> leakage;

  /// Exponent applied to the leakage geometric mean: |U| / K (0 if no
  /// leakage term is present).
  double leakage_exponent() const {
    return leakage.empty() ? 0.0 : static_cast<double>(leakage.size()) / num_users;
  }

  StructuredQuadratic signal_quad(int k) const;
  StructuredQuadratic iui_noise_quad(int k) const;
  StructuredQuadratic error_quad(int k) const;
  std::vector<StructuredQuadratic> leakage_quads() const;
};

/// Signal-to-interference-plus-leakage-plus-noise ratio of user `user_index`
/// at precoder f: f^H S f / (f^H U f + f^H E f + L(f)^{|U|/K}).
double silnr_value(const StackedPrecoder& f, int user_index, const CellProblem& cell,
                   double floor = 0.0);

/// Product objective prod_k (1 + SILNR_k), evaluated in the log domain.
double gamma_objective(const StackedPrecoder& f, const CellProblem& cell, double floor = 0.0);

// ---------------------------------------------------------------------------
// Functional operators
// ---------------------------------------------------------------------------

/// Thrown when the shifted denominator operator loses positive definiteness
/// (possible at lambda <= 0 with vanishing noise). Callers raise lambda or
/// the noise floor.
struct SingularOperator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The two functional operators of the fixed-point condition
///
///   A(f) f = gamma(f) * B(f, lambda) f,
///
/// exposed through their action on vectors. Per-user numerator/denominator
/// forms a_i, b_i normalize the sums (A carries gamma/a_i weights, B carries
/// 1/b_i weights), which keeps every scalar O(1) and makes `lambda` the
/// Lagrange multiplier of the product objective on the unit sphere.
///
/// Both operators are I_K (x) (N x N) blocks plus a scalar shift; B
/// additionally subtracts one rank-one dyad per user slot. The inverse action
/// therefore costs O(N^2 K): a shared N x N core is inverted once (a
/// Sherman-Morrison chain over rank-one terms when no dense error covariance
/// is present, a Cholesky factorization otherwise) and each slot applies one
/// more rank-one correction. No N*K x N*K matrix is ever formed, and after
/// the first build the workspace is reused allocation-free.
class FunctionalOps {
 public:
  FunctionalOps() = default;

  /// Builds the operators at (f, lambda). `f` must be unit norm.
  void build(const CellProblem& cell, const StackedPrecoder& f, double lambda,
             double floor = kLeakageFloor);

  bool built() const { return num_users_ > 0; }

  void apply_A(const Vec& x, Vec& out) const;  ///< out = A(f) x
  void apply_B(const Vec& x, Vec& out) const;  ///< out = B(f, lambda) x
  void solve_B(const Vec& rhs, Vec& out) const;  ///< out = B(f, lambda)^{-1} rhs

  Vec apply_A(const Vec& x) const;
  Vec apply_B(const Vec& x) const;
  Vec solve_B(const Vec& rhs) const;

  double gamma() const { return gamma_; }
  double lambda() const { return lambda_; }

  /// Lagrange multiplier that makes the current f exactly stationary in the
  /// radial direction: gamma * (e - 1) * L^e * sum_i (1/a_i - 1/b_i).
  /// Identically zero when |U| = K or the leakage set is empty.
  double lambda_star() const { return lambda_star_; }

  // Per-user scalars of the product objective (leakage term included).
  const std::vector<double>& numerator_forms() const { return a_; }    // a_i
  const std::vector<double>& denominator_forms() const { return b_; }  // b_i
  const std::vector<double>& leakage_terms() const { return c_; }      // f^H C_j f (floored)
  double leakage_power_term() const { return leak_pow_; }              // L(f)^{|U|/K}
  double leakage_exponent() const { return exponent_; }

  int num_antennas() const { return num_antennas_; }
  int num_users() const { return num_users_; }

 private:
  void invert_core();

  int num_antennas_ = 0;
  int num_users_ = 0;
  double lambda_ = 0.0;
  double gamma_ = 1.0;
  double lambda_star_ = 0.0;
  double leak_pow_ = 0.0;
  double exponent_ = 0.0;
  bool rank_one_core_ = false;

  std::vector<double> a_, b_, c_, sig_, noise_;
  std::vector<double> wA_, wB_;  // gamma/a_i, 1/b_i

  // channels of the served users (borrowed copies, N x K)
  Mat user_channels_;
  Mat acc_A_, acc_B_;          // shared N x N blocks (without scalar shift)
  double shift_A_ = 0.0, shift_B_ = 0.0;
  Mat core_inv_;               // (acc_B + shift_B I)^{-1} when rank-one path
  Eigen::LLT<Mat> core_llt_;   // dense path factorization
  mutable Vec tmp_n_, tmp_n2_, tmp_rhs_n_;
  mutable Mat core_;           // dense path core
};

/// Convenience builder mirroring the operator-construction contract.
FunctionalOps build_functionals(const CellProblem& cell, const StackedPrecoder& f,
                                double lambda, double floor = kLeakageFloor);

}  // namespace silnr
