#pragma once

// Prediction-correction biorthogonal filter bank {A, B, Ã, B̃} built from an
// interpolatory predictor A, and the linear multiscale pyramid.
//
// Decomposition and reconstruction masks are stored in the form in which the
// operators consume them: `dual_primal` holds the blocks of Ã^T and
// `dual_detail` those of B̃^T, so D_{Ã^T} = apply_decomposition(dual_primal, .).

#include <span>
#include <vector>

#include "geomwave/laurent.hpp"
#include "geomwave/predictors.hpp"
#include "geomwave/sequence.hpp"

namespace geomwave {

struct LevelFilters {
  Mask primal;       // A
  Mask detail;       // B, symbol z I
  Mask dual_primal;  // (Ã)^T, the single block D^{-1} at 0
  Mask dual_detail;  // (B̃)^T_k = (-1)^{1-k} A_{1-k} D^{-1}
};

/// Throws InvalidArgument when `predictor` is not interpolatory.
LevelFilters prediction_correction_filters(const Mask& predictor);

class PredictionCorrectionBank {
 public:
  explicit PredictionCorrectionBank(MaskProvider provider);

  const MaskProvider& provider() const noexcept { return provider_; }
  LevelFilters level(int n) const;

 private:
  MaskProvider provider_;
};

PredictionCorrectionBank build_bank(const MaskProvider& provider);

struct MultiscalePyramid {
  HermiteSequence coarse;
  /// details[k] holds d^{[coarse_level + k]}, one entry per odd fine index.
  std::vector<HermiteSequence> details;
  int coarse_level = 0;
  PredictorKind predictor = PredictorKind::cubic;
  double lambda = 0.0;

  int levels() const noexcept { return static_cast<int>(details.size()); }
};

/// Prediction-correction decomposition of `fine` (level tag N) into
/// c^{[N-levels]} and d^{[N-levels .. N-1]}.
MultiscalePyramid decompose_linear(const HermiteSequence& fine,
                                   const PredictionCorrectionBank& bank, int levels);
HermiteSequence reconstruct_linear(const MultiscalePyramid& pyramid,
                                   const PredictionCorrectionBank& bank);

/// Sup-norm residuals of the four biorthogonality identities.
struct BiorthogonalityResiduals {
  double primal_identity = 0.0;      // D_{Ã^T} S_A - id
  double detail_identity = 0.0;      // D_{B̃^T} S_B - id
  double primal_of_detail = 0.0;     // D_{Ã^T} S_B
  double detail_of_primal = 0.0;     // D_{B̃^T} S_A

  double max() const;
  bool all_within(double tol) const { return max() <= tol; }
};

/// Operator form, maximised over the probes (periodic, length >= 4 N where
/// every mask is supported in [-N, N]).
BiorthogonalityResiduals biorthogonality_residuals(const LevelFilters& filters,
                                                   std::span<const HermiteSequence> probes);
BiorthogonalityResiduals biorthogonality_residuals(const PredictionCorrectionBank& bank,
                                                   int level,
                                                   std::span<const HermiteSequence> probes);

/// Symbol form: max abs coefficient of
///   P̃^#(z) Q(z) + P̃^#(-z) Q(-z) - 2 delta_{PQ} I
/// for (P, Q) in the same order as the operator residuals.
BiorthogonalityResiduals symbol_biorthogonality_residuals(const LevelFilters& filters);
BiorthogonalityResiduals symbol_biorthogonality_residuals(const PredictionCorrectionBank& bank,
                                                          int level);

/// sup-norm of (S_A D_{Ã^T} + S_B D_{B̃^T} - id) c on periodic c.
double perfect_reconstruction_residual(const LevelFilters& filters, const HermiteSequence& c);

/// sup-norm of D_{B̃^T} D^{n+1} v_f^{[n+1]}; the level-(n+1) samples are taken on
/// [2 first, 2 last].
double vanishing_moment_residual(const PredictionCorrectionBank& bank, const ScalarFunction& f,
                                 int level, std::ptrdiff_t first, std::ptrdiff_t last);

}  // namespace geomwave
