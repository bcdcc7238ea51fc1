#pragma once

namespace alignlab {

// Every numerical threshold used by the library lives here.
struct Tolerances {
  double ortho = 1e-10;       // Pᵀ·P = I and xᵀ·residual checks
  double psd = 1e-10;         // smallest admissible eigenvalue of a PSD input, relative
  double resid = 1e-10;       // reconstruction / eigen-residual, relative to ‖m‖_F
  double sym = 1e-10;         // ‖m − mᵀ‖_F ≤ sym·‖m‖_F
  double pd = 1e-12;          // metric min eigenvalue > pd·max eigenvalue
  double rank_cut = 1e-10;    // singular values ≤ rank_cut·s_max are treated as zero
  double spectral_gap = 1e-8; // relative eigen-gap below which a spectrum is degenerate
  double intersection = 1e-6; // cosines ≥ 1 − intersection count as shared directions
  double sigma_range = 1e-8;  // σ outside [−sigma_range, 1 + sigma_range] is an error
  double standardized = 1e-8; // column mean / variance tolerance for "standardized"
};

inline constexpr Tolerances kTol{};

}  // namespace alignlab
