#pragma once

#include "hopf/params.hpp"

#include <cstdint>
#include <vector>

// Ensemble and comparison experiments shared by the CLI and the
// acceptance suite.

namespace hopf {

enum class AttractorInit {
    stationary,  // exact radial sample x uniform angle per member
    burnin       // members on the deterministic cycle, extra lead-in time
};

struct AttractorResult {
    std::vector<double> z1, z2;  // final member positions
    std::size_t n_samples = 0;
    int frozen = 0;       // members halted after a non-finite step
    bool collapsed = false;  // ensemble became bitwise identical mid-run
    double diameter = 0.0;   // bounding-box diagonal at t_end
    double r_hat = 0.0;
    double t_end = 0.0, dt = 0.0, burnin_time = 0.0;
    std::uint64_t seed = 0;
};

// Evolve n members under one shared noise realization (Heun; the noise is
// additive) and report the time-t_end snapshot. Members that go non-finite
// are frozen at their last finite position and counted. Once every live
// member is bitwise identical the ensemble is advanced through a single
// representative; this changes nothing (the per-step map is deterministic
// given the shared increments) and makes synchronized control runs cheap.
AttractorResult attractor_cloud(const HopfParams& p, std::size_t n_samples,
                                double t_end, double dt, std::uint64_t seed,
                                AttractorInit init = AttractorInit::stationary,
                                double burnin_time = 100.0);

struct PathSample {
    std::vector<double> t, s, theta;
};

// Simplified-model sample path from (s0, theta0), stored every
// store_stride steps (plus the final state).
PathSample simulate_hat_path(const SimplifiedParams& p, double s0,
                             double theta0, double t_end, double dt,
                             std::uint64_t seed, int store_stride = 1);

struct CurvePoint {
    double zeta;
    double value;
    double err_bound;
};

std::vector<double> default_zeta_grid();  // 200 points over (0, 10]
std::vector<CurvePoint> psi_curve(const std::vector<double>& zeta_grid);

// Matched-noise coordinate-equivalence run: one planar noise realization
// drives (i) the Cartesian pair (Z, Y) under Heun, (ii) the polar chart
// under Euler-Maruyama with increments rotated by the polar angle, and
// (iii) the tangent-frame chart under Heun with those same rotated
// increments. Reports sup norms of the chart mismatches over [0, t_end].
struct MatchedNoiseReport {
    double sup_radius_diff = 0.0;  // | |Z| - r_polar |
    double sup_frame_diff = 0.0;   // | |Y| - |(s, vartheta)| |
    double t_end = 0.0, dt = 0.0;
};

MatchedNoiseReport matched_noise_compare(const HopfParams& p, double r0,
                                         double phi0, double t_end, double dt,
                                         std::uint64_t seed);

}  // namespace hopf
