#pragma once

#include <string>
#include <vector>

#include "pvac/config.hpp"
#include "pvac/degelliptic.hpp"

namespace pvac {

struct LevelError {
  std::string label;
  double h = 0.0;  ///< grid spacing or time step of the level
  double error = 0.0;
};

struct StudyResult {
  std::string kind;
  std::vector<LevelError> levels;
  double order = 0.0;     ///< least-squares slope of log error against log h
  bool monotone = true;   ///< errors strictly decrease along the ladder
  std::string note;
};

double least_squares_order(const std::vector<double>& h, const std::vector<double>& err);
StudyResult finish_study(StudyResult r);

/// Closed-form manufactured pair u* = sin(2 pi x1) w(x3), G = G u* for a preset weight.
struct Manufactured {
  ScalarField u, G;
};
Manufactured manufactured_elliptic(const WeightField& wf, double lambda, const Grid& g);

/// Elliptic manufactured ladder on (n, 4, n) grids; error in the w^alpha-weighted L^2 norm.
StudyResult elliptic_study(const std::vector<int>& ns = {16, 32, 64}, WeightPreset preset = WeightPreset::Parabolic,
                           double gamma = 2.0, double lambda = 10.0, double tol = 1e-10);

/// max |piola_divergence| for the smooth 3D map on (n, n, n) grids.
StudyResult piola_study(const std::vector<int>& ns = {32, 64, 128});

/// max |curl_eta(A^T grad h)| for smooth h on a smooth map, (n, n, n) grids.
StudyResult curl_gradient_study(const std::vector<int>& ns = {32, 64, 128});

/// max |curl_eta(acceleration)| on a smooth map, (n, n, n) grids.
StudyResult curl_acceleration_study(const std::vector<int>& ns = {32, 64, 128},
                                    ForceForm form = ForceForm::Gradient);

/// Max relative energy drift of the configured run for each dt.
StudyResult energy_drift_study(const SimConfig& base, const std::vector<double>& dts = {4e-3, 2e-3, 1e-3});

/// Default energy-drift scenario: gamma = 2, parabolic weight, tangential shear
/// of amplitude 1e-3, T = 1 on 32x32x64, guardrail enforcement off.
SimConfig energy_drift_config();

/// By name: elliptic, piola, curl-residual, energy-drift.
StudyResult run_study(const std::string& kind);

std::string format_study(const StudyResult& r);

}  // namespace pvac
