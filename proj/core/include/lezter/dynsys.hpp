#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace lezter {

enum class SystemKind { HenonHenon, LorenzLorenz, RosslerLorenz };

SystemKind parse_system_kind(std::string_view name);
std::string_view to_string(SystemKind kind);
bool is_flow(SystemKind kind) noexcept;

struct SystemConstants {
  /// Enters the Henon update as `+ henon_b * y2`; 0.3 gives the chaotic
  /// Henon attractor, -0.3 an attracting period-2 orbit.
  double henon_b = 0.3;
  double rho1 = 28.5;
  double rho2 = 27.5;
  double rossler_alpha = 6.0;
  double rossler_beta = 2.0;
};

/// One unidirectionally coupled system: source y drives target x.
struct SystemSpec {
  SystemKind kind = SystemKind::HenonHenon;
  double epsilon = 0.0;
  std::size_t length = 1000;
  /// Samples dropped before recording; defaults to 1000 for maps, 10000 for flows.
  std::optional<std::size_t> discard;
  std::uint64_t seed = 0;
  /// Sampling step for flows; defaults to 0.03 (Lorenz-Lorenz) or 0.02617 (Rossler-Lorenz).
  std::optional<double> dt;
  SystemConstants constants;
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  /// Which state variable of each subsystem is observed.
  std::size_t source_component = 0;
  std::size_t target_component = 0;
  bool keep_full_state = false;
};

std::size_t default_discard(SystemKind kind) noexcept;
double default_dt(SystemKind kind);
void validate(const SystemSpec& spec);

struct Trajectory {
  std::vector<double> source;
  std::vector<double> target;
  /// Every state variable per sample, source subsystem first. Only filled
  /// when SystemSpec::keep_full_state is set.
  std::vector<std::vector<double>> full_state;
};

/// Raised when a system leaves its basin or the integrator cannot proceed.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
  [[nodiscard]] double time() const noexcept { return time_; }

 private:
  double time_;
};

using HenonState = std::array<double, 4>;  // (y1, y2, x1, x2)
using FlowState = std::array<double, 6>;   // (y1, y2, y3, x1, x2, x3)

/// One step of the coupled Henon maps:
///   y1' = 1.4 - y1^2 + b y2,                       y2' = y1
///   x1' = 1.4 - (eps y1 + (1 - eps) x1) x1 + b x2,  x2' = x1
HenonState henon_step(const HenonState& s, double epsilon, double b) noexcept;

/// Coupled Henon maps from seeded random initial conditions in [0, 1)^4,
/// redrawn (up to 100 times per subsystem) when the orbit leaves |s| <= 1e6.
Trajectory henon_coupled(const SystemSpec& spec);
/// Same, from an explicit initial state and without redraws.
Trajectory henon_coupled(const SystemSpec& spec, const HenonState& initial);

FlowState lorenz_lorenz_rhs(const FlowState& s, double epsilon, double rho1, double rho2) noexcept;
FlowState rossler_lorenz_rhs(const FlowState& s, double epsilon, double alpha, double beta) noexcept;
std::array<double, 3> lorenz_rhs(const std::array<double, 3>& s, double rho) noexcept;
std::array<double, 3> rossler_rhs(const std::array<double, 3>& s, double alpha) noexcept;

using OdeState = std::vector<double>;
using OdeRhs = std::function<void(const OdeState& state, OdeState& deriv, double t)>;
using SampleObserver = std::function<void(std::size_t index, const OdeState& state)>;

struct Tolerances {
  double rel = 1e-6;
  double abs = 1e-9;
};

/// Adaptive Dormand-Prince 5(4) with dense output at t = k * dt,
/// k = 0..n_samples-1. Throws IntegrationError on step-size failure or a
/// non-finite state.
void integrate_dp45(const OdeRhs& rhs, OdeState initial, double dt, std::size_t n_samples, Tolerances tol,
                    const SampleObserver& observe);
std::vector<OdeState> integrate_dp45(const OdeRhs& rhs, OdeState initial, double dt, std::size_t n_samples,
                                     Tolerances tol = {});

/// `steps` fixed Dormand-Prince steps of size h; returns the final state.
OdeState dp45_fixed_steps(const OdeRhs& rhs, OdeState initial, double h, std::size_t steps);

/// Lorenz-Lorenz or Rossler-Lorenz trajectory from a seeded initial condition.
Trajectory generate_flow_series(const SystemSpec& spec);
/// Same, from an explicit initial state.
Trajectory generate_flow_series(const SystemSpec& spec, const FlowState& initial);

/// Dispatches on spec.kind.
Trajectory simulate(const SystemSpec& spec);

}  // namespace lezter
