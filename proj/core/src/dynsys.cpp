#include "lezter/dynsys.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "lezter/random.hpp"

namespace lezter {

namespace odeint = boost::numeric::odeint;

SystemKind parse_system_kind(std::string_view name) {
  if (name == "henon-henon") return SystemKind::HenonHenon;
  if (name == "lorenz-lorenz") return SystemKind::LorenzLorenz;
  if (name == "rossler-lorenz") return SystemKind::RosslerLorenz;
  throw std::invalid_argument("unknown system: " + std::string(name));
}

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::HenonHenon: return "henon-henon";
    case SystemKind::LorenzLorenz: return "lorenz-lorenz";
    case SystemKind::RosslerLorenz: return "rossler-lorenz";
  }
  return "unknown";
}

bool is_flow(SystemKind kind) noexcept { return kind != SystemKind::HenonHenon; }

std::size_t default_discard(SystemKind kind) noexcept { return is_flow(kind) ? 10000 : 1000; }

double default_dt(SystemKind kind) {
  switch (kind) {
    case SystemKind::LorenzLorenz: return 0.03;
    case SystemKind::RosslerLorenz: return 0.02617;
    case SystemKind::HenonHenon: break;
  }
  throw std::invalid_argument("maps have no time step");
}

void validate(const SystemSpec& spec) {
  if (!(spec.epsilon >= 0.0)) throw std::invalid_argument("coupling must be >= 0");
  if (spec.length < 1) throw std::invalid_argument("length must be >= 1");
  if (spec.dt && !(*spec.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  const std::size_t dims = is_flow(spec.kind) ? 3 : 2;
  if (spec.source_component >= dims || spec.target_component >= dims) {
    throw std::invalid_argument("observed component out of range");
  }
}

// ---------------------------------------------------------------------------
// Henon-Henon

HenonState henon_step(const HenonState& s, double epsilon, double b) noexcept {
  const auto [y1, y2, x1, x2] = s;
  return {
      1.4 - y1 * y1 + b * y2,
      y1,
      1.4 - (epsilon * y1 + (1.0 - epsilon) * x1) * x1 + b * x2,
      x1,
  };
}

namespace {

constexpr double kEscapeRadius = 1e6;
constexpr int kMaxRedraws = 100;

bool escaped(double a, double b) { return !(std::abs(a) <= kEscapeRadius && std::abs(b) <= kEscapeRadius); }

// Runs the coupled map. Returns false (and the iteration count) if either
// subsystem escapes.
struct HenonRun {
  Trajectory trajectory;
  bool source_escaped = false;
  bool target_escaped = false;
};

HenonRun run_henon(const SystemSpec& spec, HenonState s) {
  const std::size_t discard = spec.discard.value_or(default_discard(spec.kind));
  const double b = spec.constants.henon_b;
  HenonRun run;
  run.trajectory.source.reserve(spec.length);
  run.trajectory.target.reserve(spec.length);
  for (std::size_t n = 0; n < discard + spec.length; ++n) {
    if (n > 0) s = henon_step(s, spec.epsilon, b);
    run.source_escaped = escaped(s[0], s[1]);
    run.target_escaped = escaped(s[2], s[3]);
    if (run.source_escaped || run.target_escaped) return run;
    if (n < discard) continue;
    run.trajectory.source.push_back(s[spec.source_component]);
    run.trajectory.target.push_back(s[2 + spec.target_component]);
    if (spec.keep_full_state) run.trajectory.full_state.emplace_back(s.begin(), s.end());
  }
  return run;
}

}  // namespace

Trajectory henon_coupled(const SystemSpec& spec, const HenonState& initial) {
  if (spec.kind != SystemKind::HenonHenon) throw std::invalid_argument("henon_coupled needs kind henon-henon");
  validate(spec);
  auto run = run_henon(spec, initial);
  if (run.source_escaped || run.target_escaped) throw IntegrationError("henon orbit diverged", 0.0);
  return std::move(run.trajectory);
}

Trajectory henon_coupled(const SystemSpec& spec) {
  if (spec.kind != SystemKind::HenonHenon) throw std::invalid_argument("henon_coupled needs kind henon-henon");
  validate(spec);
  // Separate streams for the two subsystems: the driver's initial condition
  // never depends on the coupling.
  Rng source_rng(derive_seed(spec.seed, {0}));
  Rng target_rng(derive_seed(spec.seed, {1}));
  HenonState s{source_rng.uniform01(), source_rng.uniform01(), target_rng.uniform01(), target_rng.uniform01()};
  int source_redraws = 0;
  int target_redraws = 0;
  for (;;) {
    auto run = run_henon(spec, s);
    if (!run.source_escaped && !run.target_escaped) return std::move(run.trajectory);
    if (run.source_escaped) {
      if (++source_redraws > kMaxRedraws) break;
      s[0] = source_rng.uniform01();
      s[1] = source_rng.uniform01();
    } else {
      if (++target_redraws > kMaxRedraws) break;
      s[2] = target_rng.uniform01();
      s[3] = target_rng.uniform01();
    }
  }
  throw IntegrationError("henon orbit diverged after 100 redraws of the initial condition", 0.0);
}

// ---------------------------------------------------------------------------
// Flows

FlowState lorenz_lorenz_rhs(const FlowState& s, double epsilon, double rho1, double rho2) noexcept {
  const auto [y1, y2, y3, x1, x2, x3] = s;
  return {
      10.0 * (-y1 + y2),
      rho1 * y1 - y2 - y1 * y3,
      y1 * y2 - 8.0 / 3.0 * y3,
      10.0 * (-x1 + x2) + epsilon * (y1 - x1),
      rho2 * x1 - x2 - x1 * x3,
      x1 * x2 - 8.0 / 3.0 * x3,
  };
}

FlowState rossler_lorenz_rhs(const FlowState& s, double epsilon, double alpha, double beta) noexcept {
  const auto [y1, y2, y3, x1, x2, x3] = s;
  return {
      -alpha * (y2 + y3),
      alpha * (y1 + 0.2 * y2),
      alpha * (0.2 + y3 * (y1 - 5.7)),
      10.0 * (-x1 + x2),
      28.0 * x1 - x2 - x1 * x3 + epsilon * std::pow(y2, beta),
      x1 * x2 - 8.0 / 3.0 * x3,
  };
}

std::array<double, 3> lorenz_rhs(const std::array<double, 3>& s, double rho) noexcept {
  return {10.0 * (-s[0] + s[1]), rho * s[0] - s[1] - s[0] * s[2], s[0] * s[1] - 8.0 / 3.0 * s[2]};
}

std::array<double, 3> rossler_rhs(const std::array<double, 3>& s, double alpha) noexcept {
  return {-alpha * (s[1] + s[2]), alpha * (s[0] + 0.2 * s[1]), alpha * (0.2 + s[2] * (s[0] - 5.7))};
}

void integrate_dp45(const OdeRhs& rhs, OdeState initial, double dt, std::size_t n_samples, Tolerances tol,
                    const SampleObserver& observe) {
  if (!(tol.rel > 0.0) || !(tol.abs > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (n_samples == 0) return;

  std::vector<double> times(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) times[k] = static_cast<double>(k) * dt;

  auto system = [&rhs](const OdeState& x, OdeState& dxdt, double t) { rhs(x, dxdt, t); };
  std::size_t index = 0;
  double last_time = 0.0;
  auto observer = [&](const OdeState& x, double t) {
    for (double v : x) {
      if (!std::isfinite(v)) throw IntegrationError("non-finite state", t);
    }
    last_time = t;
    observe(index++, x);
  };

  auto stepper = odeint::make_dense_output(tol.abs, tol.rel, odeint::runge_kutta_dopri5<OdeState>());
  try {
    odeint::integrate_times(stepper, system, initial, times.begin(), times.end(), dt, observer);
  } catch (const odeint::odeint_error& e) {
    throw IntegrationError(std::string("step size underflow: ") + e.what(), last_time);
  }
}

std::vector<OdeState> integrate_dp45(const OdeRhs& rhs, OdeState initial, double dt, std::size_t n_samples,
                                     Tolerances tol) {
  std::vector<OdeState> out;
  out.reserve(n_samples);
  integrate_dp45(rhs, std::move(initial), dt, n_samples, tol,
                 [&out](std::size_t, const OdeState& x) { out.push_back(x); });
  return out;
}

OdeState dp45_fixed_steps(const OdeRhs& rhs, OdeState initial, double h, std::size_t steps) {
  auto system = [&rhs](const OdeState& x, OdeState& dxdt, double t) { rhs(x, dxdt, t); };
  odeint::runge_kutta_dopri5<OdeState> stepper;
  double t = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    stepper.do_step(system, initial, t, h);
    t += h;
  }
  return initial;
}

namespace {

OdeRhs flow_rhs(const SystemSpec& spec) {
  const SystemConstants c = spec.constants;
  const double eps = spec.epsilon;
  if (spec.kind == SystemKind::LorenzLorenz) {
    return [c, eps](const OdeState& x, OdeState& dxdt, double) {
      const auto d = lorenz_lorenz_rhs({x[0], x[1], x[2], x[3], x[4], x[5]}, eps, c.rho1, c.rho2);
      std::copy(d.begin(), d.end(), dxdt.begin());
    };
  }
  return [c, eps](const OdeState& x, OdeState& dxdt, double) {
    const auto d = rossler_lorenz_rhs({x[0], x[1], x[2], x[3], x[4], x[5]}, eps, c.rossler_alpha, c.rossler_beta);
    std::copy(d.begin(), d.end(), dxdt.begin());
  };
}

}  // namespace

Trajectory generate_flow_series(const SystemSpec& spec, const FlowState& initial) {
  if (!is_flow(spec.kind)) throw std::invalid_argument("generate_flow_series needs a flow system");
  validate(spec);
  const std::size_t discard = spec.discard.value_or(default_discard(spec.kind));
  const double dt = spec.dt.value_or(default_dt(spec.kind));

  Trajectory traj;
  traj.source.reserve(spec.length);
  traj.target.reserve(spec.length);
  integrate_dp45(flow_rhs(spec), OdeState(initial.begin(), initial.end()), dt, discard + spec.length,
                 {spec.rel_tol, spec.abs_tol}, [&](std::size_t k, const OdeState& x) {
                   if (k < discard) return;
                   traj.source.push_back(x[spec.source_component]);
                   traj.target.push_back(x[3 + spec.target_component]);
                   if (spec.keep_full_state) traj.full_state.push_back(x);
                 });
  return traj;
}

Trajectory generate_flow_series(const SystemSpec& spec) {
  Rng rng(spec.seed);
  FlowState initial{};
  for (double& v : initial) v = rng.uniform01();
  initial[5] += 20.0;
  return generate_flow_series(spec, initial);
}

Trajectory simulate(const SystemSpec& spec) {
  return spec.kind == SystemKind::HenonHenon ? henon_coupled(spec) : generate_flow_series(spec);
}

}  // namespace lezter
