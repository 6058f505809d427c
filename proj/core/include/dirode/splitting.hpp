#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace dirode {

enum class OperatorKind { advection, diffusion };

// A field transformer over a duration. t is the start time of the sub-step.
template <class Field>
struct StepOperator {
  std::string name;
  OperatorKind kind = OperatorKind::advection;
  std::function<Field(const Field&, double t, double duration)> apply;

  Field operator()(const Field& f, double t, double duration) const {
    if (duration == 0.0) return f;
    return apply(f, t, duration);
  }
};

struct ScheduleEntry {
  OperatorKind kind;
  double fraction;
  double offset;  // start of the sub-step as a fraction of dt
};

using SplitSchedule = std::vector<ScheduleEntry>;

inline SplitSchedule lie_schedule() {
  return {{OperatorKind::advection, 1.0, 0.0}, {OperatorKind::diffusion, 1.0, 0.0}};
}

// A(dt/2) D(dt) A(dt/2); the diffusion-outer variant is D(dt/2) A(dt) D(dt/2).
inline SplitSchedule strang_schedule(bool diffusion_outer = false) {
  const OperatorKind outer = diffusion_outer ? OperatorKind::diffusion : OperatorKind::advection;
  const OperatorKind inner = diffusion_outer ? OperatorKind::advection : OperatorKind::diffusion;
  return {{outer, 0.5, 0.0}, {inner, 1.0, 0.0}, {outer, 0.5, 0.5}};
}

template <class Field>
Field run_schedule(const SplitSchedule& schedule, const StepOperator<Field>& adv,
                   const StepOperator<Field>& diff, Field field, double t, double dt) {
  for (const auto& e : schedule) {
    const auto& op = e.kind == OperatorKind::advection ? adv : diff;
    field = op(field, t + e.offset * dt, e.fraction * dt);
  }
  return field;
}

template <class Field>
Field lie_step(const StepOperator<Field>& adv, const StepOperator<Field>& diff, const Field& field,
               double t, double dt) {
  return run_schedule(lie_schedule(), adv, diff, field, t, dt);
}

template <class Field>
Field strang_step(const StepOperator<Field>& adv, const StepOperator<Field>& diff,
                  const Field& field, double t, double dt, bool diffusion_outer = false) {
  return run_schedule(strang_schedule(diffusion_outer), adv, diff, field, t, dt);
}

}  // namespace dirode
