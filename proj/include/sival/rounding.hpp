#pragma once

// Directed-rounding arithmetic on binary64 without touching the hardware
// rounding mode. Each operation is computed in round-to-nearest and then
// moved one representable value outward when an error-free transformation
// (TwoSum, or an FMA residual) shows the nearest result is on the wrong
// side of the exact one. In the deep-underflow range, where the residual
// itself may be inexact, the step is taken unconditionally.
//
// Operands must be finite; results may be infinite on overflow (rounding up
// past DBL_MAX gives +inf, rounding down gives DBL_MAX).

namespace sival::rounding {

[[nodiscard]] double next_up(double x);
[[nodiscard]] double next_down(double x);

[[nodiscard]] double add_down(double a, double b);
[[nodiscard]] double add_up(double a, double b);
[[nodiscard]] double sub_down(double a, double b);
[[nodiscard]] double sub_up(double a, double b);
[[nodiscard]] double mul_down(double a, double b);
[[nodiscard]] double mul_up(double a, double b);
/// b must be non-zero.
[[nodiscard]] double div_down(double a, double b);
[[nodiscard]] double div_up(double a, double b);
/// a must be non-negative.
[[nodiscard]] double sqrt_down(double a);
[[nodiscard]] double sqrt_up(double a);

} // namespace sival::rounding
