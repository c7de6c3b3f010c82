#pragma once

#include <span>

namespace hawkes_queue {

/// Divided difference exp[x_0, ..., x_{n-1}] of the exponential function.
/// Repeated and clustered nodes are handled without cancellation.
double exp_divided_difference(std::span<const double> nodes);

/// Value at t of the convolution e^{-a_1 .} * ... * e^{-a_n .} on [0, t],
/// i.e. t^{n-1} exp[-a_1 t, ..., -a_n t]. Decay rates may be zero or
/// negative. Smooth in the rates, so closed forms built from it have no
/// removable singularities.
double exp_convolution(std::span<const double> rates, double t);

}  // namespace hawkes_queue
