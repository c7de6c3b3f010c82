#pragma once

#include <string>
#include <vector>

#include "hawkes_queue/model.hpp"

namespace hawkes_queue {

/// Hawkes/sdHawkes: lambda0 = lambda* = r = s = mu* = mu0 = 2, B ~ Exp(2), C ~ Exp(2).
Model preset_fig1();
/// M/sdHawkes: lambda = 2, s = 2, mu* = mu0 = 2, C ~ Exp(2).
Model preset_fig2();
/// Hawkes/M: r = 2, lambda0 = lambda* = 2, B ~ Exp(2), mu* = 2.
Model preset_fig3();
/// M/M: lambda0 = lambda* = 2, mu0 = mu* = 2.
Model preset_mm_base();
/// Critical arrivals E[B] = r: Constant B = 2, r = 2, lambda0 = lambda* = 2.
Model preset_corollary1();

/// Looks up fig1, fig2, fig3, mm-base, corollary1; DomainError otherwise.
Model preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace hawkes_queue
