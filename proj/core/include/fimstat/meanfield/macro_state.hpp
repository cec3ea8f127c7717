#pragma once

#include "fimstat/meanfield/kernels.hpp"
#include "fimstat/meanfield/network_shape.hpp"

#include <vector>

namespace fimstat::meanfield {

/// Layer-wise macroscopic order parameters of a random network.
///
/// All sequences have L+1 entries indexed by layer; entries outside a
/// sequence's range are NaN:
///   qhat, qhat_st  : l = 0 .. L-1   (second moment / cross-sample overlap of h^l)
///   q, q_st        : l = 1 .. L     (pre-activation variance / covariance)
///   qtil, qtil_st  : l = 1 .. L     (summed squared / overlapping sensitivities)
struct MacroState {
    std::vector<double> qhat, q, qtil;
    std::vector<double> qhat_st, q_st, qtil_st;

    int depth() const noexcept { return static_cast<int>(q.size()) - 1; }
    bool has_backward() const noexcept;
};

/// Iterates the forward recurrences from (qhat0, qhat_st0); the defaults
/// describe i.i.d. standard Gaussian inputs. Requires qhat0 >= |qhat_st0|.
/// Throws OverflowError naming the first layer with a non-finite value.
MacroState forward_recurrence(const NetworkShape& shape, double qhat0 = 1.0, double qhat_st0 = 0.0,
                              KernelMethod method = KernelMethod::automatic);

/// Fills qtil / qtil_st downward from qtil^L = qtil_st^L = 1 (linear outputs).
MacroState backward_recurrence(const NetworkShape& shape, MacroState macro,
                               KernelMethod method = KernelMethod::automatic);

/// forward_recurrence followed by backward_recurrence.
MacroState solve_macro_state(const NetworkShape& shape, double qhat0 = 1.0, double qhat_st0 = 0.0,
                             KernelMethod method = KernelMethod::automatic);

}  // namespace fimstat::meanfield
