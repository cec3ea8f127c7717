#include "fimstat/meanfield/macro_state.hpp"

#include "fimstat/errors.hpp"

#include <cmath>
#include <limits>

namespace fimstat::meanfield {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_finite(double v, const char* what, int layer) {
    if (!std::isfinite(v)) throw OverflowError(std::string("non-finite ") + what + " in macroscopic recurrence", layer);
}

// Rounding can push |q_st| a hair above q when the two inputs coincide.
double clamp_overlap(double q, double q_st) {
    if (q_st > q) return q;
    if (q_st < -q) return -q;
    return q_st;
}

}  // namespace

bool MacroState::has_backward() const noexcept {
    return !qtil.empty() && !std::isnan(qtil[1]);
}

MacroState forward_recurrence(const NetworkShape& shape, double qhat0, double qhat_st0, KernelMethod method) {
    shape.validate();
    if (!(qhat0 >= 0.0) || !std::isfinite(qhat0)) throw DomainError("qhat0 must be finite and >= 0");
    if (!std::isfinite(qhat_st0) || std::abs(qhat_st0) > qhat0)
        throw DomainError("need qhat0 >= |qhat_st0| (Cauchy-Schwarz on the input overlap)");

    const int L = shape.depth();
    const auto n = static_cast<std::size_t>(L + 1);
    MacroState m;
    m.qhat.assign(n, kNaN);
    m.q.assign(n, kNaN);
    m.qtil.assign(n, kNaN);
    m.qhat_st.assign(n, kNaN);
    m.q_st.assign(n, kNaN);
    m.qtil_st.assign(n, kNaN);

    m.qhat[0] = qhat0;
    m.qhat_st[0] = qhat_st0;
    for (int l = 0; l < L; ++l) {
        const auto i = static_cast<std::size_t>(l);
        const double sw = shape.weight_variance(l + 1);
        const double sb = shape.bias_variance(l + 1);
        m.q[i + 1] = sw * m.qhat[i] + sb;
        m.q_st[i + 1] = clamp_overlap(m.q[i + 1], sw * m.qhat_st[i] + sb);
        require_finite(m.q[i + 1], "q", l + 1);
        require_finite(m.q_st[i + 1], "q_st", l + 1);
        if (l + 1 <= L - 1) {
            const Activation& act = shape.activation(l + 1);
            m.qhat[i + 1] = gaussian_second_moment(act, m.q[i + 1], method);
            m.qhat_st[i + 1] = clamp_overlap(m.qhat[i + 1], kernel_I_phi(act, m.q[i + 1], m.q_st[i + 1], method));
            require_finite(m.qhat[i + 1], "qhat", l + 1);
            require_finite(m.qhat_st[i + 1], "qhat_st", l + 1);
        }
    }
    return m;
}

MacroState backward_recurrence(const NetworkShape& shape, MacroState m, KernelMethod method) {
    const int L = shape.depth();
    if (m.depth() != L || std::isnan(m.q[static_cast<std::size_t>(L)]))
        throw DomainError("backward recurrence needs the forward fields of the same shape");
    const auto last = static_cast<std::size_t>(L);
    m.qtil[last] = 1.0;
    m.qtil_st[last] = 1.0;
    for (int l = L - 1; l >= 1; --l) {
        const auto i = static_cast<std::size_t>(l);
        const Activation& act = shape.activation(l);
        const double sw = shape.weight_variance(l + 1);
        m.qtil[i] = sw * m.qtil[i + 1] * gaussian_derivative_second_moment(act, m.q[i], method);
        m.qtil_st[i] = sw * m.qtil_st[i + 1] * kernel_I_phi_prime(act, m.q[i], m.q_st[i], method);
        require_finite(m.qtil[i], "qtil", l);
        require_finite(m.qtil_st[i], "qtil_st", l);
    }
    return m;
}

MacroState solve_macro_state(const NetworkShape& shape, double qhat0, double qhat_st0, KernelMethod method) {
    return backward_recurrence(shape, forward_recurrence(shape, qhat0, qhat_st0, method), method);
}

}  // namespace fimstat::meanfield
