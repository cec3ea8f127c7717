#include "fimstat/meanfield/activation.hpp"

#include "fimstat/errors.hpp"

#include <cmath>
#include <numbers>

namespace fimstat::meanfield {

Activation Activation::erf() { return Activation(ActivationKind::erf, "erf"); }

Activation Activation::relu() {
    Activation a(ActivationKind::relu, "relu");
    a.kinks_ = {0.0};
    return a;
}

Activation Activation::leaky_relu(double slope) {
    if (!std::isfinite(slope)) throw DomainError("leaky-relu slope must be finite");
    Activation a(ActivationKind::leaky_relu, "leaky-relu");
    a.slope_ = slope;
    a.kinks_ = {0.0};
    return a;
}

Activation Activation::linear() { return Activation(ActivationKind::linear, "linear"); }

Activation Activation::tanh() { return Activation(ActivationKind::tanh, "tanh"); }

Activation Activation::custom(std::string name, Fn value, Fn derivative, std::vector<double> kinks) {
    if (!value || !derivative) throw DomainError("custom activation needs both phi and phi'");
    Activation a(ActivationKind::custom, std::move(name));
    a.value_fn_ = std::make_shared<const Fn>(std::move(value));
    a.derivative_fn_ = std::make_shared<const Fn>(std::move(derivative));
    a.kinks_ = std::move(kinks);
    return a;
}

Activation Activation::from_name(std::string_view name, double slope) {
    if (name == "erf") return erf();
    if (name == "relu") return relu();
    if (name == "leaky-relu" || name == "leaky_relu") return leaky_relu(slope);
    if (name == "linear") return linear();
    if (name == "tanh") return tanh();
    throw DomainError("unknown activation '" + std::string(name) + "'");
}

bool Activation::has_closed_form() const noexcept {
    return kind_ == ActivationKind::erf || kind_ == ActivationKind::relu || kind_ == ActivationKind::linear;
}

double Activation::value(double x) const {
    switch (kind_) {
        case ActivationKind::erf: return std::erf(x);
        case ActivationKind::relu: return x > 0.0 ? x : 0.0;
        case ActivationKind::leaky_relu: return x > 0.0 ? x : slope_ * x;
        case ActivationKind::linear: return x;
        case ActivationKind::tanh: return std::tanh(x);
        case ActivationKind::custom: return (*value_fn_)(x);
    }
    return 0.0;
}

double Activation::derivative(double x) const {
    switch (kind_) {
        case ActivationKind::erf: return 2.0 * std::numbers::inv_sqrtpi * std::exp(-x * x);
        case ActivationKind::relu: return x > 0.0 ? 1.0 : 0.0;
        case ActivationKind::leaky_relu: return x > 0.0 ? 1.0 : slope_;
        case ActivationKind::linear: return 1.0;
        case ActivationKind::tanh: {
            const double t = std::tanh(x);
            return 1.0 - t * t;
        }
        case ActivationKind::custom: return (*derivative_fn_)(x);
    }
    return 0.0;
}

}  // namespace fimstat::meanfield
