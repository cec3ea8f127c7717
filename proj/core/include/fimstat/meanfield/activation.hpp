#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fimstat::meanfield {

enum class ActivationKind { erf, relu, leaky_relu, linear, tanh, custom };

/// Scalar activation phi together with its derivative.
///
/// Built-in kinds are dispatched with a switch so forward passes stay cheap;
/// `custom` wraps user callables. `kinks()` lists the points where phi or
/// phi' is not smooth; quadrature splits its integration range there.
class Activation {
public:
    using Fn = std::function<double(double)>;

    static Activation erf();
    static Activation relu();
    static Activation leaky_relu(double slope);
    static Activation linear();
    static Activation tanh();
    static Activation custom(std::string name, Fn value, Fn derivative, std::vector<double> kinks = {});

    /// "erf", "relu", "leaky-relu", "linear", "tanh". Throws DomainError otherwise.
    static Activation from_name(std::string_view name, double slope = 0.01);

    ActivationKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    double slope() const noexcept { return slope_; }
    std::span<const double> kinks() const noexcept { return kinks_; }

    /// erf, relu and linear have closed-form Gaussian kernels.
    bool has_closed_form() const noexcept;

    double value(double x) const;
    double derivative(double x) const;

private:
    Activation(ActivationKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    ActivationKind kind_;
    std::string name_;
    double slope_ = 0.0;
    std::vector<double> kinks_;
    std::shared_ptr<const Fn> value_fn_;
    std::shared_ptr<const Fn> derivative_fn_;
};

}  // namespace fimstat::meanfield
