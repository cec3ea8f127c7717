#pragma once

#include "fimstat/meanfield/activation.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fimstat::meanfield {

/// Architecture and weight-distribution hyperparameters of a fully connected
/// network with L >= 2 weight layers and a linear output layer.
///
/// Layer indices follow the usual convention: widths[0] = M_0 is the input,
/// widths[L] = C the output; weight layer l (1..L) maps M_{l-1} -> M_l.
/// Hidden widths are read as M_l = alpha_l * M for the base width M.
struct NetworkShape {
    std::vector<int> widths;              // M_0 .. M_L
    int base_width = 0;                   // M
    std::vector<double> sigma_w2;         // per weight layer, index l-1
    std::vector<double> sigma_b2;         // per weight layer, index l-1
    std::vector<Activation> activations;  // per hidden layer, index l-1

    /// Every hidden layer has width M, input width M0 (default M), C outputs.
    static NetworkShape uniform(int depth, int width, int outputs, double sigma_w2, double sigma_b2,
                                const Activation& activation, std::optional<int> input_width = {});

    /// Hidden widths round(alpha_l * M) for coefficients alpha_0..alpha_{L-1}.
    static NetworkShape from_coefficients(int width, const std::vector<double>& coefficients, int outputs,
                                          double sigma_w2, double sigma_b2, const Activation& activation);

    /// Throws DomainError on an invalid shape.
    void validate() const;

    int depth() const noexcept { return static_cast<int>(widths.size()) - 1; }
    int width(int l) const { return widths.at(static_cast<std::size_t>(l)); }
    int outputs() const { return widths.back(); }
    int input_width() const { return widths.front(); }

    double weight_variance(int l) const { return sigma_w2.at(static_cast<std::size_t>(l - 1)); }
    double bias_variance(int l) const { return sigma_b2.at(static_cast<std::size_t>(l - 1)); }
    const Activation& activation(int l) const { return activations.at(static_cast<std::size_t>(l - 1)); }
    bool uniform_variances() const;

    /// alpha_l = M_l / M for 0 <= l <= L-1.
    double coefficient(int l) const;
    /// alpha = sum_{l=1}^{L-1} alpha_l * alpha_{l-1}.
    double alpha() const;
    /// min over alpha_0 .. alpha_{L-1}.
    double alpha_min() const;

    /// Every weight and bias, output layer included.
    std::size_t parameter_count() const;
    std::size_t weight_count() const;
    /// alpha * M^2, the count the large-width theory normalises by.
    double theory_parameter_count() const;

    std::size_t weight_offset(int l) const;
    std::size_t bias_offset(int l) const;
};

}  // namespace fimstat::meanfield
