#include "fimstat/meanfield/network_shape.hpp"

#include "fimstat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fimstat::meanfield {

NetworkShape NetworkShape::uniform(int depth, int width, int outputs, double sigma_w2, double sigma_b2,
                                   const Activation& activation, std::optional<int> input_width) {
    NetworkShape s;
    s.base_width = width;
    s.widths.assign(static_cast<std::size_t>(std::max(depth, 0) + 1), width);
    if (depth >= 0) {
        s.widths.front() = input_width.value_or(width);
        s.widths.back() = outputs;
    }
    s.sigma_w2.assign(static_cast<std::size_t>(std::max(depth, 0)), sigma_w2);
    s.sigma_b2.assign(static_cast<std::size_t>(std::max(depth, 0)), sigma_b2);
    s.activations.assign(static_cast<std::size_t>(std::max(depth - 1, 0)), activation);
    s.validate();
    return s;
}

NetworkShape NetworkShape::from_coefficients(int width, const std::vector<double>& coefficients, int outputs,
                                             double sigma_w2, double sigma_b2, const Activation& activation) {
    const int depth = static_cast<int>(coefficients.size());
    NetworkShape s;
    s.base_width = width;
    for (double c : coefficients) {
        if (!(c > 0.0)) throw DomainError("width coefficients must be positive");
        s.widths.push_back(std::max(1, static_cast<int>(std::lround(c * width))));
    }
    s.widths.push_back(outputs);
    s.sigma_w2.assign(static_cast<std::size_t>(depth), sigma_w2);
    s.sigma_b2.assign(static_cast<std::size_t>(depth), sigma_b2);
    s.activations.assign(static_cast<std::size_t>(std::max(depth - 1, 0)), activation);
    s.validate();
    return s;
}

void NetworkShape::validate() const {
    const int L = depth();
    if (L < 2) throw DomainError("network needs L >= 2 weight layers");
    if (base_width < 1) throw DomainError("base width M must be >= 1");
    for (int w : widths)
        if (w < 1) throw DomainError("all layer widths must be >= 1");
    if (sigma_w2.size() != static_cast<std::size_t>(L) || sigma_b2.size() != static_cast<std::size_t>(L))
        throw DomainError("need one (sigma_w2, sigma_b2) pair per weight layer");
    for (double v : sigma_w2)
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("sigma_w2 must be positive and finite");
    for (double v : sigma_b2)
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("sigma_b2 must be non-negative and finite");
    if (activations.size() != static_cast<std::size_t>(L - 1))
        throw DomainError("need one activation per hidden layer");
}

bool NetworkShape::uniform_variances() const {
    return std::all_of(sigma_w2.begin(), sigma_w2.end(), [&](double v) { return v == sigma_w2.front(); }) &&
           std::all_of(sigma_b2.begin(), sigma_b2.end(), [&](double v) { return v == sigma_b2.front(); });
}

double NetworkShape::coefficient(int l) const {
    if (l < 0 || l >= depth()) throw DomainError("coefficient index out of range");
    return static_cast<double>(width(l)) / base_width;
}

double NetworkShape::alpha() const {
    double a = 0.0;
    for (int l = 1; l <= depth() - 1; ++l) a += coefficient(l) * coefficient(l - 1);
    return a;
}

double NetworkShape::alpha_min() const {
    double m = std::numeric_limits<double>::infinity();
    for (int l = 0; l <= depth() - 1; ++l) m = std::min(m, coefficient(l));
    return m;
}

std::size_t NetworkShape::weight_count() const {
    std::size_t n = 0;
    for (int l = 1; l <= depth(); ++l)
        n += static_cast<std::size_t>(width(l)) * static_cast<std::size_t>(width(l - 1));
    return n;
}

std::size_t NetworkShape::parameter_count() const {
    std::size_t n = weight_count();
    for (int l = 1; l <= depth(); ++l) n += static_cast<std::size_t>(width(l));
    return n;
}

double NetworkShape::theory_parameter_count() const {
    return alpha() * static_cast<double>(base_width) * static_cast<double>(base_width);
}

// Layer-major, weights (row-major W^l_{ij}) before biases.
std::size_t NetworkShape::weight_offset(int l) const {
    if (l < 1 || l > depth()) throw DomainError("layer index out of range");
    std::size_t off = 0;
    for (int m = 1; m < l; ++m)
        off += static_cast<std::size_t>(width(m)) * (static_cast<std::size_t>(width(m - 1)) + 1);
    return off;
}

std::size_t NetworkShape::bias_offset(int l) const {
    return weight_offset(l) + static_cast<std::size_t>(width(l)) * static_cast<std::size_t>(width(l - 1));
}

}  // namespace fimstat::meanfield
