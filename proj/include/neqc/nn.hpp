#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "neqc/adjoint.hpp"
#include "neqc/circuit.hpp"
#include "neqc/rng.hpp"
#include "neqc/state.hpp"

namespace neqc {

enum class NNKind { Dense, Conv };

/// Generator network that maps a 4-vector alpha to the circuit's angle
/// vector. The hidden sizes are fixed; only the output width follows the
/// circuit.
///
/// Dense: Linear 4 -> 10 -> 20 -> theta_count, tanh after every layer.
/// Conv: three length-preserving 1-d convolutions (kernel 3, stride 1,
/// padding 1) over a 1x4 signal, channels 1 -> 10 -> 20 ->
/// (theta_count / 4 + 1), tanh after every layer; the channel-major
/// flattening is truncated to theta_count entries.
///
/// Angles come out in (-output_scale, output_scale).
struct NNArchitecture {
    NNKind kind = NNKind::Dense;
    int theta_count = 0;
    double output_scale = 1.0;
};

/// Trainable state of a generator network. The network input alpha is
/// trained jointly with the layer weights.
struct NNWeights {
    struct Layer {
        std::vector<double> w; // dense: out x in, row-major;
                               // conv: out_ch x in_ch x 3, row-major
        std::vector<double> b; // one per output unit / channel
    };

    std::array<double, 4> alpha{};
    std::vector<Layer> layers;
};

/// Output channels of the last convolution: theta_count / 4 + 1, so the
/// flattened output always covers theta_count entries.
int conv_out_channels(int theta_count);

/// Number of trainable scalars: 4 for alpha plus every weight and bias.
std::size_t nn_param_count(const NNArchitecture& a);

/// Fresh weights: alpha ~ U[0, 2pi)^4, each weight ~ U(-k, k) with
/// k = 1/sqrt(fan_in) (fan_in = 3 * in_channels for convolutions), biases
/// zero. Draw order matches the flattened layout.
NNWeights init_nn_weights(const NNArchitecture& a, Rng& rng);

/// Canonical flat layout: alpha, then each layer's weights then biases in
/// forward order. Round-trips with unflatten_weights.
std::vector<double> flatten_weights(const NNWeights& w);
NNWeights unflatten_weights(const NNArchitecture& a,
                            std::span<const double> flat);

/// Activations recorded by nn_forward: x[0] is alpha, x[l + 1] the tanh
/// output of layer l. Consumed by nn_backward.
struct NNTape {
    std::vector<std::vector<double>> x;
};

/// Runs the network on w.alpha. Throws if the weight shapes do not match
/// the architecture.
std::vector<double> nn_forward(const NNArchitecture& a, const NNWeights& w,
                               NNTape* tape = nullptr);

/// Pulls d(cost)/d(theta) back through the network recorded in `tape`,
/// returning the gradient in the flattened weight layout.
std::vector<double> nn_backward(const NNArchitecture& a, const NNWeights& w,
                                const NNTape& tape,
                                std::span<const double> d_theta);

/// Loss and gradient of the generator-plus-circuit pipeline, in the
/// flattened weight space.
CostGrad neqc_cost_grad(const CircuitStructure& c, const NNArchitecture& a,
                        const NNWeights& w, const State& input);

} // namespace neqc
