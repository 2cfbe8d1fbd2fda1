#include "neqc/nn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace neqc {

namespace {

constexpr int kLayers = 3;
constexpr int kSignalLen = 4; // alpha viewed as a one-channel signal
constexpr int kKernel = 3;

struct LayerShape {
    int out = 0;   // dense rows / conv output channels
    int in = 0;    // dense cols / conv input channels
    int w_len = 0; // weight element count
    int b_len = 0; // bias element count
    int x_len = 0; // flattened input length
    int y_len = 0; // flattened output length
};

std::array<LayerShape, kLayers> layer_shapes(const NNArchitecture& a) {
    if (a.theta_count < 1) {
        throw std::invalid_argument("theta_count must be positive, got " +
                                    std::to_string(a.theta_count));
    }
    std::array<LayerShape, kLayers> s{};
    if (a.kind == NNKind::Dense) {
        const int dims[kLayers + 1] = {4, 10, 20, a.theta_count};
        for (int l = 0; l < kLayers; ++l) {
            s[l].in = dims[l];
            s[l].out = dims[l + 1];
            s[l].w_len = s[l].out * s[l].in;
            s[l].b_len = s[l].out;
            s[l].x_len = s[l].in;
            s[l].y_len = s[l].out;
        }
    } else {
        const int chans[kLayers + 1] = {1, 10, 20,
                                        conv_out_channels(a.theta_count)};
        for (int l = 0; l < kLayers; ++l) {
            s[l].in = chans[l];
            s[l].out = chans[l + 1];
            s[l].w_len = s[l].out * s[l].in * kKernel;
            s[l].b_len = s[l].out;
            s[l].x_len = s[l].in * kSignalLen;
            s[l].y_len = s[l].out * kSignalLen;
        }
    }
    return s;
}

void check_weight_shapes(const NNWeights& w,
                         const std::array<LayerShape, kLayers>& s) {
    if (w.layers.size() != kLayers) {
        throw std::invalid_argument("expected " + std::to_string(kLayers) +
                                    " layers, got " +
                                    std::to_string(w.layers.size()));
    }
    for (int l = 0; l < kLayers; ++l) {
        if (w.layers[l].w.size() != static_cast<std::size_t>(s[l].w_len) ||
            w.layers[l].b.size() != static_cast<std::size_t>(s[l].b_len)) {
            throw std::invalid_argument(
                "layer " + std::to_string(l) +
                " weight shape does not match the architecture");
        }
    }
}

void dense_forward(const LayerShape& s, const std::vector<double>& w,
                   const std::vector<double>& b, const std::vector<double>& x,
                   std::vector<double>& z) {
    z.assign(s.out, 0.0);
    for (int o = 0; o < s.out; ++o) {
        double acc = b[o];
        const double* row = w.data() + static_cast<std::size_t>(o) * s.in;
        for (int i = 0; i < s.in; ++i) {
            acc += row[i] * x[i];
        }
        z[o] = acc;
    }
}

// z[oc][p] = b[oc] + sum_ic sum_k w[oc][ic][k] * x[ic][p + k - 1], with x
// reading as zero outside [0, 4). Stride 1 and padding 1 keep the length.
void conv_forward(const LayerShape& s, const std::vector<double>& w,
                  const std::vector<double>& b, const std::vector<double>& x,
                  std::vector<double>& z) {
    z.assign(static_cast<std::size_t>(s.out) * kSignalLen, 0.0);
    for (int oc = 0; oc < s.out; ++oc) {
        for (int p = 0; p < kSignalLen; ++p) {
            double acc = b[oc];
            for (int ic = 0; ic < s.in; ++ic) {
                const double* ker =
                    w.data() + (static_cast<std::size_t>(oc) * s.in + ic) * kKernel;
                for (int k = 0; k < kKernel; ++k) {
                    const int q = p + k - 1;
                    if (q >= 0 && q < kSignalLen) {
                        acc += ker[k] * x[static_cast<std::size_t>(ic) * kSignalLen + q];
                    }
                }
            }
            z[static_cast<std::size_t>(oc) * kSignalLen + p] = acc;
        }
    }
}

void dense_backward(const LayerShape& s, const std::vector<double>& w,
                    const std::vector<double>& x, const std::vector<double>& dz,
                    std::vector<double>& dw, std::vector<double>& db,
                    std::vector<double>& dx) {
    dw.assign(s.w_len, 0.0);
    db.assign(s.b_len, 0.0);
    dx.assign(s.x_len, 0.0);
    for (int o = 0; o < s.out; ++o) {
        db[o] = dz[o];
        for (int i = 0; i < s.in; ++i) {
            const std::size_t idx = static_cast<std::size_t>(o) * s.in + i;
            dw[idx] = dz[o] * x[i];
            dx[i] += w[idx] * dz[o];
        }
    }
}

void conv_backward(const LayerShape& s, const std::vector<double>& w,
                   const std::vector<double>& x, const std::vector<double>& dz,
                   std::vector<double>& dw, std::vector<double>& db,
                   std::vector<double>& dx) {
    dw.assign(s.w_len, 0.0);
    db.assign(s.b_len, 0.0);
    dx.assign(s.x_len, 0.0);
    for (int oc = 0; oc < s.out; ++oc) {
        for (int p = 0; p < kSignalLen; ++p) {
            const double g = dz[static_cast<std::size_t>(oc) * kSignalLen + p];
            db[oc] += g;
            for (int ic = 0; ic < s.in; ++ic) {
                const std::size_t base =
                    (static_cast<std::size_t>(oc) * s.in + ic) * kKernel;
                for (int k = 0; k < kKernel; ++k) {
                    const int q = p + k - 1;
                    if (q >= 0 && q < kSignalLen) {
                        const std::size_t xi =
                            static_cast<std::size_t>(ic) * kSignalLen + q;
                        dw[base + k] += g * x[xi];
                        dx[xi] += w[base + k] * g;
                    }
                }
            }
        }
    }
}

} // namespace

int conv_out_channels(int theta_count) { return theta_count / 4 + 1; }

std::size_t nn_param_count(const NNArchitecture& a) {
    const auto shapes = layer_shapes(a);
    std::size_t count = 4;
    for (const LayerShape& s : shapes) {
        count += static_cast<std::size_t>(s.w_len) + s.b_len;
    }
    return count;
}

NNWeights init_nn_weights(const NNArchitecture& a, Rng& rng) {
    const auto shapes = layer_shapes(a);
    NNWeights w;
    for (double& v : w.alpha) {
        v = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    for (const LayerShape& s : shapes) {
        const int fan_in = a.kind == NNKind::Dense ? s.in : s.in * kKernel;
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        NNWeights::Layer layer;
        layer.w.resize(s.w_len);
        for (double& v : layer.w) {
            v = rng.uniform(-bound, bound);
        }
        layer.b.assign(s.b_len, 0.0);
        w.layers.push_back(std::move(layer));
    }
    return w;
}

std::vector<double> flatten_weights(const NNWeights& w) {
    std::vector<double> flat(w.alpha.begin(), w.alpha.end());
    for (const NNWeights::Layer& layer : w.layers) {
        flat.insert(flat.end(), layer.w.begin(), layer.w.end());
        flat.insert(flat.end(), layer.b.begin(), layer.b.end());
    }
    return flat;
}

NNWeights unflatten_weights(const NNArchitecture& a,
                            std::span<const double> flat) {
    const auto shapes = layer_shapes(a);
    if (flat.size() != nn_param_count(a)) {
        throw std::invalid_argument(
            "flat weight vector has length " + std::to_string(flat.size()) +
            ", architecture needs " + std::to_string(nn_param_count(a)));
    }
    NNWeights w;
    auto it = flat.begin();
    std::copy(it, it + 4, w.alpha.begin());
    it += 4;
    for (const LayerShape& s : shapes) {
        NNWeights::Layer layer;
        layer.w.assign(it, it + s.w_len);
        it += s.w_len;
        layer.b.assign(it, it + s.b_len);
        it += s.b_len;
        w.layers.push_back(std::move(layer));
    }
    return w;
}

std::vector<double> nn_forward(const NNArchitecture& a, const NNWeights& w,
                               NNTape* tape) {
    const auto shapes = layer_shapes(a);
    check_weight_shapes(w, shapes);

    std::vector<double> x(w.alpha.begin(), w.alpha.end());
    if (tape) {
        tape->x.clear();
        tape->x.push_back(x);
    }
    std::vector<double> z;
    for (int l = 0; l < kLayers; ++l) {
        if (a.kind == NNKind::Dense) {
            dense_forward(shapes[l], w.layers[l].w, w.layers[l].b, x, z);
        } else {
            conv_forward(shapes[l], w.layers[l].w, w.layers[l].b, x, z);
        }
        for (double& v : z) {
            v = std::tanh(v);
        }
        x = std::move(z);
        if (tape) {
            tape->x.push_back(x);
        }
    }

    std::vector<double> theta(x.begin(), x.begin() + a.theta_count);
    for (double& t : theta) {
        t *= a.output_scale;
    }
    return theta;
}

std::vector<double> nn_backward(const NNArchitecture& a, const NNWeights& w,
                                const NNTape& tape,
                                std::span<const double> d_theta) {
    const auto shapes = layer_shapes(a);
    check_weight_shapes(w, shapes);
    if (d_theta.size() != static_cast<std::size_t>(a.theta_count)) {
        throw std::invalid_argument("d_theta length does not match theta_count");
    }
    if (tape.x.size() != kLayers + 1 ||
        tape.x.back().size() !=
            static_cast<std::size_t>(shapes[kLayers - 1].y_len)) {
        throw std::invalid_argument("tape does not match the architecture");
    }

    // Upstream gradient on the final activation; entries past theta_count
    // never reach the circuit, so their gradient is zero.
    std::vector<double> dy(shapes[kLayers - 1].y_len, 0.0);
    for (int i = 0; i < a.theta_count; ++i) {
        dy[i] = a.output_scale * d_theta[i];
    }

    std::array<std::vector<double>, kLayers> dw;
    std::array<std::vector<double>, kLayers> db;
    for (int l = kLayers - 1; l >= 0; --l) {
        const std::vector<double>& y = tape.x[l + 1];
        for (std::size_t i = 0; i < dy.size(); ++i) {
            dy[i] *= 1.0 - y[i] * y[i]; // tanh'(z) = 1 - tanh(z)^2
        }
        std::vector<double> dx;
        if (a.kind == NNKind::Dense) {
            dense_backward(shapes[l], w.layers[l].w, tape.x[l], dy, dw[l],
                           db[l], dx);
        } else {
            conv_backward(shapes[l], w.layers[l].w, tape.x[l], dy, dw[l],
                          db[l], dx);
        }
        dy = std::move(dx);
    }

    std::vector<double> flat;
    flat.reserve(nn_param_count(a));
    flat.insert(flat.end(), dy.begin(), dy.end()); // d alpha
    for (int l = 0; l < kLayers; ++l) {
        flat.insert(flat.end(), dw[l].begin(), dw[l].end());
        flat.insert(flat.end(), db[l].begin(), db[l].end());
    }
    return flat;
}

CostGrad neqc_cost_grad(const CircuitStructure& c, const NNArchitecture& a,
                        const NNWeights& w, const State& input) {
    NNTape tape;
    const std::vector<double> theta = nn_forward(a, w, &tape);
    CostGrad inner = circuit_cost_grad(c, theta, input);

    CostGrad out;
    out.value = inner.value;
    out.grad = nn_backward(a, w, tape, inner.grad);
    return out;
}

} // namespace neqc
