#include "aladaen/numerics/network.hpp"

#include "aladaen/errors.hpp"

namespace aladaen::numerics {
namespace {

const char* activation_name(Activation a) {
    switch (a) {
        case Activation::identity: return "identity";
        case Activation::leaky_relu: return "leaky_relu";
        case Activation::sigmoid: return "sigmoid";
    }
    return "identity";
}

Activation activation_from_name(const std::string& name) {
    if (name == "identity") return Activation::identity;
    if (name == "leaky_relu") return Activation::leaky_relu;
    if (name == "sigmoid") return Activation::sigmoid;
    throw FormatError("unknown activation '" + name + "'");
}

}  // namespace

Mlp::Mlp(std::size_t input_dim, std::vector<BlockSpec> blocks, double leaky_slope, Rng& rng)
    : input_dim_(input_dim), slope_(leaky_slope) {
    if (blocks.empty()) throw ArgumentError("an MLP needs at least one block");
    std::size_t in = input_dim;
    for (const auto& spec : blocks) {
        if (spec.width == 0) throw ArgumentError("zero-width dense block");
        Block b;
        b.spec = spec;
        b.linear = LinearLayer(in, spec.width, rng);
        if (spec.batch_norm) b.norm.emplace(spec.width);
        if (spec.dropout > 0.0) b.dropout.emplace(spec.dropout);
        blocks_.push_back(std::move(b));
        in = spec.width;
    }
}

std::size_t Mlp::output_dim() const { return blocks_.empty() ? 0 : blocks_.back().linear.out_dim(); }

Tensor2D Mlp::forward_train(const Tensor2D& input, Rng& rng) {
    Tensor2D x = input;
    for (auto& b : blocks_) {
        b.input = x;
        b.pre = b.linear.forward(x);
        switch (b.spec.activation) {
            case Activation::identity: b.activated = b.pre; break;
            case Activation::leaky_relu: b.activated = leaky_relu(b.pre, slope_); break;
            case Activation::sigmoid: b.activated = sigmoid(b.pre); break;
        }
        x = b.activated;
        if (b.norm) x = b.norm->forward_train(x);
        if (b.dropout) x = b.dropout->forward_train(x, rng);
    }
    return x;
}

Tensor2D Mlp::forward_eval(const Tensor2D& input) const {
    Tensor2D x = input;
    for (const auto& b : blocks_) {
        x = b.linear.forward_rowwise(x);
        switch (b.spec.activation) {
            case Activation::identity: break;
            case Activation::leaky_relu: x = leaky_relu(x, slope_); break;
            case Activation::sigmoid: x = sigmoid(x); break;
        }
        if (b.norm) x = b.norm->forward_eval(x);
    }
    return x;
}

Tensor2D Mlp::backward(const Tensor2D& upstream, bool accumulate) {
    Tensor2D g = upstream;
    for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) {
        auto& b = *it;
        if (b.dropout) g = b.dropout->backward(g);
        if (b.norm) g = b.norm->backward(g, accumulate);
        switch (b.spec.activation) {
            case Activation::identity: break;
            case Activation::leaky_relu: g = leaky_relu_backward(b.pre, g, slope_); break;
            case Activation::sigmoid: g = sigmoid_backward(b.activated, g); break;
        }
        g = accumulate ? b.linear.backward(b.input, g) : b.linear.backward_input(g);
    }
    return g;
}

void Mlp::zero_grad() {
    for (auto& b : blocks_) {
        b.linear.zero_grad();
        if (b.norm) b.norm->zero_grad();
    }
}

std::vector<ParamRef> Mlp::params(const std::string& prefix) {
    std::vector<ParamRef> out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        auto& b = blocks_[i];
        const std::string base = prefix + "." + std::to_string(i);
        out.push_back({&b.linear.weight, &b.linear.grad_weight, base + ".weight"});
        out.push_back({&b.linear.bias, &b.linear.grad_bias, base + ".bias"});
        if (b.norm) {
            out.push_back({&b.norm->gamma, &b.norm->grad_gamma, base + ".gamma"});
            out.push_back({&b.norm->beta, &b.norm->grad_beta, base + ".beta"});
        }
    }
    return out;
}

nlohmann::json tensor_to_json(const Tensor2D& t) {
    return {{"rows", t.rows()}, {"cols", t.cols()},
            {"values", std::vector<double>(t.values().begin(), t.values().end())}};
}

Tensor2D tensor_from_json(const nlohmann::json& j) {
    const auto values = j.at("values").get<std::vector<double>>();
    return Tensor2D(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(), values);
}

nlohmann::json Mlp::to_json() const {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : blocks_) {
        nlohmann::json jb = {
            {"width", b.spec.width},
            {"activation", activation_name(b.spec.activation)},
            {"batch_norm", b.spec.batch_norm},
            {"dropout", b.spec.dropout},
            {"weight", tensor_to_json(b.linear.weight)},
            {"bias", tensor_to_json(b.linear.bias)},
        };
        if (b.norm) {
            jb["norm"] = {
                {"gamma", tensor_to_json(b.norm->gamma)},
                {"beta", tensor_to_json(b.norm->beta)},
                {"running_mean", tensor_to_json(b.norm->running_mean)},
                {"running_var", tensor_to_json(b.norm->running_var)},
                {"momentum", b.norm->momentum},
                {"epsilon", b.norm->epsilon},
                {"batches_seen", b.norm->batches_seen},
            };
        }
        blocks.push_back(std::move(jb));
    }
    return {{"input_dim", input_dim_}, {"leaky_slope", slope_}, {"blocks", std::move(blocks)}};
}

Mlp Mlp::from_json(const nlohmann::json& j) {
    Mlp m;
    m.input_dim_ = j.at("input_dim").get<std::size_t>();
    m.slope_ = j.at("leaky_slope").get<double>();
    std::size_t in = m.input_dim_;
    for (const auto& jb : j.at("blocks")) {
        Block b;
        b.spec.width = jb.at("width").get<std::size_t>();
        b.spec.activation = activation_from_name(jb.at("activation").get<std::string>());
        b.spec.batch_norm = jb.at("batch_norm").get<bool>();
        b.spec.dropout = jb.at("dropout").get<double>();
        b.linear = LinearLayer(tensor_from_json(jb.at("weight")), tensor_from_json(jb.at("bias")));
        if (b.linear.in_dim() != in || b.linear.out_dim() != b.spec.width) {
            throw FormatError("checkpoint layer shape does not chain");
        }
        if (b.spec.batch_norm) {
            const auto& jn = jb.at("norm");
            BatchNorm bn(b.spec.width, jn.at("momentum").get<double>(), jn.at("epsilon").get<double>());
            bn.gamma = tensor_from_json(jn.at("gamma"));
            bn.beta = tensor_from_json(jn.at("beta"));
            bn.running_mean = tensor_from_json(jn.at("running_mean"));
            bn.running_var = tensor_from_json(jn.at("running_var"));
            bn.batches_seen = jn.at("batches_seen").get<std::size_t>();
            b.norm = std::move(bn);
        }
        if (b.spec.dropout > 0.0) b.dropout.emplace(b.spec.dropout);
        in = b.spec.width;
        m.blocks_.push_back(std::move(b));
    }
    return m;
}

}  // namespace aladaen::numerics
