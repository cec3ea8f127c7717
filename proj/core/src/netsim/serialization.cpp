#include "fimstat/netsim/serialization.hpp"

#include "fimstat/errors.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace fimstat::netsim {

namespace {

constexpr char kMagic[4] = {'F', 'I', 'M', 'P'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little, "binary container assumes a little-endian host");

template <class T>
void put(std::vector<std::uint8_t>& out, const T& v) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(&v);
    out.insert(out.end(), p, p + sizeof(T));
}

template <class T>
T get(const std::vector<std::uint8_t>& in, std::size_t& pos) {
    if (pos + sizeof(T) > in.size()) throw ParseError("truncated parameter container", pos);
    T v;
    std::memcpy(&v, in.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
}

}  // namespace

nlohmann::json shape_to_json(const NetworkShape& shape) {
    nlohmann::json acts = nlohmann::json::array();
    for (const auto& a : shape.activations) {
        if (a.kind() == meanfield::ActivationKind::custom)
            throw DomainError("custom activation '" + a.name() + "' cannot be serialised");
        nlohmann::json e{{"name", a.name()}};
        if (a.kind() == meanfield::ActivationKind::leaky_relu) e["slope"] = a.slope();
        acts.push_back(e);
    }
    return {{"widths", shape.widths},
            {"base_width", shape.base_width},
            {"sigma_w2", shape.sigma_w2},
            {"sigma_b2", shape.sigma_b2},
            {"activations", acts}};
}

NetworkShape shape_from_json(const nlohmann::json& j) {
    NetworkShape s;
    try {
        s.widths = j.at("widths").get<std::vector<int>>();
        s.base_width = j.at("base_width").get<int>();
        s.sigma_w2 = j.at("sigma_w2").get<std::vector<double>>();
        s.sigma_b2 = j.at("sigma_b2").get<std::vector<double>>();
        for (const auto& a : j.at("activations"))
            s.activations.push_back(
                meanfield::Activation::from_name(a.at("name").get<std::string>(), a.value("slope", 0.01)));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed shape: ") + e.what());
    }
    s.validate();
    return s;
}

nlohmann::json parameters_to_json(const ParameterSet& params) {
    return {{"format", "fimstat.parameters"},
            {"version", kVersion},
            {"shape", shape_to_json(params.shape)},
            {"seed", params.seed},
            {"theta", std::vector<double>(params.theta.begin(), params.theta.end())}};
}

ParameterSet parameters_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "fimstat.parameters") throw DomainError("not a fimstat parameter document");
    ParameterSet p;
    p.shape = shape_from_json(j.at("shape"));
    p.seed = j.at("seed").get<std::uint64_t>();
    const auto theta = j.at("theta").get<std::vector<double>>();
    if (theta.size() != p.shape.parameter_count()) throw DomainError("theta length does not match the shape");
    p.theta = Eigen::Map<const Eigen::VectorXd>(theta.data(), static_cast<Eigen::Index>(theta.size()));
    return p;
}

std::vector<std::uint8_t> encode_parameters(const ParameterSet& params) {
    const std::string header = shape_to_json(params.shape).dump();
    std::vector<std::uint8_t> out(kMagic, kMagic + 4);
    put(out, kVersion);
    put(out, static_cast<std::uint32_t>(header.size()));
    out.insert(out.end(), header.begin(), header.end());
    put(out, params.seed);
    put(out, static_cast<std::uint64_t>(params.theta.size()));
    const auto* p = reinterpret_cast<const std::uint8_t*>(params.theta.data());
    out.insert(out.end(), p, p + sizeof(double) * static_cast<std::size_t>(params.theta.size()));
    return out;
}

ParameterSet decode_parameters(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) throw ParseError("bad parameter magic", 0);
    std::size_t pos = 4;
    if (const auto v = get<std::uint32_t>(bytes, pos); v != kVersion)
        throw ParseError("unsupported container version " + std::to_string(v), 4);
    const auto hlen = get<std::uint32_t>(bytes, pos);
    if (pos + hlen > bytes.size()) throw ParseError("truncated shape header", pos);
    const std::string header(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                             bytes.begin() + static_cast<std::ptrdiff_t>(pos + hlen));
    const std::size_t header_pos = pos;
    pos += hlen;
    ParameterSet p;
    try {
        p.shape = shape_from_json(nlohmann::json::parse(header));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad shape header: ") + e.what(), header_pos);
    }
    p.seed = get<std::uint64_t>(bytes, pos);
    const std::size_t count_pos = pos;
    const auto count = get<std::uint64_t>(bytes, pos);
    if (count != p.shape.parameter_count()) throw ParseError("parameter count does not match the shape", count_pos);
    if (pos + count * sizeof(double) > bytes.size()) throw ParseError("truncated parameter data", bytes.size());
    p.theta.resize(static_cast<Eigen::Index>(count));
    std::memcpy(p.theta.data(), bytes.data() + pos, count * sizeof(double));
    return p;
}

void save_parameters(const ParameterSet& params, const std::filesystem::path& path) {
    const auto bytes = encode_parameters(params);
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("failed to write '" + path.string() + "'");
}

ParameterSet load_parameters(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    return decode_parameters({std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()});
}

}  // namespace fimstat::netsim
