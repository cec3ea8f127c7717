#include "fimstat/data/idx.hpp"

#include "fimstat/errors.hpp"

#include <fmt/format.h>

#include <fstream>
#include <iterator>

namespace fimstat::data {

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset, const char* field) {
    if (offset + 4 > bytes.size()) throw ParseError(fmt::format("truncated IDX header ({})", field), offset);
    return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
           (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void write_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open IDX file '" + path.string() + "'", 0);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes) {
    const std::uint32_t magic = read_be32(bytes, 0, "magic");
    if (magic != kIdxImageMagic)
        throw ParseError(fmt::format("bad IDX image magic 0x{:08x} (expected 0x{:08x})", magic, kIdxImageMagic), 0);
    IdxImages img;
    img.count = read_be32(bytes, 4, "image count");
    img.rows = read_be32(bytes, 8, "rows");
    img.cols = read_be32(bytes, 12, "cols");
    constexpr std::size_t header = 16;
    const std::size_t need = std::size_t{img.count} * img.rows * img.cols;
    if (bytes.size() - header < need)
        throw ParseError(fmt::format("truncated IDX image data: need {} bytes, have {}", need, bytes.size() - header),
                         bytes.size());
    img.pixels.assign(bytes.begin() + header, bytes.begin() + static_cast<std::ptrdiff_t>(header + need));
    return img;
}

IdxLabels parse_idx_labels(std::span<const std::uint8_t> bytes, int classes) {
    const std::uint32_t magic = read_be32(bytes, 0, "magic");
    if (magic != kIdxLabelMagic)
        throw ParseError(fmt::format("bad IDX label magic 0x{:08x} (expected 0x{:08x})", magic, kIdxLabelMagic), 0);
    const std::uint32_t count = read_be32(bytes, 4, "label count");
    constexpr std::size_t header = 8;
    if (bytes.size() - header < count)
        throw ParseError(fmt::format("truncated IDX label data: need {} bytes, have {}", count, bytes.size() - header),
                         bytes.size());
    IdxLabels out;
    out.labels.assign(bytes.begin() + header, bytes.begin() + header + count);
    for (std::size_t i = 0; i < out.labels.size(); ++i)
        if (out.labels[i] >= classes)
            throw ParseError(fmt::format("label {} out of range [0, {})", out.labels[i], classes), header + i);
    return out;
}

IdxImages read_idx_images(const std::filesystem::path& path) { return parse_idx_images(read_file(path)); }

IdxLabels read_idx_labels(const std::filesystem::path& path, int classes) {
    return parse_idx_labels(read_file(path), classes);
}

std::vector<std::uint8_t> encode_idx_images(const IdxImages& images) {
    std::vector<std::uint8_t> out;
    out.reserve(16 + images.pixels.size());
    write_be32(out, kIdxImageMagic);
    write_be32(out, images.count);
    write_be32(out, images.rows);
    write_be32(out, images.cols);
    out.insert(out.end(), images.pixels.begin(), images.pixels.end());
    return out;
}

std::vector<std::uint8_t> encode_idx_labels(const IdxLabels& labels) {
    std::vector<std::uint8_t> out;
    write_be32(out, kIdxLabelMagic);
    write_be32(out, static_cast<std::uint32_t>(labels.labels.size()));
    out.insert(out.end(), labels.labels.begin(), labels.labels.end());
    return out;
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("failed to write '" + path.string() + "'");
}

SampleBatch load_idx(const std::filesystem::path& images, const std::filesystem::path& labels, int classes) {
    const IdxImages img = read_idx_images(images);
    const IdxLabels lab = read_idx_labels(labels, classes);
    if (lab.labels.size() != img.count)
        throw ParseError(fmt::format("label count {} does not match image count {}", lab.labels.size(), img.count), 4);

    const Eigen::Index n = img.count;
    const Eigen::Index dim = Eigen::Index{img.rows} * img.cols;
    SampleBatch batch;
    batch.inputs.resize(n, dim);
    for (Eigen::Index t = 0; t < n; ++t)
        for (Eigen::Index i = 0; i < dim; ++i)
            batch.inputs(t, i) = img.pixels[static_cast<std::size_t>(t * dim + i)];
    standardize_rows(batch.inputs);
    batch.targets = Eigen::MatrixXd::Zero(n, classes);
    for (Eigen::Index t = 0; t < n; ++t) batch.targets(t, lab.labels[static_cast<std::size_t>(t)]) = 1.0;
    batch.provenance = "idx(" + images.string() + ", " + labels.string() + ")";
    return batch;
}

}  // namespace fimstat::data
