#pragma once

#include "fimstat/data/sample_batch.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace fimstat::data {

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;  // unsigned byte, 3 dimensions
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;  // unsigned byte, 1 dimension

struct IdxImages {
    std::uint32_t count = 0;
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<std::uint8_t> pixels;  // count * rows * cols, sample-major
};

struct IdxLabels {
    std::vector<std::uint8_t> labels;
};

/// Parsers for the big-endian IDX layout. Errors are ParseError with the
/// byte offset of the offending field.
IdxImages parse_idx_images(std::span<const std::uint8_t> bytes);
IdxLabels parse_idx_labels(std::span<const std::uint8_t> bytes, int classes = 10);

IdxImages read_idx_images(const std::filesystem::path& path);
IdxLabels read_idx_labels(const std::filesystem::path& path, int classes = 10);

std::vector<std::uint8_t> encode_idx_images(const IdxImages& images);
std::vector<std::uint8_t> encode_idx_labels(const IdxLabels& labels);
void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Loads an image/label pair: images flattened to rows*cols inputs, each
/// sample standardised on its own pixels, labels one-hot over `classes`.
SampleBatch load_idx(const std::filesystem::path& images, const std::filesystem::path& labels, int classes = 10);

}  // namespace fimstat::data
