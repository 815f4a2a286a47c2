/**
 * @file io.hpp
 * @brief Cube and label-map files, run reports.
 *
 * HSC1 cube layout (little-endian):
 *
 *     offset  size  field
 *     0       4     magic "HSC1"
 *     4       4     width  (u32)
 *     8       4     height (u32)
 *     12      4     bands  (u32)
 *     16      1     dtype  (1 = float32, 2 = float64)
 *     17      ...   payload, row-major by pixel, bands interleaved
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hsseg/core.hpp"

namespace hsseg {

enum class CubeDtype : std::uint8_t { float32 = 1, float64 = 2 };

inline constexpr std::size_t kCubeHeaderSize = 17;

struct CubeFileHeader {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t bands = 0;
    CubeDtype dtype = CubeDtype::float64;
};

/// Writes float64 unless asked otherwise; float32 output rounds values.
void write_cube(const SpectralCube& cube, const std::filesystem::path& path,
                CubeDtype dtype = CubeDtype::float64);
SpectralCube read_cube(const std::filesystem::path& path);

/// Parses an HSC1 image held in memory. Errors carry the failing byte offset.
SpectralCube parse_cube(std::string_view bytes);
std::string serialize_cube(const SpectralCube& cube, CubeDtype dtype = CubeDtype::float64);

/// Plain graymap (P5 8/16-bit or P2) as a single-band image.
struct Graymap {
    std::size_t width = 0;
    std::size_t height = 0;
    std::uint32_t maxval = 0;
    std::vector<std::uint32_t> pixels;
};

Graymap parse_graymap(std::string_view bytes);
Graymap read_graymap(const std::filesystem::path& path);

/// One band per file, in the given order. Throws DimensionMismatch naming the
/// first file whose size differs from the first one.
SpectralCube read_graymap_stack(const std::vector<std::filesystem::path>& paths);

enum class LabelFileFormat { pgm16, hsc1 };

/// 16-bit P5 (maxval 65535) when the labels fit, single-band HSC1 otherwise.
/// Returns the format used.
LabelFileFormat write_labels(const LabelMap& labels, const std::filesystem::path& path);
std::string serialize_labels(const LabelMap& labels, LabelFileFormat* used = nullptr);

/// Reads either label format back. Labels that are not dense in raster
/// first-appearance order are renumbered.
LabelMap read_labels(const std::filesystem::path& path);
LabelMap parse_labels(std::string_view bytes);

enum class Algorithm { flat, eta, mu };
std::string_view to_string(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view name);

struct SegmentationReport {
    Algorithm algorithm = Algorithm::flat;
    std::string metric;
    double lambda = 0.0;
    double param = 0.0;  // eta or mu; unused for flat
    int connectivity = 4;
    std::string seed_order;
    std::size_t regions = 0;
    std::vector<std::size_t> region_sizes;
    double millis = 0.0;
    LabelFileFormat label_format = LabelFileFormat::pgm16;
};

/// Fills count and sizes from `labels`.
SegmentationReport make_report(Algorithm algorithm, std::string metric, double lambda,
                               double param, Connectivity conn, std::string seed_order,
                               const LabelMap& labels, double millis);

/// One "key: value" line per field.
std::string format_report(const SegmentationReport& report);
void write_report(const SegmentationReport& report, const std::filesystem::path& path);

inline constexpr std::string_view kSweepCsvHeader =
    "algorithm,metric,lambda,param,connectivity,seed_order,regions,millis";

std::string format_csv_row(const SegmentationReport& report);

/// Appends one row, writing the header first when the file is missing or empty.
void append_csv_row(const SegmentationReport& report, const std::filesystem::path& path);

/// Shortest decimal text that parses back to the same double; "inf" for +infinity.
std::string format_real(double v);

}  // namespace hsseg
