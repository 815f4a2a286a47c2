#include "hsseg/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace hsseg {

namespace {

template <typename T>
T load_le(const char* p) {
    std::array<unsigned char, sizeof(T)> raw;
    std::memcpy(raw.data(), p, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
    T v;
    std::memcpy(&v, raw.data(), sizeof(T));
    return v;
}

template <typename T>
void store_le(std::string& out, T v) {
    std::array<char, sizeof(T)> raw;
    std::memcpy(raw.data(), &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
    out.append(raw.data(), raw.size());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading " + path.string());
    return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes,
                std::ios::openmode mode = std::ios::binary | std::ios::trunc) {
    std::ofstream out(path, mode);
    if (!out) throw IoError("cannot open " + path.string() + " for writing: " + std::strerror(errno));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError("error writing " + path.string() + ": " + std::strerror(errno));
}

// Netpbm header tokenizer: whitespace separated, '#' starts a comment.
class PnmHeader {
public:
    explicit PnmHeader(std::string_view bytes) : bytes_(bytes) {}

    std::size_t pos() const noexcept { return pos_; }

    std::uint32_t next_uint(const char* what) {
        skip();
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(bytes_[pos_] - '0');
            if (v > std::numeric_limits<std::uint32_t>::max()) {
                throw FormatError(FormatError::Kind::bad_header, start,
                                  std::string("graymap ") + what + " out of range");
            }
            ++pos_;
        }
        if (pos_ == start) {
            throw FormatError(pos_ >= bytes_.size() ? FormatError::Kind::truncated
                                                    : FormatError::Kind::bad_header,
                              start, std::string("graymap header: expected ") + what);
        }
        return static_cast<std::uint32_t>(v);
    }

    // Exactly one whitespace byte separates the header from a binary raster.
    void end_header() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
            throw FormatError(FormatError::Kind::truncated, pos_,
                              "graymap header not followed by whitespace");
        }
        ++pos_;
    }

private:
    void skip() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view bytes_;
    std::size_t pos_ = 0;
};

CubeFileHeader parse_cube_header(std::string_view bytes) {
    if (bytes.size() < 4) {
        throw FormatError(FormatError::Kind::truncated, bytes.size(), "HSC1 magic truncated");
    }
    if (bytes.substr(0, 4) != "HSC1") {
        throw FormatError(FormatError::Kind::bad_magic, 0, "not an HSC1 cube (bad magic)");
    }
    if (bytes.size() < kCubeHeaderSize) {
        throw FormatError(FormatError::Kind::truncated, bytes.size(), "HSC1 header truncated");
    }
    CubeFileHeader hdr;
    hdr.width = load_le<std::uint32_t>(bytes.data() + 4);
    hdr.height = load_le<std::uint32_t>(bytes.data() + 8);
    hdr.bands = load_le<std::uint32_t>(bytes.data() + 12);
    if (hdr.width == 0) throw FormatError(FormatError::Kind::zero_dims, 4, "HSC1 width is zero");
    if (hdr.height == 0) throw FormatError(FormatError::Kind::zero_dims, 8, "HSC1 height is zero");
    if (hdr.bands == 0) throw FormatError(FormatError::Kind::zero_dims, 12, "HSC1 band count is zero");
    const auto dtype = static_cast<std::uint8_t>(bytes[16]);
    if (dtype != 1 && dtype != 2) {
        throw FormatError(FormatError::Kind::bad_dtype, 16,
                          "HSC1 dtype " + std::to_string(dtype) + " is not 1 or 2");
    }
    hdr.dtype = static_cast<CubeDtype>(dtype);
    return hdr;
}

}  // namespace

std::string serialize_cube(const SpectralCube& cube, CubeDtype dtype) {
    constexpr auto u32max = std::numeric_limits<std::uint32_t>::max();
    if (cube.width() > u32max || cube.height() > u32max || cube.bands() > u32max) {
        throw UsageError("cube dimensions do not fit the HSC1 header");
    }
    std::string out;
    const std::size_t value_size = dtype == CubeDtype::float32 ? 4 : 8;
    out.reserve(kCubeHeaderSize + cube.data().size() * value_size);
    out += "HSC1";
    store_le(out, static_cast<std::uint32_t>(cube.width()));
    store_le(out, static_cast<std::uint32_t>(cube.height()));
    store_le(out, static_cast<std::uint32_t>(cube.bands()));
    out.push_back(static_cast<char>(dtype));
    for (double v : cube.data()) {
        if (dtype == CubeDtype::float32) {
            store_le(out, static_cast<float>(v));
        } else {
            store_le(out, v);
        }
    }
    return out;
}

SpectralCube parse_cube(std::string_view bytes) {
    const auto hdr = parse_cube_header(bytes);
    const std::size_t count =
        static_cast<std::size_t>(hdr.width) * hdr.height * hdr.bands;
    const std::size_t value_size = hdr.dtype == CubeDtype::float32 ? 4 : 8;
    const std::size_t expected = kCubeHeaderSize + count * value_size;
    if (bytes.size() < expected) {
        throw FormatError(FormatError::Kind::truncated, bytes.size(),
                          "HSC1 payload truncated: header implies " + std::to_string(expected) +
                              " bytes, file has " + std::to_string(bytes.size()));
    }
    if (bytes.size() > expected) {
        throw FormatError(FormatError::Kind::bad_header, expected,
                          "HSC1 file has trailing bytes after the payload");
    }
    std::vector<double> data(count);
    const char* p = bytes.data() + kCubeHeaderSize;
    for (std::size_t i = 0; i < count; ++i, p += value_size) {
        data[i] = hdr.dtype == CubeDtype::float32 ? static_cast<double>(load_le<float>(p))
                                                  : load_le<double>(p);
        if (!std::isfinite(data[i])) {
            throw FormatError(FormatError::Kind::bad_header,
                              kCubeHeaderSize + i * value_size,
                              "HSC1 payload holds a non-finite value");
        }
    }
    return SpectralCube(hdr.width, hdr.height, hdr.bands, std::move(data));
}

void write_cube(const SpectralCube& cube, const std::filesystem::path& path, CubeDtype dtype) {
    write_file(path, serialize_cube(cube, dtype));
}

SpectralCube read_cube(const std::filesystem::path& path) {
    try {
        return parse_cube(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": ", e);
    }
}

Graymap parse_graymap(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
        throw FormatError(FormatError::Kind::bad_magic, 0, "not a P5/P2 graymap");
    }
    const bool binary = bytes[1] == '5';
    PnmHeader hdr(bytes.substr(2));
    Graymap g;
    g.width = hdr.next_uint("width");
    g.height = hdr.next_uint("height");
    g.maxval = hdr.next_uint("maxval");
    if (g.width == 0 || g.height == 0) {
        throw FormatError(FormatError::Kind::zero_dims, 2 + hdr.pos(), "graymap has zero size");
    }
    if (g.maxval == 0 || g.maxval > 65535) {
        throw FormatError(FormatError::Kind::bad_header, 2 + hdr.pos(),
                          "graymap maxval must be in 1..65535");
    }
    const std::size_t n = g.width * g.height;
    g.pixels.resize(n);
    if (!binary) {
        for (std::size_t i = 0; i < n; ++i) {
            g.pixels[i] = hdr.next_uint("pixel value");
            if (g.pixels[i] > g.maxval) {
                throw FormatError(FormatError::Kind::bad_header, 2 + hdr.pos(),
                                  "graymap sample exceeds maxval");
            }
        }
        return g;
    }
    hdr.end_header();
    const std::size_t start = 2 + hdr.pos();
    const std::size_t bpp = g.maxval < 256 ? 1 : 2;
    if (bytes.size() < start + n * bpp) {
        throw FormatError(FormatError::Kind::truncated, bytes.size(),
                          "graymap raster truncated: expected " + std::to_string(n * bpp) +
                              " bytes after the header");
    }
    const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data() + start);
    for (std::size_t i = 0; i < n; ++i) {
        g.pixels[i] = bpp == 1 ? raw[i]
                               : (static_cast<std::uint32_t>(raw[2 * i]) << 8) | raw[2 * i + 1];
        if (g.pixels[i] > g.maxval) {
            throw FormatError(FormatError::Kind::bad_header, start + i * bpp,
                              "graymap sample exceeds maxval");
        }
    }
    return g;
}

Graymap read_graymap(const std::filesystem::path& path) {
    try {
        return parse_graymap(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": ", e);
    }
}

SpectralCube read_graymap_stack(const std::vector<std::filesystem::path>& paths) {
    if (paths.empty()) throw UsageError("graymap stack needs at least one file");
    std::vector<Graymap> maps;
    maps.reserve(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k) {
        maps.push_back(read_graymap(paths[k]));
        if (maps[k].width != maps[0].width || maps[k].height != maps[0].height) {
            throw DimensionMismatch("graymap " + std::to_string(k + 1) + " (" +
                                    paths[k].string() + ") is " +
                                    std::to_string(maps[k].width) + "x" +
                                    std::to_string(maps[k].height) + ", expected " +
                                    std::to_string(maps[0].width) + "x" +
                                    std::to_string(maps[0].height));
        }
    }
    const std::size_t bands = maps.size();
    const std::size_t n = maps[0].width * maps[0].height;
    std::vector<double> data(n * bands);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < bands; ++j) data[i * bands + j] = maps[j].pixels[i];
    }
    return SpectralCube(maps[0].width, maps[0].height, bands, std::move(data));
}

std::string serialize_labels(const LabelMap& labels, LabelFileFormat* used) {
    if (labels.count() <= 65536) {
        if (used) *used = LabelFileFormat::pgm16;
        std::string out = "P5\n" + std::to_string(labels.width()) + " " +
                          std::to_string(labels.height()) + "\n65535\n";
        out.reserve(out.size() + 2 * labels.pixel_count());
        for (auto l : labels.labels()) {
            out.push_back(static_cast<char>((l >> 8) & 0xff));
            out.push_back(static_cast<char>(l & 0xff));
        }
        return out;
    }
    if (used) *used = LabelFileFormat::hsc1;
    std::vector<double> values(labels.labels().begin(), labels.labels().end());
    return serialize_cube(SpectralCube(labels.width(), labels.height(), 1, std::move(values)));
}

LabelFileFormat write_labels(const LabelMap& labels, const std::filesystem::path& path) {
    LabelFileFormat used{};
    write_file(path, serialize_labels(labels, &used));
    return used;
}

LabelMap parse_labels(std::string_view bytes) {
    std::vector<std::uint64_t> raw;
    std::size_t w = 0;
    std::size_t h = 0;
    if (bytes.substr(0, 4) == "HSC1") {
        const auto cube = parse_cube(bytes);
        if (cube.bands() != 1) {
            throw FormatError(FormatError::Kind::bad_header, 12,
                              "label cube must have exactly one band");
        }
        w = cube.width();
        h = cube.height();
        raw.reserve(cube.pixel_count());
        for (std::size_t i = 0; i < cube.pixel_count(); ++i) {
            const double v = cube.data()[i];
            if (v < 0 || v != std::floor(v) || v > 4294967295.0) {
                throw FormatError(FormatError::Kind::bad_header, kCubeHeaderSize + 8 * i,
                                  "label value is not a non-negative integer");
            }
            raw.push_back(static_cast<std::uint64_t>(v));
        }
    } else {
        const auto g = parse_graymap(bytes);
        w = g.width;
        h = g.height;
        raw.assign(g.pixels.begin(), g.pixels.end());
    }
    return relabel_dense(w, h, raw);
}

LabelMap read_labels(const std::filesystem::path& path) {
    try {
        return parse_labels(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": ", e);
    }
}

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::flat: return "flat";
        case Algorithm::eta: return "eta";
        case Algorithm::mu: return "mu";
    }
    return "flat";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "flat") return Algorithm::flat;
    if (name == "eta") return Algorithm::eta;
    if (name == "mu") return Algorithm::mu;
    throw UsageError("unknown algorithm '" + std::string(name) + "'");
}

SegmentationReport make_report(Algorithm algorithm, std::string metric, double lambda,
                               double param, Connectivity conn, std::string seed_order,
                               const LabelMap& labels, double millis) {
    SegmentationReport r;
    r.algorithm = algorithm;
    r.metric = std::move(metric);
    r.lambda = lambda;
    r.param = param;
    r.connectivity = static_cast<int>(conn);
    r.seed_order = std::move(seed_order);
    r.regions = labels.count();
    r.region_sizes = labels.sizes();
    r.millis = millis;
    r.label_format = labels.count() <= 65536 ? LabelFileFormat::pgm16 : LabelFileFormat::hsc1;
    return r;
}

std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_report(const SegmentationReport& r) {
    std::ostringstream out;
    out << "algorithm: " << to_string(r.algorithm) << '\n'
        << "metric: " << r.metric << '\n'
        << "lambda: " << format_real(r.lambda) << '\n';
    if (r.algorithm != Algorithm::flat) {
        out << (r.algorithm == Algorithm::eta ? "eta: " : "mu: ") << format_real(r.param) << '\n';
    }
    out << "connectivity: " << r.connectivity << '\n'
        << "seed_order: " << r.seed_order << '\n'
        << "regions: " << r.regions << '\n'
        << "region_sizes:";
    for (auto s : r.region_sizes) out << ' ' << s;
    out << '\n'
        << "label_format: "
        << (r.label_format == LabelFileFormat::pgm16 ? "pgm16" : "hsc1 (too many labels for P5)")
        << '\n'
        << "millis: " << format_real(r.millis) << '\n';
    return out.str();
}

void write_report(const SegmentationReport& report, const std::filesystem::path& path) {
    write_file(path, format_report(report));
}

std::string format_csv_row(const SegmentationReport& r) {
    std::ostringstream out;
    out << to_string(r.algorithm) << ',' << r.metric << ',' << format_real(r.lambda) << ','
        << format_real(r.param) << ',' << r.connectivity << ',' << r.seed_order << ','
        << r.regions << ',' << format_real(r.millis);
    return out.str();
}

void append_csv_row(const SegmentationReport& report, const std::filesystem::path& path) {
    std::error_code ec;
    const bool needs_header =
        !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
    std::string text;
    if (needs_header) text = std::string(kSweepCsvHeader) + '\n';
    text += format_csv_row(report) + '\n';
    write_file(path, text, std::ios::binary | std::ios::app);
}

}  // namespace hsseg
