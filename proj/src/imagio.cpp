// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#include "stycona/imagio.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace stycona {

namespace {

// ---------------------------------------------------------------------------
// Raw frames: integer samples straight from the codec, before normalization.
// ---------------------------------------------------------------------------

struct RawFrame {
    int width = 0;
    int height = 0;
    int channels = 0;   // 1 or 3
    int bit_depth = 0;  // 8 or 16
    std::vector<uint16_t> samples;  // interleaved, row-major
};

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

RawFrame load_png_raw(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError("cannot open " + path);

    uint8_t sig[8];
    if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
        throw FormatError(path + ": not a PNG file");
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": libpng initialization failed");
    }
    std::vector<uint8_t> bytes;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError(path + ": corrupt PNG data");
    }

    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_byte color_type = png_get_color_type(png, info);
    png_byte bit_depth = png_get_bit_depth(png, info);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    // 16-bit color is outside the supported set; fold it down to 8.
    if (bit_depth == 16 && color_type != PNG_COLOR_TYPE_GRAY) png_set_strip_16(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    RawFrame out;
    out.width = static_cast<int>(png_get_image_width(png, info));
    out.height = static_cast<int>(png_get_image_height(png, info));
    out.channels = png_get_channels(png, info);
    out.bit_depth = png_get_bit_depth(png, info);
    if (out.channels != 1 && out.channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError(path + ": unsupported channel layout after expansion");
    }

    const size_t row_bytes = png_get_rowbytes(png, info);
    bytes.resize(row_bytes * out.height);
    rows.resize(out.height);
    for (int y = 0; y < out.height; ++y) rows[y] = bytes.data() + row_bytes * y;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    const size_t n = static_cast<size_t>(out.width) * out.height * out.channels;
    out.samples.resize(n);
    if (out.bit_depth == 16) {
        // PNG stores 16-bit samples big-endian.
        for (size_t i = 0; i < n; ++i) {
            out.samples[i] = static_cast<uint16_t>((bytes[2 * i] << 8) | bytes[2 * i + 1]);
        }
    } else {
        for (size_t i = 0; i < n; ++i) out.samples[i] = bytes[i];
    }
    return out;
}

void save_png_raw(const RawFrame& frame, const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot write " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": libpng initialization failed");
    }
    std::vector<uint8_t> bytes;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": PNG write failed");
    }

    png_init_io(png, fp.get());
    const int color_type = frame.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
    png_set_IHDR(png, info, frame.width, frame.height, frame.bit_depth, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const size_t n = static_cast<size_t>(frame.width) * frame.height * frame.channels;
    const size_t bytes_per_sample = frame.bit_depth == 16 ? 2 : 1;
    bytes.resize(n * bytes_per_sample);
    if (frame.bit_depth == 16) {
        for (size_t i = 0; i < n; ++i) {
            bytes[2 * i] = static_cast<uint8_t>(frame.samples[i] >> 8);
            bytes[2 * i + 1] = static_cast<uint8_t>(frame.samples[i] & 0xFF);
        }
    } else {
        for (size_t i = 0; i < n; ++i) bytes[i] = static_cast<uint8_t>(frame.samples[i]);
    }
    const size_t row_bytes = static_cast<size_t>(frame.width) * frame.channels * bytes_per_sample;
    rows.resize(frame.height);
    for (int y = 0; y < frame.height; ++y) rows[y] = bytes.data() + row_bytes * y;
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

// ---------------------------------------------------------------------------
// Binary PGM (P5)
// ---------------------------------------------------------------------------

int pgm_read_token(std::ifstream& in, const std::string& path) {
    // Skips whitespace and '#' comments, then reads one non-negative integer.
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c)) throw FormatError(path + ": malformed PGM header");
    long value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > 1 << 30) throw FormatError(path + ": PGM header value out of range");
        c = in.get();
    }
    if (c != EOF) in.unget();
    return static_cast<int>(value);
}

RawFrame load_pgm_raw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    char magic[2];
    if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '5') {
        throw FormatError(path + ": not a binary PGM (P5) file");
    }
    RawFrame out;
    out.width = pgm_read_token(in, path);
    out.height = pgm_read_token(in, path);
    const int maxval = pgm_read_token(in, path);
    if (out.width < 1 || out.height < 1 || maxval < 1 || maxval > 65535) {
        throw FormatError(path + ": PGM header values out of range");
    }
    in.get();  // single whitespace before the raster
    out.channels = 1;
    out.bit_depth = maxval > 255 ? 16 : 8;
    if (maxval != 255 && maxval != 65535) {
        throw FormatError(path + ": only maxval 255 or 65535 PGM is supported");
    }
    const size_t n = static_cast<size_t>(out.width) * out.height;
    out.samples.resize(n);
    if (out.bit_depth == 16) {
        std::vector<uint8_t> raw(n * 2);
        if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
            throw FormatError(path + ": truncated PGM raster");
        }
        for (size_t i = 0; i < n; ++i) {
            out.samples[i] = static_cast<uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
        }
    } else {
        std::vector<uint8_t> raw(n);
        if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
            throw FormatError(path + ": truncated PGM raster");
        }
        for (size_t i = 0; i < n; ++i) out.samples[i] = raw[i];
    }
    return out;
}

void save_pgm_raw(const RawFrame& frame, const std::string& path) {
    if (frame.channels != 1) throw InvalidInput("PGM output is single-channel only");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    const int maxval = frame.bit_depth == 16 ? 65535 : 255;
    out << "P5\n" << frame.width << " " << frame.height << "\n" << maxval << "\n";
    const size_t n = static_cast<size_t>(frame.width) * frame.height;
    std::vector<uint8_t> raw;
    if (frame.bit_depth == 16) {
        raw.resize(n * 2);
        for (size_t i = 0; i < n; ++i) {
            raw[2 * i] = static_cast<uint8_t>(frame.samples[i] >> 8);
            raw[2 * i + 1] = static_cast<uint8_t>(frame.samples[i] & 0xFF);
        }
    } else {
        raw.resize(n);
        for (size_t i = 0; i < n; ++i) raw[i] = static_cast<uint8_t>(frame.samples[i]);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError("write failure on " + path);
}

bool sniff_png(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    uint8_t sig[2] = {0, 0};
    in.read(reinterpret_cast<char*>(sig), 2);
    if (sig[0] == 0x89 && sig[1] == 'P') return true;
    if (sig[0] == 'P' && sig[1] == '5') return false;
    throw FormatError(path + ": unrecognized image format (expected PNG or binary PGM)");
}

RawFrame load_raw(const std::string& path) {
    return sniff_png(path) ? load_png_raw(path) : load_pgm_raw(path);
}

bool has_extension(const std::string& path, const char* ext) {
    std::string e = fs::path(path).extension().string();
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
    return e == ext;
}

}  // namespace

Image load_image(const std::string& path, std::optional<std::pair<int, int>> target_size) {
    const RawFrame raw = load_raw(path);
    Image img = Image::zeros(raw.height, raw.width, raw.channels);
    const float scale = 1.0f / static_cast<float>((1u << raw.bit_depth) - 1u);
    // Interleaved integer samples to planar unit-interval floats.
    for (int y = 0; y < raw.height; ++y) {
        for (int x = 0; x < raw.width; ++x) {
            for (int c = 0; c < raw.channels; ++c) {
                const size_t idx =
                    (static_cast<size_t>(y) * raw.width + x) * raw.channels + c;
                img.at(c, y, x) = static_cast<float>(raw.samples[idx]) * scale;
            }
        }
    }
    if (target_size) img = resize_bilinear(img, target_size->first, target_size->second);
    return img;
}

void save_image(const Image& img, const std::string& path, int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16) {
        throw InvalidInput("save_image: bit depth must be 8 or 16");
    }
    if (img.channels != 1 && img.channels != 3) {
        throw InvalidInput("save_image: only 1- or 3-channel images are supported");
    }
    if (bit_depth == 16 && img.channels != 1) {
        throw InvalidInput("save_image: 16-bit output is single-channel only");
    }
    RawFrame frame;
    frame.width = img.width;
    frame.height = img.height;
    frame.channels = img.channels;
    frame.bit_depth = bit_depth;
    const double maxval = static_cast<double>((1u << bit_depth) - 1u);
    frame.samples.resize(static_cast<size_t>(img.width) * img.height * img.channels);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            for (int c = 0; c < img.channels; ++c) {
                const double v = std::clamp(static_cast<double>(img.at(c, y, x)), 0.0, 1.0);
                const size_t idx = (static_cast<size_t>(y) * img.width + x) * img.channels + c;
                frame.samples[idx] = static_cast<uint16_t>(std::lround(v * maxval));
            }
        }
    }
    if (has_extension(path, ".png")) {
        save_png_raw(frame, path);
    } else if (has_extension(path, ".pgm")) {
        save_pgm_raw(frame, path);
    } else {
        throw InvalidInput("save_image: unsupported extension on " + path);
    }
}

LabelMask load_mask(const std::string& path, int num_classes) {
    const RawFrame raw = load_raw(path);
    if (raw.channels != 1 || raw.bit_depth != 8) {
        throw FormatError(path + ": masks must be single-channel 8-bit");
    }
    LabelMask mask = LabelMask::zeros(raw.height, raw.width);
    for (size_t i = 0; i < raw.samples.size(); ++i) {
        const uint16_t v = raw.samples[i];
        if (num_classes > 0 && v >= static_cast<uint16_t>(num_classes)) {
            throw FormatError(path + ": label " + std::to_string(v) + " outside [0, " +
                              std::to_string(num_classes) + ")");
        }
        mask.labels[i] = static_cast<uint8_t>(v);
    }
    return mask;
}

void save_mask(const LabelMask& mask, const std::string& path) {
    RawFrame frame;
    frame.width = mask.width;
    frame.height = mask.height;
    frame.channels = 1;
    frame.bit_depth = 8;
    frame.samples.assign(mask.labels.begin(), mask.labels.end());
    if (has_extension(path, ".pgm")) {
        save_pgm_raw(frame, path);
    } else {
        save_png_raw(frame, path);
    }
}

// ---------------------------------------------------------------------------
// STYC tensor container
// ---------------------------------------------------------------------------

namespace {

constexpr char kStycMagic[4] = {'S', 'T', 'Y', 'C'};
constexpr uint32_t kStycVersion = 1;

void put_u32le(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xFF));
    out.push_back(static_cast<uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<uint8_t>((v >> 24) & 0xFF));
}

uint32_t get_u32le(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

}  // namespace

void save_tensor(const TensorF32& tensor, const std::string& path) {
    if (tensor.dims.empty() || tensor.dims.size() > 255) {
        throw InvalidInput("save_tensor: ndim must be within [1, 255]");
    }
    for (uint32_t d : tensor.dims) {
        if (d == 0) throw InvalidInput("save_tensor: zero-sized dims are not allowed");
    }
    if (tensor.element_count() != tensor.data.size()) {
        throw InvalidInput("save_tensor: payload length does not match dims");
    }
    std::vector<uint8_t> header;
    header.insert(header.end(), kStycMagic, kStycMagic + 4);
    put_u32le(header, kStycVersion);
    header.push_back(0);  // dtype float32
    header.push_back(static_cast<uint8_t>(tensor.dims.size()));
    for (uint32_t d : tensor.dims) put_u32le(header, d);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(header.data()),
              static_cast<std::streamsize>(header.size()));
    std::vector<uint8_t> payload(tensor.data.size() * 4);
    for (size_t i = 0; i < tensor.data.size(); ++i) {
        uint32_t bits;
        std::memcpy(&bits, &tensor.data[i], 4);
        payload[4 * i] = static_cast<uint8_t>(bits & 0xFF);
        payload[4 * i + 1] = static_cast<uint8_t>((bits >> 8) & 0xFF);
        payload[4 * i + 2] = static_cast<uint8_t>((bits >> 16) & 0xFF);
        payload[4 * i + 3] = static_cast<uint8_t>((bits >> 24) & 0xFF);
    }
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
    if (!out) throw IoError("write failure on " + path);
}

TensorF32 load_tensor(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    if (bytes.size() < 10 || std::memcmp(bytes.data(), kStycMagic, 4) != 0) {
        throw FormatError(path + ": bad STYC magic");
    }
    if (get_u32le(bytes.data() + 4) != kStycVersion) {
        throw FormatError(path + ": unsupported STYC version");
    }
    if (bytes[8] != 0) throw FormatError(path + ": unsupported dtype");
    const int ndim = bytes[9];
    if (ndim < 1) throw FormatError(path + ": ndim must be at least 1");
    const size_t header_size = 10 + static_cast<size_t>(ndim) * 4;
    if (bytes.size() < header_size) throw FormatError(path + ": truncated STYC header");

    TensorF32 tensor;
    tensor.dims.resize(ndim);
    size_t count = 1;
    for (int d = 0; d < ndim; ++d) {
        tensor.dims[d] = get_u32le(bytes.data() + 10 + 4 * d);
        if (tensor.dims[d] == 0) throw FormatError(path + ": zero-sized dims rejected");
        count *= tensor.dims[d];
    }
    if (bytes.size() != header_size + count * 4) {
        throw FormatError(path + ": payload size mismatch");
    }
    tensor.data.resize(count);
    for (size_t i = 0; i < count; ++i) {
        const uint32_t bits = get_u32le(bytes.data() + header_size + 4 * i);
        std::memcpy(&tensor.data[i], &bits, 4);
    }
    return tensor;
}

// ---------------------------------------------------------------------------
// Resampling
// ---------------------------------------------------------------------------

Image resize_bilinear(const Image& img, int out_height, int out_width) {
    if (out_height < 1 || out_width < 1) {
        throw InvalidInput("resize_bilinear: target dimensions must be positive");
    }
    if (out_height == img.height && out_width == img.width) return img;

    Image out = Image::zeros(out_height, out_width, img.channels);
    const double sy = out_height > 1
                          ? static_cast<double>(img.height - 1) / (out_height - 1)
                          : 0.0;
    const double sx = out_width > 1 ? static_cast<double>(img.width - 1) / (out_width - 1) : 0.0;
    for (int y = 0; y < out_height; ++y) {
        const double fy = y * sy;
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double wy = fy - y0;
        for (int x = 0; x < out_width; ++x) {
            const double fx = x * sx;
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double wx = fx - x0;
            for (int c = 0; c < img.channels; ++c) {
                const double top = (1.0 - wx) * img.at(c, y0, x0) + wx * img.at(c, y0, x1);
                const double bot = (1.0 - wx) * img.at(c, y1, x0) + wx * img.at(c, y1, x1);
                out.at(c, y, x) = static_cast<float>((1.0 - wy) * top + wy * bot);
            }
        }
    }
    return out;
}

LabelMask resize_nearest(const LabelMask& mask, int out_height, int out_width) {
    if (out_height < 1 || out_width < 1) {
        throw InvalidInput("resize_nearest: target dimensions must be positive");
    }
    if (out_height == mask.height && out_width == mask.width) return mask;

    LabelMask out = LabelMask::zeros(out_height, out_width);
    const double sy = out_height > 1
                          ? static_cast<double>(mask.height - 1) / (out_height - 1)
                          : 0.0;
    const double sx = out_width > 1 ? static_cast<double>(mask.width - 1) / (out_width - 1) : 0.0;
    for (int y = 0; y < out_height; ++y) {
        const int yi = std::min(static_cast<int>(std::floor(y * sy + 0.5)), mask.height - 1);
        for (int x = 0; x < out_width; ++x) {
            const int xi = std::min(static_cast<int>(std::floor(x * sx + 0.5)), mask.width - 1);
            out.at(y, x) = mask.at(yi, xi);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dataset directories
// ---------------------------------------------------------------------------

namespace {

bool is_image_file(const fs::path& p) {
    std::string e = p.extension().string();
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
    return e == ".png" || e == ".pgm";
}

bool is_mask_stem(const std::string& stem) {
    return stem.size() > 5 && stem.ends_with("_mask");
}

}  // namespace

Dataset scan_directory(const std::string& dir) {
    if (!fs::is_directory(dir)) throw IoError(dir + " is not a directory");
    Dataset ds;
    ds.domain = fs::path(dir).filename().string();

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && is_image_file(entry.path())) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    for (const auto& p : files) {
        const std::string stem = p.stem().string();
        if (is_mask_stem(stem)) continue;
        DatasetEntry e;
        e.name = stem;
        e.image_path = p.string();
        for (const char* ext : {".png", ".pgm"}) {
            fs::path candidate = p.parent_path() / (stem + "_mask" + ext);
            if (fs::exists(candidate)) {
                e.mask_path = candidate.string();
                break;
            }
        }
        ds.entries.push_back(std::move(e));
    }
    return ds;
}

std::vector<Image> load_dataset_images(const Dataset& ds,
                                       std::optional<std::pair<int, int>> target_size) {
    std::vector<Image> images;
    images.reserve(ds.entries.size());
    for (const auto& e : ds.entries) {
        images.push_back(load_image(e.image_path, target_size));
        if (!images.back().same_shape(images.front())) {
            throw InvalidInput("dataset images have heterogeneous shapes; pass a target size");
        }
    }
    return images;
}

}  // namespace stycona
