#pragma once

#include <dmp/raster.hpp>
#include <dmp/stack.hpp>

#include <png.h>

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace dmp {

namespace detail {

struct PngReader {
    png_image image{};

    explicit PngReader(const std::filesystem::path& path)
    {
        std::error_code ec;
        if (!std::filesystem::is_regular_file(path, ec))
            throw Error(ErrorKind::FileNotFound, path.string());
        image.version = PNG_IMAGE_VERSION;
        if (!png_image_begin_read_from_file(&image, path.c_str()))
            throw Error(ErrorKind::MalformedPng, path.string() + ": " + image.message);
        if (image.format & PNG_FORMAT_FLAG_LINEAR) {
            png_image_free(&image);
            throw Error(ErrorKind::UnsupportedDepth, path.string() + ": only 8-bit PNGs are supported");
        }
    }
    PngReader(const PngReader&) = delete;
    PngReader& operator=(const PngReader&) = delete;
    ~PngReader() { png_image_free(&image); }

    [[nodiscard]] bool is_color() const noexcept
    {
        return (image.format & (PNG_FORMAT_FLAG_COLOR | PNG_FORMAT_FLAG_COLORMAP)) != 0;
    }

    std::vector<std::uint8_t> finish(png_uint_32 format, const std::string& name)
    {
        image.format = format;
        std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(image));
        if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr))
            throw Error(ErrorKind::MalformedPng, name + ": " + image.message);
        return buf;
    }
};

template <typename R>
R read_as(const std::filesystem::path& path, png_uint_32 format)
{
    PngReader reader(path);
    const int w = static_cast<int>(reader.image.width);
    const int h = static_cast<int>(reader.image.height);
    return R(w, h, reader.finish(format, path.string()));
}

template <typename R>
void write_as(const R& img, const std::filesystem::path& path, png_uint_32 format)
{
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = format;
    if (!png_image_write_to_file(&image, path.c_str(), 0, img.data().data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw Error(ErrorKind::Io, path.string() + ": " + msg);
    }
}

} // namespace detail

/// Reads any 8-bit PNG as RGB: gray is replicated, palettes expanded, alpha
/// composited away.
inline RgbImage read_png_rgb(const std::filesystem::path& path)
{
    return detail::read_as<RgbImage>(path, PNG_FORMAT_RGB);
}

/// Label masks must be stored single-channel; each byte is a class index.
inline LabelMask read_png_labels(const std::filesystem::path& path)
{
    detail::PngReader reader(path);
    if (reader.is_color())
        throw Error(ErrorKind::Data, path.string() + ": label masks must be single-channel PNGs");
    const int w = static_cast<int>(reader.image.width);
    const int h = static_cast<int>(reader.image.height);
    return LabelMask(w, h, reader.finish(PNG_FORMAT_GRAY, path.string()));
}

using AnyImage = std::variant<RgbImage, GrayImage>;

/// RGB for color or palette files, GrayImage for single-channel ones.
inline AnyImage read_png(const std::filesystem::path& path)
{
    bool color = false;
    {
        detail::PngReader probe(path);
        color = probe.is_color();
    }
    if (color)
        return read_png_rgb(path);
    return detail::read_as<GrayImage>(path, PNG_FORMAT_GRAY);
}

inline void write_png(const RgbImage& img, const std::filesystem::path& path)
{
    detail::write_as(img, path, PNG_FORMAT_RGB);
}

inline void write_png(const GrayImage& img, const std::filesystem::path& path)
{
    detail::write_as(img, path, PNG_FORMAT_GRAY);
}

inline void write_png(const LabelMask& img, const std::filesystem::path& path)
{
    detail::write_as(img, path, PNG_FORMAT_GRAY);
}

/// Color sources are reduced with the same BT.601 luma as the feature stack.
inline GrayImage read_png_gray(const std::filesystem::path& path)
{
    auto any = read_png(path);
    if (auto* rgb = std::get_if<RgbImage>(&any))
        return to_luma(*rgb);
    return std::get<GrayImage>(std::move(any));
}

} // namespace dmp
