#pragma once

// DMPT container: a 20-byte little-endian header, a channel-major payload,
// then a 32-bit length-prefixed JSON block carrying the channel labels.
//
//   offset  size  field
//        0     4  magic "DMPT"
//        4     2  version (1)
//        6     2  dtype (0 = u8, 1 = f32)
//        8     4  channels
//       12     4  height
//       16     4  width

#include <dmp/stack.hpp>

#include <nlohmann/json.hpp>

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

namespace dmp {

inline constexpr char kTensorMagic[4] = {'D', 'M', 'P', 'T'};
inline constexpr std::uint16_t kTensorVersion = 1;
inline constexpr std::size_t kTensorHeaderSize = 20;

enum class TensorDtype : std::uint16_t { U8 = 0, F32 = 1 };

struct TensorHeader {
    std::uint16_t version = kTensorVersion;
    TensorDtype dtype = TensorDtype::U8;
    std::uint32_t channels = 0;
    std::uint32_t height = 0;
    std::uint32_t width = 0;

    [[nodiscard]] std::size_t element_size() const noexcept { return dtype == TensorDtype::U8 ? 1 : 4; }
    [[nodiscard]] std::uint64_t payload_bytes() const noexcept
    {
        return std::uint64_t{channels} * height * width * element_size();
    }
};

namespace detail {

class ByteWriter {
public:
    void put_u16(std::uint16_t v) { put_le(v, 2); }
    void put_u32(std::uint32_t v) { put_le(v, 4); }
    void put_bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
    std::vector<std::uint8_t> take() { return std::move(out_); }
    void reserve(std::size_t n) { out_.reserve(n); }

private:
    void put_le(std::uint32_t v, int n)
    {
        for (int i = 0; i < n; ++i)
            out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    std::vector<std::uint8_t> out_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

    std::span<const std::uint8_t> take(std::size_t n, const char* what)
    {
        if (in_.size() - pos_ < n)
            throw Error(ErrorKind::Truncated, std::string("tensor ends inside ") + what);
        auto s = in_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    std::uint16_t u16(const char* what) { return static_cast<std::uint16_t>(le(take(2, what))); }
    std::uint32_t u32(const char* what) { return le(take(4, what)); }
    [[nodiscard]] std::size_t remaining() const noexcept { return in_.size() - pos_; }

    static std::uint32_t le(std::span<const std::uint8_t> b)
    {
        std::uint32_t v = 0;
        for (std::size_t i = 0; i < b.size(); ++i)
            v |= std::uint32_t{b[i]} << (8 * i);
        return v;
    }

private:
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline std::vector<std::uint8_t> encode_tensor(const FeatureStack& stack)
{
    if (stack.labels.size() != static_cast<std::size_t>(stack.channels))
        throw_parameter("stack has " + std::to_string(stack.labels.size()) + " labels for " +
                        std::to_string(stack.channels) + " channels");
    const bool raw = stack.domain == ValueDomain::Raw8;
    if ((raw ? stack.raw.size() : stack.unit.size()) != stack.sample_count())
        throw_parameter("stack sample buffer does not match its dimensions");

    TensorHeader header;
    header.dtype = raw ? TensorDtype::U8 : TensorDtype::F32;
    header.channels = static_cast<std::uint32_t>(stack.channels);
    header.height = static_cast<std::uint32_t>(stack.height);
    header.width = static_cast<std::uint32_t>(stack.width);

    const std::string meta = nlohmann::json{{"labels", stack.labels}}.dump();

    detail::ByteWriter w;
    w.reserve(kTensorHeaderSize + header.payload_bytes() + 4 + meta.size());
    w.put_bytes({reinterpret_cast<const std::uint8_t*>(kTensorMagic), 4});
    w.put_u16(header.version);
    w.put_u16(static_cast<std::uint16_t>(header.dtype));
    w.put_u32(header.channels);
    w.put_u32(header.height);
    w.put_u32(header.width);
    if (raw) {
        w.put_bytes(stack.raw);
    } else {
        for (float f : stack.unit)
            w.put_u32(std::bit_cast<std::uint32_t>(f));
    }
    w.put_u32(static_cast<std::uint32_t>(meta.size()));
    w.put_bytes({reinterpret_cast<const std::uint8_t*>(meta.data()), meta.size()});
    return w.take();
}

inline TensorHeader decode_tensor_header(std::span<const std::uint8_t> bytes)
{
    detail::ByteReader r(bytes);
    auto magic = r.take(4, "magic");
    if (std::memcmp(magic.data(), kTensorMagic, 4) != 0)
        throw Error(ErrorKind::BadMagic, "expected \"DMPT\"");
    TensorHeader h;
    h.version = r.u16("header");
    if (h.version != kTensorVersion)
        throw Error(ErrorKind::VersionMismatch,
                    "tensor version " + std::to_string(h.version) + ", reader supports " + std::to_string(kTensorVersion));
    const auto dtype = r.u16("header");
    if (dtype > 1)
        throw Error(ErrorKind::Data, "unknown tensor dtype code " + std::to_string(dtype));
    h.dtype = static_cast<TensorDtype>(dtype);
    h.channels = r.u32("header");
    h.height = r.u32("header");
    h.width = r.u32("header");
    return h;
}

inline FeatureStack decode_tensor(std::span<const std::uint8_t> bytes)
{
    const TensorHeader h = decode_tensor_header(bytes);
    detail::ByteReader r(bytes);
    r.take(kTensorHeaderSize, "header");
    if (h.payload_bytes() > r.remaining())
        throw Error(ErrorKind::Truncated, "payload shorter than " + std::to_string(h.payload_bytes()) + " bytes");

    FeatureStack stack;
    stack.channels = static_cast<int>(h.channels);
    stack.height = static_cast<int>(h.height);
    stack.width = static_cast<int>(h.width);
    auto payload = r.take(static_cast<std::size_t>(h.payload_bytes()), "payload");
    if (h.dtype == TensorDtype::U8) {
        stack.domain = ValueDomain::Raw8;
        stack.raw.assign(payload.begin(), payload.end());
    } else {
        stack.domain = ValueDomain::UnitFloat;
        stack.unit.resize(stack.sample_count());
        for (std::size_t i = 0; i < stack.unit.size(); ++i)
            stack.unit[i] = std::bit_cast<float>(detail::ByteReader::le(payload.subspan(4 * i, 4)));
    }

    const auto meta_len = r.u32("label block length");
    auto meta = r.take(meta_len, "label block");
    try {
        auto j = nlohmann::json::parse(meta.begin(), meta.end());
        stack.labels = j.at("labels").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Data, std::string("malformed label block: ") + e.what());
    }
    if (stack.labels.size() != h.channels)
        throw Error(ErrorKind::Data, "label block lists " + std::to_string(stack.labels.size()) + " labels for " +
                                         std::to_string(h.channels) + " channels");
    return stack;
}

inline void write_tensor(const FeatureStack& stack, const std::filesystem::path& path)
{
    const auto bytes = encode_tensor(stack);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw Error(ErrorKind::Io, "write failed: " + path.string());
}

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path)
{
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        throw Error(ErrorKind::FileNotFound, path.string());
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline FeatureStack read_tensor(const std::filesystem::path& path)
{
    return decode_tensor(read_file_bytes(path));
}

} // namespace dmp
