#include "support.hpp"

#include <dmp/stack.hpp>

#include <gtest/gtest.h>

using namespace dmp;
using dmp::testing::Rng;

TEST(Luma, Corners)
{
    EXPECT_EQ(luma(255, 255, 255), 255);
    EXPECT_EQ(luma(0, 0, 0), 0);
    EXPECT_EQ(luma(255, 0, 0), 76);  // (299*255 + 500) / 1000
    EXPECT_EQ(luma(0, 255, 0), 150); // (587*255 + 500) / 1000 = 150.185
    EXPECT_EQ(luma(0, 0, 255), 29);  // (114*255 + 500) / 1000 = 29.57
}

TEST(Luma, GrayIsPreserved)
{
    for (int v = 0; v < 256; ++v) {
        const auto b = static_cast<std::uint8_t>(v);
        EXPECT_EQ(luma(b, b, b), v);
    }
}

TEST(Luma, ImageConversionKeepsShape)
{
    Rng rng(1);
    const auto rgb = dmp::testing::random_rgb(rng, 7, 5);
    const auto g = to_luma(rgb);
    ASSERT_EQ(g.width(), 7);
    ASSERT_EQ(g.height(), 5);
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 7; ++x)
            EXPECT_EQ(g.at(x, y), luma(rgb.at(x, y, 0), rgb.at(x, y, 1), rgb.at(x, y, 2)));
}

TEST(Preset, PairListsVerbatim)
{
    using P = std::vector<SizePair>;
    EXPECT_EQ(preset(DmpPreset::Original, SeShape::Square).pairs, (P{{5, 3}, {7, 5}, {9, 7}}));
    EXPECT_EQ(preset(DmpPreset::Improved, SeShape::Disk).pairs,
              (P{{5, 3}, {7, 5}, {9, 7}, {15, 9}, {21, 15}, {27, 21}, {35, 27}}));
    EXPECT_EQ(preset(DmpPreset::Evo1, SeShape::Disk).pairs,
              (P{{29, 5}, {23, 5}, {19, 13}, {17, 13}, {17, 9}, {15, 11}, {13, 7}}));
    EXPECT_EQ(preset(DmpPreset::Evo2, SeShape::Disk).pairs,
              (P{{29, 5}, {23, 9}, {23, 5}, {19, 13}, {17, 13}, {15, 11}, {13, 7}}));
}

TEST(Preset, ShapeAndMaxSize)
{
    const auto o = preset(DmpPreset::Original, SeShape::Square);
    EXPECT_EQ(o.shape, SeShape::Square);
    EXPECT_EQ(o.pairs.size(), 3u);
    EXPECT_EQ(o.max_size(), 9);
    const auto i = preset("improved", SeShape::Disk);
    EXPECT_EQ(i.shape, SeShape::Disk);
    EXPECT_EQ(i.pairs.size(), 7u);
    EXPECT_EQ(i.max_size(), 35);
    for (auto p : {DmpPreset::Original, DmpPreset::Improved, DmpPreset::Evo1, DmpPreset::Evo2})
        EXPECT_NO_THROW(validate(preset(p, SeShape::Disk)));
}

TEST(Preset, UnknownNameListsValidOnes)
{
    try {
        (void)preset("fancy", SeShape::Disk);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Parameter);
        const std::string msg = e.what();
        for (auto n : kPresetNames)
            EXPECT_NE(msg.find(n), std::string::npos);
    }
}

TEST(ParsePairs, Basic)
{
    EXPECT_EQ(parse_pairs("9-3,5-3"), (std::vector<SizePair>{{9, 3}, {5, 3}}));
    EXPECT_EQ(parse_pairs("35-27"), (std::vector<SizePair>{{35, 27}}));
    for (auto bad : {"", "9", "9-", "-3", "9-3,", "a-b", "9-3,,5-3", "9 -3"})
        EXPECT_THROW((void)parse_pairs(bad), Error) << bad;
}

TEST(Stack, ChannelCountLaw)
{
    Rng rng(2);
    const auto rgb = dmp::testing::random_rgb(rng, 24, 18);
    EXPECT_EQ(stack_depth_extended(rgb, preset(DmpPreset::Original, SeShape::Square), ValueDomain::Raw8).channels, 7);
    EXPECT_EQ(stack_depth_extended(rgb, preset(DmpPreset::Improved, SeShape::Disk), ValueDomain::Raw8).channels, 15);
    for (std::size_t k = 1; k <= 4; ++k) {
        DifferentialSpec spec{SeShape::Disk, {}};
        for (std::size_t i = 0; i < k; ++i)
            spec.pairs.push_back({5 + 2 * static_cast<int>(i), 3});
        const auto s = stack_depth_extended(rgb, spec, ValueDomain::UnitFloat);
        EXPECT_EQ(s.channels, static_cast<int>(2 * k + 1));
        EXPECT_EQ(s.labels.size(), 2 * k + 1);
        EXPECT_EQ(s.unit.size(), s.sample_count());
    }
}

TEST(Stack, OrderAndLabelAlignment)
{
    Rng rng(3);
    const auto rgb = dmp::testing::random_rgb(rng, 30, 21);
    const auto spec = preset(DmpPreset::Evo2, SeShape::Disk);
    const auto s = stack_depth_extended(rgb, spec, ValueDomain::Raw8);
    const auto gray = to_luma(rgb);
    const auto ref = differential_profile(gray, spec);
    const int k = static_cast<int>(spec.pairs.size());

    EXPECT_EQ(s.labels[static_cast<std::size_t>(k)], "gray");
    EXPECT_EQ(s.channel(k), gray);
    for (int i = 0; i < k; ++i) {
        const auto tag = "[" + to_string(spec.pairs[static_cast<std::size_t>(i)]) + "]";
        EXPECT_EQ(s.labels[static_cast<std::size_t>(i)], "close" + tag);
        EXPECT_EQ(s.labels[static_cast<std::size_t>(k + 1 + i)], "open" + tag);
        EXPECT_EQ(s.channel(find_channel(s, "close" + tag)), ref.closing.bands[static_cast<std::size_t>(i)]);
        EXPECT_EQ(s.channel(find_channel(s, "open" + tag)), ref.opening.bands[static_cast<std::size_t>(i)]);
    }
    EXPECT_EQ(find_channel(s, "nope"), -1);
}

TEST(Stack, ConstantInput)
{
    const RgbImage rgb(16, 16, 200);
    const auto s = stack_depth_extended(rgb, preset(DmpPreset::Improved, SeShape::Disk), ValueDomain::Raw8);
    for (int c = 0; c < s.channels; ++c)
        EXPECT_EQ(s.channel(c), GrayImage(16, 16, c == 7 ? 200 : 0)) << c;
}

TEST(Stack, UnitFloatIsRawOver255)
{
    Rng rng(4);
    const auto rgb = dmp::testing::random_rgb(rng, 20, 20);
    const auto spec = preset(DmpPreset::Original, SeShape::Disk);
    const auto raw = stack_depth_extended(rgb, spec, ValueDomain::Raw8);
    const auto unit = stack_depth_extended(rgb, spec, ValueDomain::UnitFloat);
    ASSERT_EQ(unit.domain, ValueDomain::UnitFloat);
    ASSERT_TRUE(unit.raw.empty());
    ASSERT_EQ(unit.unit.size(), raw.raw.size());
    EXPECT_EQ(unit.labels, raw.labels);
    for (std::size_t i = 0; i < raw.raw.size(); ++i) {
        EXPECT_EQ(unit.unit[i], static_cast<float>(raw.raw[i]) / 255.0f);
        EXPECT_GE(unit.unit[i], 0.0f);
        EXPECT_LE(unit.unit[i], 1.0f);
        EXPECT_EQ(unit.unit[i] * 255.0f, static_cast<float>(raw.raw[i]));
    }
    EXPECT_THROW((void)unit.channel(0), Error);
}
