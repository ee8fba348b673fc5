#include "support.hpp"

#include <dmp/profile.hpp>
#include <dmp/stack.hpp>

#include <gtest/gtest.h>

using namespace dmp;
using dmp::testing::Rng;

TEST(OpeningProfile, ConstantBands)
{
    const GrayImage img(12, 12, 90);
    const auto p = opening_profile(img, {SeShape::Square, {3, 5}});
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p.bands[0], img);
    EXPECT_EQ(p.bands[1], img);
    EXPECT_EQ(p.labels[0], "open[3]");
    EXPECT_EQ(p.kind, ProfileKind::Opening);
}

TEST(OpeningProfile, ImpulseRemoved)
{
    GrayImage img(9, 9, 0);
    img.at(4, 4) = 255;
    EXPECT_EQ(opening_profile(img, {SeShape::Square, {3}}).bands[0], GrayImage(9, 9, 0));
}

TEST(OpeningProfile, MatchesOracle)
{
    Rng rng(32);
    const auto img = dmp::testing::random_gray(rng, 32, 32);
    for (auto shape : {SeShape::Square, SeShape::Disk}) {
        const auto p = opening_profile(img, {shape, {3, 5, 7, 9}});
        ASSERT_EQ(p.size(), 4u);
        for (std::size_t i = 0; i < 4; ++i)
            EXPECT_EQ(p.bands[i], dmp::testing::oracle_open(img, shape, 3 + 2 * static_cast<int>(i)));
    }
}

TEST(ClosingProfile, ConstantAndDarkImpulse)
{
    EXPECT_EQ(closing_profile(GrayImage(6, 6, 30), {SeShape::Disk, {3, 7}}).bands[1], GrayImage(6, 6, 30));
    GrayImage img(9, 9, 255);
    img.at(4, 4) = 0;
    const auto p = closing_profile(img, {SeShape::Square, {3}});
    EXPECT_EQ(p.bands[0], GrayImage(9, 9, 255));
    EXPECT_EQ(p.labels[0], "close[3]");
}

TEST(ClosingProfile, MatchesOracle)
{
    Rng rng(33);
    const auto img = dmp::testing::random_gray(rng, 32, 32);
    const auto p = closing_profile(img, {SeShape::Disk, {3, 5, 7, 9}});
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_EQ(p.bands[i], dmp::testing::oracle_close(img, SeShape::Disk, 3 + 2 * static_cast<int>(i)));
}

TEST(ProfileSpec, Validation)
{
    const GrayImage img(4, 4);
    EXPECT_THROW((void)opening_profile(img, {SeShape::Disk, {}}), Error);
    EXPECT_THROW((void)opening_profile(img, {SeShape::Disk, {5, 3}}), Error);
    EXPECT_THROW((void)opening_profile(img, {SeShape::Disk, {3, 3}}), Error);
    EXPECT_THROW((void)closing_profile(img, {SeShape::Disk, {4}}), Error);
}

TEST(Dmp, ConstantImageGivesZeroBands)
{
    const GrayImage img(20, 20, 141);
    for (auto name : {DmpPreset::Original, DmpPreset::Improved, DmpPreset::Evo1, DmpPreset::Evo2}) {
        const auto r = differential_profile(img, preset(name, SeShape::Disk));
        for (const auto& b : r.opening.bands)
            EXPECT_EQ(b, GrayImage(20, 20, 0));
        for (const auto& b : r.closing.bands)
            EXPECT_EQ(b, GrayImage(20, 20, 0));
    }
}

TEST(Dmp, IdenticalOperandsGiveZeroBand)
{
    Rng rng(1);
    const auto img = dmp::testing::random_gray(rng, 15, 15);
    const auto o = open(img, make_se(SeShape::Disk, 5));
    EXPECT_EQ(abs_difference(o, o), GrayImage(15, 15, 0));
}

TEST(Dmp, Evo2DiskMatchesPerPairOracle)
{
    Rng rng(2);
    const auto img = dmp::testing::random_gray(rng, 32, 32);
    const auto spec = preset(DmpPreset::Evo2, SeShape::Disk);
    const auto r = differential_profile(img, spec);
    ASSERT_EQ(r.opening.size(), spec.pairs.size());
    ASSERT_EQ(r.closing.size(), spec.pairs.size());
    for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
        const auto [outer, inner] = spec.pairs[i];
        const auto ob = dmp::testing::oracle_open(img, SeShape::Disk, outer);
        const auto oa = dmp::testing::oracle_open(img, SeShape::Disk, inner);
        const auto cb = dmp::testing::oracle_close(img, SeShape::Disk, outer);
        const auto ca = dmp::testing::oracle_close(img, SeShape::Disk, inner);
        GrayImage exp_open(32, 32), exp_close(32, 32);
        for (int y = 0; y < 32; ++y) {
            for (int x = 0; x < 32; ++x) {
                exp_open.at(x, y) = static_cast<std::uint8_t>(std::abs(ob.at(x, y) - oa.at(x, y)));
                exp_close.at(x, y) = static_cast<std::uint8_t>(std::abs(cb.at(x, y) - ca.at(x, y)));
            }
        }
        EXPECT_EQ(r.opening.bands[i], exp_open) << i;
        EXPECT_EQ(r.closing.bands[i], exp_close) << i;
        EXPECT_EQ(r.opening.labels[i], "open[" + to_string(spec.pairs[i]) + "]");
        EXPECT_EQ(r.closing.labels[i], "close[" + to_string(spec.pairs[i]) + "]");
    }
}

TEST(Dmp, NestedPairsHaveOrderedOperands)
{
    Rng rng(4);
    const auto img = dmp::testing::random_gray(rng, 40, 30);
    const auto spec = preset(DmpPreset::Evo1, SeShape::Square);
    const auto r = differential_profile(img, spec);
    for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
        const auto [outer, inner] = spec.pairs[i];
        const auto oi = open(img, make_se(SeShape::Square, inner));
        const auto oo = open(img, make_se(SeShape::Square, outer));
        ASSERT_TRUE(dmp::testing::pixelwise_le(oo, oi));
        // Nested openings are ordered, so |.| is the plain difference.
        GrayImage diff(40, 30);
        for (std::size_t k = 0; k < diff.data().size(); ++k)
            diff.data()[k] = static_cast<std::uint8_t>(oi.data()[k] - oo.data()[k]);
        EXPECT_EQ(r.opening.bands[i], diff);
    }
}

TEST(Dmp, ReuseEqualsRecomputation)
{
    Rng rng(6);
    const auto img = dmp::testing::random_gray(rng, 33, 27);
    const auto spec = preset(DmpPreset::Evo1, SeShape::Disk);
    const auto cached = differential_profile(img, spec);
    for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
        const auto single = differential_profile(img, DifferentialSpec{SeShape::Disk, {spec.pairs[i]}});
        EXPECT_EQ(cached.opening.bands[i], single.opening.bands[0]);
        EXPECT_EQ(cached.closing.bands[i], single.closing.bands[0]);
    }
}

TEST(Dmp, RejectsBadPairs)
{
    const GrayImage img(4, 4);
    EXPECT_THROW((void)differential_profile(img, {SeShape::Disk, {{3, 5}}}), Error);
    EXPECT_THROW((void)differential_profile(img, {SeShape::Disk, {{5, 5}}}), Error);
    EXPECT_THROW((void)differential_profile(img, {SeShape::Disk, {{6, 3}}}), Error);
    EXPECT_THROW((void)differential_profile(img, {SeShape::Disk, {}}), Error);
    try {
        (void)differential_profile(img, {SeShape::Disk, {{3, 5}}});
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Parameter);
        EXPECT_NE(std::string(e.what()).find("3-5"), std::string::npos);
    }
}

TEST(Dmp, ThreadCountIndependent)
{
    Rng rng(7);
    const auto img = dmp::testing::random_gray(rng, 70, 50);
    const auto spec = preset(DmpPreset::Original, SeShape::Disk);
    const auto a = differential_profile(img, spec, Parallelism{1});
    const auto b = differential_profile(img, spec, Parallelism{4});
    EXPECT_EQ(a.opening.bands, b.opening.bands);
    EXPECT_EQ(a.closing.bands, b.closing.bands);
}
