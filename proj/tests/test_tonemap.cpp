#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "enhance/tonemap.hpp"
#include "oracles.hpp"

using namespace enhance;
using namespace enhance::tonemap;

namespace {

GrayImage fixture() { return GrayImage(4, 1, std::vector<std::uint8_t>{52, 52, 154, 255}); }

double p_max(const Histogram& h) {
    return static_cast<double>(*std::max_element(h.counts.begin(), h.counts.end())) / static_cast<double>(h.total());
}

std::set<int> occupied(const GrayImage& g) { return {g.pixels().begin(), g.pixels().end()}; }

bool near_set(const std::set<int>& a, const std::set<int>& b) {
    return std::all_of(a.begin(), a.end(), [&](int v) {
        return b.count(v) || b.count(v - 1) || b.count(v + 1);
    });
}

}  // namespace

TEST_CASE("histogram counts occurrences") {
    const auto h = histogram(GrayImage(2, 2, std::vector<std::uint8_t>{5, 5, 9, 200}));
    CHECK(h.counts[5] == 2);
    CHECK(h.counts[9] == 1);
    CHECK(h.counts[200] == 1);
    CHECK(h.total() == 4);

    CHECK(histogram(GrayImage(3, 3, 42)).counts[42] == 9);
    CHECK(histogram(GrayImage(1, 1, 0)).counts[0] == 1);
}

TEST_CASE("cdf is the prefix sum") {
    const auto c = cdf(histogram(GrayImage(2, 2, std::vector<std::uint8_t>{5, 5, 9, 200})));
    CHECK(c.cumulative[4] == 0);
    CHECK(c.cumulative[5] == 2);
    for (int v = 9; v < 200; ++v) CHECK(c.cumulative[v] == 3);
    for (int v = 200; v < 256; ++v) CHECK(c.cumulative[v] == 4);

    Histogram zeros;
    zeros.counts[0] = 17;
    const auto cz = cdf(zeros);
    CHECK(std::all_of(cz.cumulative.begin(), cz.cumulative.end(), [](auto v) { return v == 17; }));

    Histogram uniform;
    uniform.counts.fill(1);
    const auto cu = cdf(uniform);
    for (int v = 0; v < 256; ++v) CHECK(cu.cumulative[v] == static_cast<std::uint64_t>(v + 1));
}

TEST_CASE("equalization lut fixtures") {
    const Lut lut = equalization_lut(cdf(histogram(fixture())));
    CHECK(lut.map[52] == 128);
    CHECK(lut.map[154] == 191);
    CHECK(lut.map[255] == 255);
    CHECK(apply_lut(fixture(), lut) == GrayImage(4, 1, std::vector<std::uint8_t>{128, 128, 191, 255}));

    CHECK(equalization_lut(cdf(histogram(GrayImage(3, 3, 42)))).map[42] == 255);

    // Level 0 occupied: cmin == cmax, everything collapses to 0.
    const Lut flat0 = equalization_lut(cdf(histogram(GrayImage(2, 2, 0))));
    CHECK(std::all_of(flat0.map.begin(), flat0.map.end(), [](auto v) { return v == 0; }));

    Histogram uniform;
    uniform.counts.fill(4);
    const Lut u = equalization_lut(cdf(uniform));
    for (int v = 0; v < 256; ++v) CHECK(std::abs(int(u.map[v]) - v) <= 1);

    CHECK_THROWS_AS(equalization_lut(Cdf{}), Error);
}

TEST_CASE("equalization flattens and is nearly idempotent") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        // Skewed random images so the bound is exercised away from the uniform case.
        const int lo = static_cast<int>(rng() % 100);
        const int hi = lo + 1 + static_cast<int>(rng() % 100);
        const GrayImage img = oracle::random_gray(16, 12, rng, lo, hi);
        const Histogram h = histogram(img);
        const GrayImage eq = equalize(img);
        const Cdf ce = cdf(histogram(eq));
        const double n = static_cast<double>(img.size());
        for (int v = 0; v < 256; ++v) {
            CHECK(std::abs(static_cast<double>(ce.cumulative[v]) / n - v / 255.0) <= p_max(h) + 1.0 / 255.0);
        }
        const GrayImage eq2 = equalize(eq);
        CHECK(near_set(occupied(eq2), occupied(eq)));
        CHECK(near_set(occupied(eq), occupied(eq2)));
    }
}

TEST_CASE("stretch lut") {
    const Lut s = stretch_lut(50, 200, 0, 255);
    CHECK(s.map[125] == 128);
    CHECK(s.map[50] == 0);
    CHECK(s.map[200] == 255);
    CHECK(s.map[10] == 0);
    CHECK(s.map[240] == 255);
    CHECK(stretch_lut(0, 255, 0, 255) == Lut::identity());
    CHECK(std::is_sorted(s.map.begin(), s.map.end()));

    const Lut narrow = stretch_lut(10, 20, 100, 100);
    CHECK(narrow.map[15] == 100);

    try {
        stretch_lut(7, 7, 0, 255);
        FAIL("expected DegenerateRange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateRange);
    }
}

TEST_CASE("stretching hits both endpoints and preserves order") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const GrayImage img = oracle::random_gray(9, 7, rng, 30, 180);
        const GrayImage out = stretch(img);
        const auto [lo, hi] = std::minmax_element(out.pixels().begin(), out.pixels().end());
        CHECK(*lo == 0);
        CHECK(*hi == 255);
        for (std::size_t i = 0; i < img.size(); ++i) {
            for (std::size_t j = 0; j < img.size(); ++j) {
                if (img[i] < img[j]) CHECK(out[i] <= out[j]);
            }
        }
    }
}

TEST_CASE("log lut") {
    const Lut l = log_lut(255);
    CHECK(l.map[0] == 0);
    CHECK(l.map[255] == 255);
    // ln 16 / ln 256 == 1/2, so c * ln 16 is exactly 127.5 and rounds up.
    CHECK(l.map[15] == 128);
    CHECK(l.map[14] == 125);
    CHECK(std::is_sorted(l.map.begin(), l.map.end()));

    const Lut small = log_lut(3);
    CHECK(small.map[3] == 255);
    CHECK(small.map[200] == 255);
    CHECK_THROWS_AS(log_lut(0), Error);
}

TEST_CASE("matching lut fixtures") {
    const Cdf src = cdf(histogram(fixture()));
    const Cdf tgt = cdf(histogram(GrayImage(4, 1, std::vector<std::uint8_t>{10, 20, 20, 30})));
    const Lut m = matching_lut(src, tgt);
    CHECK(m.map[52] == 20);
    CHECK(m.map[154] == 20);
    CHECK(m.map[255] == 30);

    const Lut constant = matching_lut(src, cdf(histogram(GrayImage(5, 5, 7))));
    for (int v : {52, 154, 255}) CHECK(constant.map[v] == 7);

    CHECK_THROWS_AS(matching_lut(Cdf{}, tgt), Error);
    CHECK_THROWS_AS(matching_lut(src, Cdf{}), Error);
}

TEST_CASE("matching agrees with brute-force inversion and respects the fidelity bound") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const GrayImage src = oracle::random_gray(8, 8, rng, static_cast<int>(rng() % 50), 200);
        const GrayImage tgt = oracle::random_gray(6, 10, rng, 40, 40 + static_cast<int>(rng() % 150));
        const Cdf cs = cdf(histogram(src));
        const Cdf ct = cdf(histogram(tgt));
        std::vector<double> s(256), t(256);
        for (int v = 0; v < 256; ++v) {
            s[v] = static_cast<double>(cs.cumulative[v]) / static_cast<double>(cs.total());
            t[v] = static_cast<double>(ct.cumulative[v]) / static_cast<double>(ct.total());
        }
        const auto expected = oracle::brute_force_matching(s, t);
        const Lut m = matching_lut(cs, ct);
        for (int v : occupied(src)) CHECK(int(m.map[v]) == expected[v]);

        const Cdf cm = cdf(histogram(apply_lut(src, m)));
        const double bound = p_max(histogram(src)) + p_max(histogram(tgt));
        for (int v = 0; v < 256; ++v) {
            const double diff = static_cast<double>(cm.cumulative[v]) / static_cast<double>(src.size()) - t[v];
            CHECK(std::abs(diff) <= bound + 1e-12);
        }

        const Lut self = matching_lut(cs, cs);
        for (int v : occupied(src)) CHECK(int(self.map[v]) == v);
    }
}

TEST_CASE("apply_lut") {
    const GrayImage img = fixture();
    CHECK(apply_lut(img, Lut::identity()) == img);
    CHECK(apply_lut(img, Lut{}) == GrayImage(4, 1, 0));
}
