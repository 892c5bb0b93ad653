#include "doctest.h"

#include "fidres/gaussian_single.hpp"
#include "fidres/qubit.hpp"
#include "fidres/report.hpp"
#include "fidres/scan.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace fidres;

namespace {

ScanSpec werner_spec(int points, double f_min) {
    ScanSpec spec;
    spec.family = Family::PauliDiagonal;
    spec.axes = {{"c1", -1.0, 1.0, points}, {"c2", -1.0, 1.0, points}, {"c3", -1.0, 1.0, points}};
    spec.target = {-0.45, -0.45, -0.45};
    spec.band = {f_min, 1.0};
    return spec;
}

}  // namespace

TEST_CASE("scan: degenerate single-point grid") {
    ScanSpec spec;
    spec.family = Family::PauliDiagonal;
    spec.axes = {{"c1", -0.45, -0.45, 1}, {"c2", -0.45, -0.45, 1}, {"c3", -0.45, -0.45, 1}};
    spec.target = {-0.45, -0.45, -0.45};
    spec.band = {0.99, 1.0};
    const ScanResult r = scan(spec, 1);
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].fidelity == doctest::Approx(1.0));
    CHECK(r.records[0].flag(kFlagInBalloon));

    spec.band = {0.5, 0.99};  // f_max < 1 excludes the target itself
    const ScanResult r2 = scan(spec, 1);
    CHECK_FALSE(r2.records[0].flag(kFlagInBalloon));
}

TEST_CASE("scan: validation failures") {
    ScanSpec spec = werner_spec(5, 0.9);

    SUBCASE("unknown axis name") {
        spec.axes[0].name = "delta";
        CHECK_THROWS_AS(scan(spec, 1), std::invalid_argument);
    }
    SUBCASE("missing parameter coverage") {
        spec.axes.pop_back();
        CHECK_THROWS_AS(scan(spec, 1), std::invalid_argument);
    }
    SUBCASE("duplicate axis") {
        spec.axes[1].name = "c1";
        CHECK_THROWS_AS(scan(spec, 1), std::invalid_argument);
    }
    SUBCASE("unphysical target") {
        spec.target = {1.0, 1.0, 1.0};
        CHECK_THROWS_AS(scan(spec, 1), std::invalid_argument);
    }
    SUBCASE("bad band") {
        spec.band = {0.9, 0.5};
        CHECK_THROWS_AS(scan(spec, 1), std::invalid_argument);
    }
    SUBCASE("axis without points") {
        spec.axes[0].count = 0;
        CHECK_THROWS_AS(scan(spec, 1), std::invalid_argument);
    }
    SUBCASE("window on unsupported family") {
        spec.windows = {{WindowObservable::MeanPhotons, 0.1}};
        CHECK_THROWS_AS(scan(spec, 1), std::invalid_argument);
    }
}

TEST_CASE("scan: werner balloon crosses separability on a coarse grid") {
    const ScanResult r = scan(werner_spec(21, 0.95), 0);
    const RegionSummary s = summarize(r, {"separable"});
    CHECK(s.total_points == 21u * 21u * 21u);
    CHECK(s.physical_points < s.total_points);
    CHECK(s.balloon_points > 0);
    CHECK(s.class_counts.at("separable").crosses_boundary);
}

TEST_CASE("scan: determinism across thread counts, byte for byte") {
    const ScanSpec spec = werner_spec(15, 0.9);
    const ScanResult r1 = scan(spec, 1);
    const ScanResult r4 = scan(spec, 4);
    REQUIRE(r1.records.size() == r4.records.size());
    CHECK(records_csv(r1) == records_csv(r4));
}

TEST_CASE("scan_visit streams the same records as scan") {
    const ScanSpec spec = werner_spec(9, 0.9);
    const ScanResult r = scan(spec, 2);
    size_t i = 0;
    bool same = true;
    scan_visit(spec, 2, [&](const ScanRecord& rec) {
        same = same && rec.grid_index == r.records[i].grid_index &&
               rec.flags == r.records[i].flags &&
               (std::isnan(rec.fidelity) ? std::isnan(r.records[i].fidelity)
                                         : rec.fidelity == r.records[i].fidelity);
        ++i;
    });
    CHECK(same);
    CHECK(i == r.records.size());
}

TEST_CASE("scan: monotone refinement keeps the crossing") {
    const RegionSummary coarse = summarize(scan(werner_spec(11, 0.95), 0), {"separable"});
    const RegionSummary fine = summarize(scan(werner_spec(21, 0.95), 0), {"separable"});
    REQUIRE(coarse.class_counts.at("separable").crosses_boundary);
    CHECK(fine.class_counts.at("separable").crosses_boundary);
}

TEST_CASE("scan: in-balloon records re-validate against the family module") {
    const ScanSpec spec = werner_spec(21, 0.9);
    const ScanResult r = scan(spec, 0);
    std::vector<const ScanRecord*> balloon;
    for (const ScanRecord& rec : r.records)
        if (rec.flag(kFlagInBalloon)) balloon.push_back(&rec);
    REQUIRE(balloon.size() >= 100);
    std::mt19937_64 rng(3);
    std::shuffle(balloon.begin(), balloon.end(), rng);
    int checked = 0;
    for (size_t i = 0; i < balloon.size() && checked < 100; ++i) {
        const ScanRecord& rec = *balloon[i];
        ++checked;
        const PauliDiagonalCoeffs c{rec.params[0], rec.params[1], rec.params[2]};
        const double f = pd_fidelity({-0.45, -0.45, -0.45}, c);
        CHECK(f == rec.fidelity);
        CHECK(f >= spec.band.f_min);
        CHECK(f <= spec.band.f_max);
        CHECK(rec.resources[0] == negativity(c));
        CHECK(rec.resources[1] == pd_discord(c));
    }
    CHECK(checked == 100);
}

TEST_CASE("scan: window filter re-computation") {
    ScanSpec spec;
    spec.family = Family::Sts1;
    spec.axes = {{"s", 0.3, 2.0, 41}, {"mu", 0.3, 1.0, 41}};
    spec.target = {1.0, 0.9};
    spec.band = {0.9, 1.0};
    spec.windows = {{WindowObservable::MeanPhotons, 0.1}};
    const ScanResult r = scan(spec, 0);

    const auto target_stats = photon_stats(sts1_cm({1.0, 0.9}));
    int windowed = 0;
    for (const ScanRecord& rec : r.records) {
        if (!rec.flag(kFlagPhysical)) continue;
        const auto st = photon_stats(sts1_cm({rec.params[0], rec.params[1]}));
        const bool expect = std::abs(st.mean_n - target_stats.mean_n) <= 0.1 * target_stats.mean_n;
        CHECK(rec.flag(kFlagInWindow) == expect);
        windowed += rec.flag(kFlagInWindow);
    }
    CHECK(windowed > 0);
}

TEST_CASE("summarize: empty record list and single-class balloons") {
    ScanResult empty;
    empty.spec = werner_spec(3, 0.9);
    empty.resource_names = {"negativity", "discord"};
    empty.flag_names = {"physical", "in_balloon", "in_window", "separable"};
    empty.flag_bits = {kFlagPhysical, kFlagInBalloon, kFlagInWindow, kFlagFamilyBase};
    const RegionSummary s = summarize(empty, {"separable"});
    CHECK(s.total_points == 0);
    CHECK(s.balloon_points == 0);
    CHECK(s.resources.empty());
    CHECK_FALSE(s.class_counts.at("separable").crosses_boundary);

    // a tight balloon around a deeply entangled Werner state stays one-class
    ScanSpec tight = werner_spec(21, 0.999);
    tight.target = {-0.9, -0.9, -0.9};
    const RegionSummary s2 = summarize(scan(tight, 0), {"separable"});
    CHECK(s2.balloon_points > 0);
    CHECK_FALSE(s2.class_counts.at("separable").crosses_boundary);
}

TEST_CASE("refine_boundary: werner separability crossing to 1e-4") {
    const ScanResult r = scan(werner_spec(21, 0.99), 0);
    const auto pairs = refine_boundary(r, "separable");
    REQUIRE(!pairs.empty());
    REQUIRE(pairs.size() % 2 == 0);
    for (size_t i = 0; i + 1 < pairs.size(); i += 2) {
        const ScanRecord& lo = pairs[i];
        const ScanRecord& hi = pairs[i + 1];
        double dist = 0.0;
        for (int k = 0; k < 3; ++k) dist += std::pow(lo.params[k] - hi.params[k], 2);
        CHECK(std::sqrt(dist) <= 1e-4 + 1e-12);
        CHECK(lo.fidelity > 0.99);
        CHECK(hi.fidelity > 0.99);
        const double neg_lo = negativity({lo.params[0], lo.params[1], lo.params[2]});
        const double neg_hi = negativity({hi.params[0], hi.params[1], hi.params[2]});
        const bool lo_sep = neg_lo <= 1e-12;
        const bool hi_sep = neg_hi <= 1e-12;
        CHECK(lo_sep != hi_sep);
    }
}

TEST_CASE("refine_boundary: single-class grid yields an empty list") {
    ScanSpec tight = werner_spec(21, 0.999);
    tight.target = {-0.9, -0.9, -0.9};
    const ScanResult r = scan(tight, 0);
    CHECK(refine_boundary(r, "separable").empty());
}

TEST_CASE("grid helpers") {
    const ScanSpec spec = werner_spec(5, 0.9);
    CHECK(grid_size(spec) == 125);
    const auto p0 = grid_params(spec, 0);
    CHECK(p0[0] == doctest::Approx(-1.0));
    const auto last = grid_params(spec, 124);
    CHECK(last[2] == doctest::Approx(1.0));
    // row-major: last axis varies fastest
    const auto p1 = grid_params(spec, 1);
    CHECK(p1[0] == doctest::Approx(-1.0));
    CHECK(p1[2] == doctest::Approx(-0.5));
}
