#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "linkmos/curves.hpp"

using namespace linkmos;

namespace {

PhyCurveSet small_set() {
    PhyCurveSet c;
    c.label = "unit";
    c.sinr_db = {0.0, 5.0, 10.0};
    c.bler = {0.9, 0.5, 0.1};
    c.throughput_bps = {1e6, 5e6, 9e6};
    c.overhead = 1.0;
    return c;
}

}  // namespace

TEST_CASE("validate_curves accepts a well-formed set") {
    CHECK_NOTHROW(validate_curves(small_set()));
}

TEST_CASE("validate_curves rejects each invariant violation") {
    SUBCASE("too few samples") {
        PhyCurveSet c = small_set();
        c.sinr_db = {1.0};
        c.bler = {0.5};
        c.throughput_bps = {1e6};
        CHECK_THROWS_AS(validate_curves(c), std::invalid_argument);
    }
    SUBCASE("non-ascending grid") {
        PhyCurveSet c = small_set();
        c.sinr_db = {0.0, 5.0, 5.0};
        CHECK_THROWS_WITH_AS(validate_curves(c),
                             doctest::Contains("grid not ascending"),
                             std::invalid_argument);
    }
    SUBCASE("mismatched column lengths") {
        PhyCurveSet c = small_set();
        c.bler.pop_back();
        CHECK_THROWS_WITH_AS(validate_curves(c),
                             doctest::Contains("mismatched column lengths"),
                             std::invalid_argument);
    }
    SUBCASE("bler outside [0,1]") {
        PhyCurveSet c = small_set();
        c.bler[0] = 1.5;
        CHECK_THROWS_WITH_AS(validate_curves(c),
                             doctest::Contains("probability out of range"),
                             std::invalid_argument);
    }
    SUBCASE("bler increasing in sinr") {
        PhyCurveSet c = small_set();
        c.bler = {0.1, 0.5, 0.9};
        CHECK_THROWS_AS(validate_curves(c), std::invalid_argument);
    }
    SUBCASE("throughput decreasing in sinr") {
        PhyCurveSet c = small_set();
        c.throughput_bps = {9e6, 5e6, 1e6};
        CHECK_THROWS_AS(validate_curves(c), std::invalid_argument);
    }
    SUBCASE("negative throughput") {
        PhyCurveSet c = small_set();
        c.throughput_bps[0] = -1.0;
        CHECK_THROWS_AS(validate_curves(c), std::invalid_argument);
    }
    SUBCASE("overhead outside (0,1]") {
        PhyCurveSet c = small_set();
        c.overhead = 0.0;
        CHECK_THROWS_AS(validate_curves(c), std::invalid_argument);
        c.overhead = 1.01;
        CHECK_THROWS_AS(validate_curves(c), std::invalid_argument);
    }
}

TEST_CASE("interpolation is linear inside the grid and clamped outside") {
    PhyCurveSet c = small_set();
    CHECK(bler_at(c, 2.5) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(bler_at(c, 7.5) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(goodput_at(c, 2.5) == doctest::Approx(3e6).epsilon(1e-12));
    // exact grid points
    CHECK(bler_at(c, 5.0) == 0.5);
    CHECK(goodput_at(c, 10.0) == 9e6);
    // clamping
    CHECK(bler_at(c, -100.0) == 0.9);
    CHECK(bler_at(c, +100.0) == 0.1);
    CHECK(goodput_at(c, -100.0) == 1e6);
    CHECK(goodput_at(c, +100.0) == 9e6);
}

TEST_CASE("goodput applies the overhead factor") {
    PhyCurveSet c = small_set();
    c.overhead = 0.95;
    CHECK(goodput_at(c, 10.0) == doctest::Approx(9e6 * 0.95).epsilon(1e-15));
}

TEST_CASE("synthetic curve matches the logistic closed form") {
    PhyCurveSet c = synth_curve(5.0, 1.0, 2e7);
    // 61 samples over mid +/- 15 dB at 0.5 dB
    CHECK(c.sinr_db.size() == 61);
    CHECK(c.sinr_db.front() == doctest::Approx(-10.0));
    CHECK(c.sinr_db.back() == doctest::Approx(20.0));
    // frozen closed-form values (logistic at s = 0, 5, 15; overhead 0.95)
    CHECK(bler_at(c, 0.0) == doctest::Approx(0.99330714907571527).epsilon(1e-12));
    CHECK(bler_at(c, 5.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bler_at(c, 15.0) == doctest::Approx(4.5397868702434395e-05).epsilon(1e-12));
    CHECK(goodput_at(c, 0.0) == doctest::Approx(127164.16756140992).epsilon(1e-12));
    CHECK(goodput_at(c, 5.0) == doctest::Approx(9.5e6).epsilon(1e-12));
    CHECK(goodput_at(c, 15.0) == doctest::Approx(18999137.440494653).epsilon(1e-12));
    // midway between the 4.5 and 5.0 samples the table is linear, not logistic
    CHECK(bler_at(c, 4.75) == doctest::Approx(0.56122966560092724).epsilon(1e-12));
    CHECK(goodput_at(c, 4.75) == doctest::Approx(8336636.3535823813).epsilon(1e-12));
    CHECK_NOTHROW(validate_curves(c));
}

TEST_CASE("csv round-trip is bit-exact") {
    PhyCurveSet c = synth_curve(5.0, 1.0, 2e7, "rt", 0.9);
    PhyCurveSet back = load_curves(emit_curves_csv(c), "rt", 0.9);
    REQUIRE(back.sinr_db.size() == c.sinr_db.size());
    for (std::size_t i = 0; i < c.sinr_db.size(); ++i) {
        CHECK(back.sinr_db[i] == c.sinr_db[i]);
        CHECK(back.bler[i] == c.bler[i]);
        CHECK(back.throughput_bps[i] == c.throughput_bps[i]);
    }
}

TEST_CASE("load_curves rejects malformed input") {
    CHECK_THROWS(load_curves(""));
    CHECK_THROWS(load_curves("wrong,header,here\n1,0.5,1e6\n"));
    CHECK_THROWS(load_curves("sinr_db,bler,throughput_bps\n1,0.5\n"));
    CHECK_THROWS(load_curves("sinr_db,bler,throughput_bps\n1,abc,1e6\n2,0.1,2e6\n"));
    // validation runs on the parsed table too
    CHECK_THROWS(load_curves("sinr_db,bler,throughput_bps\n2,0.5,1e6\n1,0.4,2e6\n"));
}

TEST_CASE("retx_bler follows the combining model") {
    PhyCurveSet c = small_set();
    SUBCASE("geometric: bler^i") {
        CHECK(retx_bler(c, 5.0, 1) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(retx_bler(c, 5.0, 2) == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(retx_bler(c, 5.0, 3) == doctest::Approx(0.125).epsilon(1e-15));
    }
    SUBCASE("gain_db: re-read the table at boosted sinr") {
        c.combining.mode = CombiningMode::gain_db;
        c.combining.gain_db_per_retx = 2.5;
        CHECK(retx_bler(c, 5.0, 1) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(retx_bler(c, 5.0, 2) == doctest::Approx(bler_at(c, 7.5)).epsilon(1e-15));
        CHECK(retx_bler(c, 5.0, 3) == doctest::Approx(0.1).epsilon(1e-15));
    }
    SUBCASE("first transmission equals bler_at in both modes") {
        PhyCurveSet g = small_set();
        g.combining.mode = CombiningMode::gain_db;
        g.combining.gain_db_per_retx = 3.0;
        CHECK(retx_bler(c, 3.3, 1) == bler_at(c, 3.3));
        CHECK(retx_bler(g, 3.3, 1) == bler_at(g, 3.3));
    }
    SUBCASE("i must be >= 1") {
        CHECK_THROWS_AS(retx_bler(c, 5.0, 0), std::invalid_argument);
    }
}
