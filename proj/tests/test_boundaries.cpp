#include <catch2/catch_amalgamated.hpp>

#include "gridlink/boundaries.hpp"
#include "gridlink/cable_library.hpp"
#include "gridlink/error.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace gridlink;
using Catch::Approx;

namespace {

const CableSpec kRef{400.0, 0.0997, 0.00403, 470.0, 1.02};

SystemParams at_pu(double demand_pu, double length_km = 0.0, double pf = 0.9,
                   const CableSpec& cable = kRef, double v = 10.0, double eta = 0.9934) {
    SystemParams p;
    p.v_ll_rms_kv = v;
    p.pf = pf;
    p.eta = eta;
    p.t_amb_c = 20.0;
    p.n_ori = 9;
    p.link_length_km = length_km;
    p.s_actual_mva = demand_pu * link_capacity(cable, v);
    return p;
}

double total(SystemParams p, const CableSpec& cable, int index, double y, double length) {
    p.link_length_km = length;
    return loss_breakdown(p, cable, configuration(p.n_ori, index), y).total_loss_w;
}

std::optional<double> bisect_crossover(const SystemParams& p, const CableSpec& cable, int a,
                                       int b, double y) {
    return oracle::bisect(
        [&](double length) { return total(p, cable, a, y, length) - total(p, cable, b, y, length); },
        0.0, 1e4);
}

}  // namespace

TEST_CASE("crossover B vanishes as converters become lossless", "[boundaries]") {
    auto p = at_pu(3.0);
    p.eta = 1.0 - 1e-12;
    const auto l = crossover_b(p, kRef);
    REQUIRE(l);
    CHECK(*l < 1e-6);
}

TEST_CASE("nine-conductor closed forms agree with the general count-based forms", "[boundaries]") {
    const auto p = at_pu(2.5);
    const double pf = p.pf;
    const double v2s = p.v_ll_rms_kv * p.v_ll_rms_kv / p.s_actual_mva;
    const int n = p.n_ori;
    const double r0 = loss_c0(p, kRef, configuration(9, 0)).ac_state->resistance_ohm_per_km;
    const double r1 = loss_c1(p, kRef, configuration(9, 1)).dc_state->resistance_ohm_per_km;
    const double lb = 2 * (1 - p.eta) * pf / (3 * (r0 / (n + 3) - r1 * pf * pf / (2.0 * (n - 1)))) * v2s;
    CHECK(*crossover_b(p, kRef) == Approx(lb).epsilon(1e-13));

    const double y = 0.8;
    const auto c2 = loss_cn(p, kRef, configuration(9, 2), y);
    const double h = (1 - y) * (1 - y) * c2.ac_state->resistance_ohm_per_km / (n / 3.0) +
                     y * y * c2.dc_state->resistance_ohm_per_km / (2.0 * (2.0 * n / 3.0));
    const double la = 2 * (1 - p.eta) * y * pf * v2s / (3 * (r0 / (n + 3) - pf * pf * h));
    const double lc = 2 * (1 - p.eta) * (1 - y) * v2s / (3 * pf * (h - r1 / (2.0 * (n - 1))));
    CHECK(*crossover_a(p, kRef, y) == Approx(la).epsilon(1e-13));
    CHECK(*crossover_c(p, kRef, y) == Approx(lc).epsilon(1e-13));
}

TEST_CASE("closed-form crossovers agree with bisection on the loss difference", "[boundaries][oracle]") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto& lib = CableLibrary::reference();
    for (int n = 0; n < 40; ++n) {
        const auto& cable = lib.rows()[static_cast<std::size_t>(u(rng) * lib.rows().size())];
        const auto p = at_pu(0.2 + 3.6 * u(rng), 0.0, 0.8 + 0.2 * u(rng), cable, 3.0 + 32.0 * u(rng),
                             0.985 + 0.014 * u(rng));
        const auto limits = share_limits(p, cable, configuration(9, 2));
        const double y = limits.y_min + (limits.y_max - limits.y_min) * u(rng);

        const auto check = [](std::optional<double> closed, std::optional<double> bisected) {
            if (bisected) {
                REQUIRE(closed);
                CHECK(*closed == Approx(*bisected).margin(1e-6));
            } else {
                CHECK((!closed || *closed > 1e4));
            }
        };
        check(crossover_b(p, cable), bisect_crossover(p, cable, 0, 1, 0.0));
        check(crossover_a(p, cable, y), bisect_crossover(p, cable, 0, 2, y));
        check(crossover_c(p, cable, y), bisect_crossover(p, cable, 1, 2, y));
    }
}

TEST_CASE("crossover A edge behaviour in y", "[boundaries]") {
    const auto p = at_pu(0.8);
    // an AC-only hybrid never beats the full AC expansion
    CHECK_FALSE(crossover_a(p, kRef, 0.0).has_value());

    // U-shaped in y: the minimum sits strictly inside the admissible range
    const auto q = at_pu(2.0);
    const auto set = crossover_extrema(q, kRef);
    REQUIRE(set.l_cr_a_min);
    REQUIRE(set.y_at_a_min);
    CHECK(*set.y_at_a_min > 0.55);
    CHECK(*set.y_at_a_min < 0.99);
    CHECK(*crossover_a(q, kRef, 1.0) > *set.l_cr_a_min + 0.1);
    CHECK(*crossover_a(q, kRef, 0.55) > *set.l_cr_a_min + 0.1);
}

TEST_CASE("crossover C edge behaviour", "[boundaries]") {
    const auto p = at_pu(2.0);
    const auto at_one = crossover_c(p, kRef, 1.0);
    REQUIRE(at_one);
    CHECK(*at_one == 0.0);

    double last = 1e300;
    for (double pu : {1.5, 2.0, 2.5, 3.0, 3.5}) {
        const auto l = crossover_c(at_pu(pu), kRef, 0.75);
        REQUIRE(l);
        CHECK(*l < last);
        last = *l;
    }
}

TEST_CASE("optimal share", "[boundaries]") {
    const auto c2 = configuration(9, 2);
    SECTION("converter losses dominate on very short links") {
        const auto p = at_pu(2.0, 0.01);
        const auto opt = optimal_y(p, kRef, c2);
        CHECK(opt.y == share_limits(p, kRef, c2).y_min);
    }
    SECTION("long links balance the conduction terms, matching a grid scan") {
        const auto p = at_pu(1.5, 500.0);
        const auto limits = share_limits(p, kRef, c2);
        const auto opt = optimal_y(p, kRef, c2);
        const auto scan = oracle::grid_scan(
            [&](double y) { return loss_cn(p, kRef, c2, y).total_loss_w; }, limits.y_min,
            limits.y_max, 1001);
        CHECK(opt.y > limits.y_min + 0.01);
        CHECK(opt.y < limits.y_max - 0.01);
        CHECK(opt.y == Approx(scan.x).margin(1e-3));
        CHECK(opt.loss.total_loss_w <= scan.value * (1 + 1e-12));
    }
    SECTION("three per-unit demand restricts the search to y >= 2/3") {
        const auto p = at_pu(3.0, 20.0);
        const auto opt = optimal_y(p, kRef, c2);
        CHECK(opt.y >= 2.0 / 3.0 - 1e-12);
    }
    SECTION("non-hybrids are rejected") {
        CHECK_THROWS_AS(optimal_y(at_pu(1.0), kRef, configuration(9, 1)), Error);
    }
}

TEST_CASE("optimal share is never worse than the endpoints or the preset", "[boundaries][property]") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 100; ++n) {
        const auto c = configuration(9, 2 + static_cast<int>(2.0 * u(rng)));
        const auto cap = capacity_limits(c, 1.0);
        const auto p = at_pu((cap.s_max_ac + cap.s_max_dc) * (0.05 + 0.95 * u(rng)), 60.0 * u(rng),
                             0.8 + 0.2 * u(rng));
        const auto limits = share_limits(p, kRef, c);
        const auto opt = optimal_y(p, kRef, c);
        const double at = opt.loss.total_loss_w * (1 - 1e-12);
        CHECK(at <= loss_cn(p, kRef, c, limits.y_min).total_loss_w);
        CHECK(at <= loss_cn(p, kRef, c, limits.y_max).total_loss_w);
        CHECK(at <= loss_breakdown(p, kRef, c).total_loss_w);
    }
}

TEST_CASE("extremal crossovers bracket every share", "[boundaries]") {
    for (double pu : {1.0, 2.0, 3.0}) {
        const auto p = at_pu(pu);
        const auto set = crossover_extrema(p, kRef);
        REQUIRE(set.l_cr_a_min);
        REQUIRE(set.l_cr_c_max);
        REQUIRE(set.l_cr_b);
        CHECK(*set.l_cr_a_min <= *set.l_cr_b);
        CHECK(*set.l_cr_b <= *set.l_cr_c_max);
        const auto limits = share_limits(p, kRef, configuration(9, 2));
        for (int i = 0; i <= 200; ++i) {
            const double y = limits.y_min + (limits.y_max - limits.y_min) * i / 200.0;
            if (const auto a = crossover_a(p, kRef, y)) CHECK(*set.l_cr_a_min <= *a + 1e-12);
            if (const auto c = crossover_c(p, kRef, y)) CHECK(*set.l_cr_c_max >= *c - 1e-12);
        }
    }
}

TEST_CASE("C2 band endpoints reproduce the reported ranges", "[boundaries]") {
    const auto two = crossover_extrema(at_pu(2.0), kRef);
    CHECK(*two.l_cr_a_min == Approx(7.7).epsilon(0.2));
    CHECK(*two.l_cr_c_max == Approx(18.5).epsilon(0.2));
    const auto three = crossover_extrema(at_pu(3.0), kRef);
    CHECK(*three.l_cr_a_min == Approx(4.6).epsilon(0.2));
    CHECK(*three.l_cr_c_max == Approx(11.7).epsilon(0.2));
    CHECK(*three.l_cr_b == Approx(5.4).epsilon(0.2));
}

TEST_CASE("optimised C2 loss meets C0 and C1 at the band edges", "[boundaries][property]") {
    for (double pu : {0.5, 1.0, 2.0, 3.0, 3.8}) {
        auto p = at_pu(pu);
        const auto set = crossover_extrema(p, kRef);
        REQUIRE(set.has_c2_region());
        p.link_length_km = *set.l_cr_a_min;
        const double c2_lo = optimal_y(p, kRef, configuration(9, 2)).loss.total_loss_w;
        const double c0 = loss_c0(p, kRef, configuration(9, 0)).total_loss_w;
        CHECK(c2_lo == Approx(c0).epsilon(1e-3));
        p.link_length_km = *set.l_cr_c_max;
        const double c2_hi = optimal_y(p, kRef, configuration(9, 2)).loss.total_loss_w;
        const double c1 = loss_c1(p, kRef, configuration(9, 1)).total_loss_w;
        CHECK(c2_hi == Approx(c1).epsilon(1e-3));
    }
}

TEST_CASE("C2 band narrows as demand grows", "[boundaries][property]") {
    double last = 1e300;
    for (int i = 1; i <= 40; ++i) {
        const auto set = crossover_extrema(at_pu(0.1 * i), kRef);
        const double width = *set.l_cr_c_max - *set.l_cr_a_min;
        CHECK(width < last);
        last = width;
    }
}

TEST_CASE("region rule", "[boundaries]") {
    CrossoverSet set;
    set.l_cr_a_min = 4.0;
    set.l_cr_b = 5.0;
    set.l_cr_c_max = 12.0;
    CHECK(region_rule(set, 3.9) == 0);
    CHECK(region_rule(set, 4.0) == 2);
    CHECK(region_rule(set, 11.99) == 2);
    CHECK(region_rule(set, 12.0) == 1);
    set.l_cr_a_min.reset();
    set.l_cr_b.reset();
    CHECK(region_rule(set, 1e6) == 0);
}

TEST_CASE("configuration selection", "[boundaries]") {
    CHECK(select_configuration(at_pu(1.0, 0.1), kRef).config.index == 0);
    CHECK(select_configuration(at_pu(3.9, 0.1), kRef).config.index == 0);
    const auto mid = select_configuration(at_pu(3.0, 10.0), kRef);
    CHECK(mid.config.index == 2);
    CHECK(mid.agrees_with_rule);
    CHECK(select_configuration(at_pu(3.0, 15.0), kRef).config.index == 1);

    auto p = at_pu(1.0);
    p.s_actual_mva = 5.0 * link_capacity(kRef, 10.0);
    try {
        (void)select_configuration(p, kRef);
        FAIL("expected infeasible");
    } catch (const Error& e) {
        CHECK(e.category() == ErrorCategory::infeasible);
    }
}

TEST_CASE("boundary maps", "[boundaries]") {
    const std::vector<double> demand = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5};
    std::vector<double> length;
    for (int i = 0; i <= 200; ++i) length.push_back(0.25 * i);

    const auto map = boundary_map(at_pu(1.0), kRef, demand, length, 3);

    SECTION("single cell equals a direct selection") {
        const std::vector<double> d1 = {2.0};
        const std::vector<double> l1 = {9.0};
        const auto one = boundary_map(at_pu(1.0), kRef, d1, l1);
        CHECK(one.winner[0][0] == select_configuration(at_pu(2.0, 9.0), kRef).config.index);
    }
    SECTION("rows are C0 then C2 then C1 without interleaving") {
        for (const auto& row : map.winner) {
            int stage = 0;
            const int order[] = {0, 2, 1};
            for (int w : row) {
                while (stage < 3 && order[stage] != w) ++stage;
                REQUIRE(stage < 3);
            }
        }
    }
    SECTION("C0 to C2 transition moves closer as demand increases") {
        double last = 1e300;
        for (std::size_t r = 0; r < demand.size(); ++r) {
            const auto band = c2_band(map, r);
            REQUIRE_FALSE(band.empty());
            CHECK(band.front() <= last);
            last = band.front();
        }
    }
    SECTION("unity power factor narrows the C2 band in every row") {
        const auto upf = boundary_map(at_pu(1.0, 0.0, 1.0), kRef, demand, length, 2);
        for (std::size_t r = 0; r < demand.size(); ++r) {
            const auto wide = c2_band(map, r);
            const auto narrow = c2_band(upf, r);
            CHECK(narrow.size() < wide.size());
            for (double l : narrow) {
                CHECK(std::find(wide.begin(), wide.end(), l) != wide.end());
            }
        }
    }
    SECTION("worker count does not change the result") {
        const auto serial = boundary_map(at_pu(1.0), kRef, demand, length, 1);
        CHECK(serial.winner == map.winner);
        CHECK(serial.y_opt == map.y_opt);
    }
}

TEST_CASE("sensitivity sweeps follow the expected trends", "[boundaries]") {
    const auto base = at_pu(2.0);
    const auto nondecreasing = [](const std::vector<std::optional<double>>& v, int sign) {
        for (std::size_t i = 1; i < v.size(); ++i) {
            REQUIRE(v[i]);
            REQUIRE(v[i - 1]);
            CHECK(sign * (*v[i] - *v[i - 1]) >= 0.0);
        }
    };
    const std::vector<double> volts = {5, 10, 15, 20, 25, 30, 35};
    const auto v = sensitivity_sweep(SweepAxis::voltage, volts, base, kRef);
    nondecreasing(v.l_c2_min, +1);
    nondecreasing(v.l_c2_max, +1);
    CHECK(v.demand_pu == Approx(2.0).epsilon(1e-14));
    // s_link grows linearly with voltage, so the crossovers do too
    CHECK(*v.l_c2_min[6] / *v.l_c2_min[0] == Approx(7.0).epsilon(1e-9));

    const std::vector<double> etas = {0.985, 0.988, 0.991, 0.994, 0.997, 0.999};
    const auto e = sensitivity_sweep(SweepAxis::eta, etas, base, kRef);
    nondecreasing(e.l_c2_min, -1);
    nondecreasing(e.l_c2_max, -1);

    const auto& lib = CableLibrary::reference();
    const auto areas = lib.areas();
    const auto a = sensitivity_sweep(SweepAxis::area, areas, base, kRef, lib.rows());
    nondecreasing(a.l_c2_min, +1);
    nondecreasing(a.l_c2_max, +1);

    const std::vector<double> missing = {400.0, 450.0};
    CHECK_THROWS_AS(sensitivity_sweep(SweepAxis::area, missing, base, kRef, lib.rows()), Error);
    const std::vector<double> unsorted = {20.0, 10.0};
    CHECK_THROWS_AS(sensitivity_sweep(SweepAxis::voltage, unsorted, base, kRef), Error);
}
