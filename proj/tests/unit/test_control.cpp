#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"

using uvr::ControlLift;
using uvr::ReducedState;
using uvr::Variant;
using uvr::Vec2;
using uvr::Vec3;

TEST_CASE("zero law", "[control]") {
    uvr::Sampler s(5);
    for (Variant v : {Variant::Coincident, Variant::NonCoincident, Variant::KirchhoffNonCoincident}) {
        const auto x = s.state(v);
        CHECK(uvr::evaluate(uvr::ZeroLaw{}, 3.0, x) == ControlLift::zero(v));
        const uvr::VehicleParams prm = s.params(v);
        CHECK(uvr::relative_deviation(uvr::eom(x, prm, uvr::evaluate(uvr::ZeroLaw{}, 0.0, x)),
                                      oracle::hand_eom(x, prm, ControlLift::zero(v))) <= 1e-14);
    }
}

TEST_CASE("rotor feedback examples", "[control]") {
    const uvr::RotorFeedback at_ref{{2, 2}, {1, 0}};
    const auto x = ReducedState::coincident({1, 2, 3}, {4, 5, 6}, {}, {1, 0});
    const ControlLift a = uvr::evaluate(at_ref, 0.0, x);
    CHECK(a.u_l == Vec2{0, 0});
    CHECK_FALSE(a.acts_on_coalgebra());

    const uvr::RotorFeedback damp{{2, 2}, {0, 0}};
    const ControlLift b = uvr::evaluate(damp, 0.0, ReducedState::coincident({}, {}, {}, {0.5, -1}));
    CHECK(b.u_l == Vec2{-1, 2});
    CHECK(b.u_pi == Vec3{});
    CHECK(b.u_p == Vec3{});
    CHECK(b.u_theta == Vec2{});

    const ControlLift c = uvr::evaluate(damp, 0.0, ReducedState::noncoincident({}, {}, {0, 0, 1}, {}, {1, 1}));
    REQUIRE(c.u_gamma.has_value());
    CHECK(*c.u_gamma == Vec3{});

    CHECK_THROWS_AS(uvr::evaluate(damp, 0.0, ReducedState::kirchhoff_coincident({}, {})), uvr::VariantMismatch);
}

TEST_CASE("constant law shape checks", "[control]") {
    ControlLift lift = ControlLift::zero(Variant::Coincident);
    lift.u_p = {1, 0, 0};
    const auto x = ReducedState::coincident({}, {});
    CHECK(uvr::evaluate(uvr::ConstantLaw{lift}, 5.0, x) == lift);
    CHECK_THROWS_AS(uvr::evaluate(uvr::ConstantLaw{lift}, 0.0, ReducedState::noncoincident({}, {}, {0, 0, 1})),
                    uvr::VariantMismatch);

    ControlLift rotor = ControlLift::zero(Variant::KirchhoffCoincident);
    rotor.u_l = {1, 0};
    CHECK_THROWS_AS(uvr::evaluate(uvr::ConstantLaw{rotor}, 0.0, ReducedState::kirchhoff_coincident({}, {})),
                    uvr::VariantMismatch);

    ControlLift bad = ControlLift::zero(Variant::Coincident);
    bad.u_pi.x = NAN;
    CHECK_THROWS_AS(uvr::require_compatible(bad, Variant::Coincident), uvr::ValidationError);
}

TEST_CASE("table lookup interpolates and clamps", "[control]") {
    ControlLift a = ControlLift::zero(Variant::Coincident);
    ControlLift b = a;
    b.u_l = {1, -2};
    b.u_pi = {4, 0, 0};
    const uvr::TableLookup table({{1.0, a}, {3.0, b}});
    CHECK(table.at(0.0) == a);
    CHECK(table.at(1.0) == a);
    CHECK(table.at(10.0) == b);
    const ControlLift mid = table.at(2.0);
    CHECK(mid.u_l == Vec2{0.5, -1});
    CHECK(mid.u_pi == Vec3{2, 0, 0});
    CHECK(table.at(2.5).u_l.a == 0.75);

    CHECK_THROWS_AS(uvr::TableLookup({}), uvr::ValidationError);
    CHECK_THROWS_AS(uvr::TableLookup({{1.0, a}, {1.0, b}}), uvr::ValidationError);
    CHECK_THROWS_AS(uvr::TableLookup({{2.0, a}, {1.0, b}}), uvr::ValidationError);
    CHECK_THROWS_AS(uvr::TableLookup({{0.0, a}, {1.0, ControlLift::zero(Variant::NonCoincident)}}),
                    uvr::ValidationError);
}

TEST_CASE("conservation classification of laws", "[control]") {
    CHECK(uvr::preserves_casimirs(uvr::ZeroLaw{}));
    CHECK(uvr::preserves_energy(uvr::ZeroLaw{}));
    CHECK(uvr::preserves_casimirs(uvr::RotorFeedback{{1, 1}, {}}));
    CHECK_FALSE(uvr::preserves_energy(uvr::RotorFeedback{{1, 1}, {}}));

    ControlLift spin = ControlLift::zero(Variant::Coincident);
    spin.u_theta = {1, 0};
    CHECK(uvr::preserves_energy(uvr::ConstantLaw{spin}));
    CHECK(uvr::preserves_casimirs(uvr::ConstantLaw{spin}));

    ControlLift push = ControlLift::zero(Variant::Coincident);
    push.u_p = {0, 1, 0};
    CHECK_FALSE(uvr::preserves_casimirs(uvr::ConstantLaw{push}));
    CHECK_FALSE(uvr::preserves_energy(uvr::ConstantLaw{push}));

    const uvr::TableLookup table({{0.0, spin}, {1.0, push}});
    CHECK_FALSE(uvr::preserves_casimirs(table));
    const uvr::TableLookup quiet({{0.0, spin}, {1.0, spin}});
    CHECK(uvr::preserves_energy(quiet));
}
