// SPDX-License-Identifier: Apache-2.0
//
// nfloc: wavenumber-domain near-field target localization
// Copyright (C) 2026 The nfloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include "nfloc/errors.hpp"
#include "nfloc/geometry.hpp"

#include <cmath>

using namespace nfloc;

namespace
{
    SystemConfig config_with(int m)
    {
        SystemConfig c;
        c.num_antennas = m;
        return c;
    }
} // namespace

TEST_CASE("build_geometry places M elements at m*d on the x-axis")
{
    const ArrayGeometry g = build_geometry(config_with(3));
    const double d = 2.99792458e8 / (2.0 * 28e9);
    CHECK(d == doctest::Approx(5.35343675e-3).epsilon(1e-12));
    REQUIRE(g.size() == 3);
    CHECK(g.position(-1).x() == doctest::Approx(-d).epsilon(1e-15));
    CHECK(g.position(0).x() == 0.0);
    CHECK(g.position(1).x() == doctest::Approx(d).epsilon(1e-15));
    CHECK(g.element_spacing() == doctest::Approx(d).epsilon(1e-15));
    CHECK(g.aperture() == doctest::Approx(2.0 * d).epsilon(1e-15));
}

TEST_CASE("element spacing is exactly half a wavelength")
{
    const SystemConfig c;
    CHECK(c.element_spacing() == 0.5 * (kSpeedOfLight / c.carrier_frequency_hz));
}

TEST_CASE("M = 511 aperture is 255 wavelengths")
{
    const ArrayGeometry g = build_geometry(config_with(511));
    CHECK(g.aperture() == doctest::Approx(255.0 * g.wavelength()).epsilon(1e-12));
    CHECK(g.half_count() == 255);
}

TEST_CASE("M = 1 is a single element at the origin")
{
    const ArrayGeometry g = build_geometry(config_with(1));
    REQUIRE(g.size() == 1);
    CHECK(g.position(0).norm() == 0.0);
    CHECK(g.aperture() == 0.0);
    CHECK(rayleigh_distance(g) == 0.0);
}

TEST_CASE("even or non-positive antenna counts are configuration errors")
{
    CHECK_THROWS_AS(build_geometry(config_with(4)), ConfigError);
    CHECK_THROWS_AS(build_geometry(config_with(0)), ConfigError);
    SystemConfig bad;
    bad.carrier_frequency_hz = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("positions are symmetric about the origin and on the x-axis")
{
    for (int m : {1, 3, 31, 127, 511})
    {
        const ArrayGeometry g = build_geometry(config_with(m));
        for (int i = -g.half_count(); i <= g.half_count(); ++i)
        {
            CHECK(g.position(i) == -g.position(-i));
            CHECK(g.position(i).y() == 0.0);
            CHECK(g.position(i).z() == 0.0);
        }
    }
}

TEST_CASE("geometry is bit-identical for identical configs")
{
    const ArrayGeometry a = build_geometry(config_with(127));
    const ArrayGeometry b = build_geometry(config_with(127));
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.positions()[i] == b.positions()[i]);
}

TEST_CASE("rayleigh distance")
{
    const double lambda = 2.99792458e8 / 28e9;
    CHECK(rayleigh_distance(build_geometry(config_with(511))) == doctest::Approx(130050.0 * lambda).epsilon(1e-12));
    CHECK(rayleigh_distance(build_geometry(config_with(511))) == doctest::Approx(1392.428898675).epsilon(1e-9));
    CHECK(rayleigh_distance(build_geometry(config_with(101))) == doctest::Approx(5000.0 * lambda).epsilon(1e-12));
}

TEST_CASE("radiating near field membership")
{
    const ArrayGeometry g = build_geometry(config_with(511));
    CHECK(is_in_radiating_near_field(TargetPosition::from_polar(10.0, kPi / 2), g));
    CHECK_FALSE(is_in_radiating_near_field(TargetPosition::from_polar(2000.0, kPi / 2), g));
    CHECK_FALSE(is_in_radiating_near_field(TargetPosition::from_polar(0.0, kPi / 2), g));
}

TEST_CASE("target coordinates follow [r cos, 0, r sin]")
{
    const TargetPosition t = TargetPosition::from_polar(20.0, kPi / 3);
    CHECK(t.coordinates().x() == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(t.coordinates().y() == 0.0);
    CHECK(t.coordinates().z() == doctest::Approx(20.0 * std::sqrt(3.0) / 2).epsilon(1e-12));
    CHECK(t.coordinates().norm() == doctest::Approx(t.range()).epsilon(1e-12));
    const TargetPosition u = TargetPosition::from_xz(t.xz().x(), t.xz().y());
    CHECK(u.range() == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(u.angle() == doctest::Approx(kPi / 3).epsilon(1e-12));
}
