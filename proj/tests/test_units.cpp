#include <gtest/gtest.h>

#include <random>

#include "kleinfdtd/errors.hpp"
#include "kleinfdtd/units.hpp"

using namespace kleinfdtd;

TEST(Units, BaseConstantsAreOne) {
  EXPECT_EQ(UnitsSystem::hbar, 1.0);
  EXPECT_EQ(UnitsSystem::c, 1.0);
  EXPECT_EQ(UnitsSystem::m_e, 1.0);
}

TEST(Units, RestEnergyIsOneInternalUnit) {
  EXPECT_NEAR(UnitsSystem{}.to_internal(0.511, QuantityKind::energy_MeV), 1.0, 1e-3);
}

TEST(Units, HighMomentumPacket) {
  EXPECT_NEAR(UnitsSystem{}.to_internal(18.75, QuantityKind::momentum_MeV_per_c), 36.69, 0.1);
}

TEST(Units, PacketWidth) {
  EXPECT_NEAR(UnitsSystem{}.to_internal(1e-13, QuantityKind::length_m), 0.2590, 1e-3);
}

TEST(Units, StepHeights) {
  const UnitsSystem u;
  EXPECT_NEAR(u.to_internal(25e6, QuantityKind::potential_volts), 48.92, 0.01);
  EXPECT_NEAR(u.to_internal(5e6, QuantityKind::potential_volts), 9.78, 0.01);
  EXPECT_NEAR(u.to_internal(0.51099895e6, QuantityKind::potential_volts), 1.0, 1e-12);
}

TEST(Units, TimeUnitIsLengthOverC) {
  const UnitsSystem u;
  EXPECT_NEAR(u.seconds_per_time_unit(), 3.8615926796e-13 / 299792458.0, 1e-30);
  EXPECT_NEAR(u.to_internal(u.seconds_per_time_unit(), QuantityKind::time_s), 1.0, 1e-14);
}

TEST(Units, RoundTripRandomValues) {
  const UnitsSystem u;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> mantissa(-10.0, 10.0);
  std::uniform_int_distribution<int> exponent(-20, 20);
  for (auto kind : {QuantityKind::energy_MeV, QuantityKind::momentum_MeV_per_c,
                    QuantityKind::potential_volts, QuantityKind::length_m, QuantityKind::time_s}) {
    for (int i = 0; i < 1000; ++i) {
      const double v = mantissa(rng) * std::pow(10.0, exponent(rng));
      const double there_and_back = u.from_internal(u.to_internal(v, kind), kind);
      EXPECT_NEAR(there_and_back, v, 1e-12 * std::abs(v));
      const double back_and_there = u.to_internal(u.from_internal(v, kind), kind);
      EXPECT_NEAR(back_and_there, v, 1e-14 * std::abs(v));
    }
  }
}

TEST(Units, ParseQuantityKind) {
  EXPECT_EQ(parse_quantity_kind("energy_MeV"), QuantityKind::energy_MeV);
  EXPECT_EQ(parse_quantity_kind("momentum_MeV_per_c"), QuantityKind::momentum_MeV_per_c);
  EXPECT_EQ(parse_quantity_kind("potential_volts"), QuantityKind::potential_volts);
  EXPECT_EQ(parse_quantity_kind("length_m"), QuantityKind::length_m);
  EXPECT_EQ(parse_quantity_kind("time_s"), QuantityKind::time_s);
  EXPECT_THROW(parse_quantity_kind("furlongs"), InvalidArgument);
}
