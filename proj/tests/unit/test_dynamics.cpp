#include <gtest/gtest.h>

#include <random>

#include "threebody/dynamics.hpp"

using namespace threebody;

namespace {

PlanarState<double> random_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    PlanarState<double> s;
    for (int i = 0; i < 3; ++i) {
        s.r[i] = {u(rng), u(rng)};
        s.v[i] = {u(rng), u(rng)};
    }
    return s;
}

const std::vector<double> kAlphas{-2, -1, -0.5, 0, 0.5, 1, 2, 3, 4};

}  // namespace

TEST(Masses, RejectsNonPositive) {
    EXPECT_THROW(Masses<double>(1, 0, 1), InvalidArgument);
    EXPECT_THROW(Masses<double>(-1, 1, 1), InvalidArgument);
    EXPECT_NO_THROW(Masses<double>(0.1, 2, 3));
    EXPECT_DOUBLE_EQ(Masses<double>(1, 2, 3).total(), 6);
}

TEST(PotentialLaw, ZeroMeansLog) {
    EXPECT_TRUE(PotentialLaw::from_alpha(0).is_log());
    EXPECT_FALSE(PotentialLaw::from_alpha(-1).is_log());
    EXPECT_THROW(PotentialLaw::power(0), InvalidArgument);
    EXPECT_EQ(PotentialLaw::log().alpha(), 0.0);
}

TEST(Dynamics, KineticEnergyOfFamilyVelocities) {
    // velocities -u, -u, 2u with u = 1 give K = 3
    PlanarState<double> s;
    s.v = {Vec2<double>{-1, 0}, Vec2<double>{-1, 0}, Vec2<double>{2, 0}};
    EXPECT_DOUBLE_EQ(kinetic_energy(s, Masses<double>::equal()), 3);
}

TEST(Dynamics, ForcesSumToZero) {
    std::mt19937_64 rng(7);
    const Masses<double> m(0.7, 1.3, 2.1);
    for (double a : kAlphas) {
        const auto law = PotentialLaw::from_alpha(a);
        for (int k = 0; k < 50; ++k) {
            const auto f = forces(random_state(rng), m, law);
            const Vec2<double> sum = f[0] + f[1] + f[2];
            EXPECT_NEAR(sum.x, 0, 1e-10 * (1 + norm(f[0])));
            EXPECT_NEAR(sum.y, 0, 1e-10 * (1 + norm(f[0])));
        }
    }
}

TEST(Dynamics, ForcesAreMinusGradientOfV) {
    std::mt19937_64 rng(11);
    const Masses<double> m(1, 2, 3);
    for (double a : kAlphas) {
        const auto law = PotentialLaw::from_alpha(a);
        const auto s = random_state(rng);
        const auto f = forces(s, m, law);
        const double h = 1e-6;
        for (int i = 0; i < 3; ++i) {
            for (int axis = 0; axis < 2; ++axis) {
                auto sp = s, sm = s;
                (axis == 0 ? sp.r[i].x : sp.r[i].y) += h;
                (axis == 0 ? sm.r[i].x : sm.r[i].y) -= h;
                const double grad = (potential_energy(sp, m, law) - potential_energy(sm, m, law)) / (2 * h);
                const double fi = axis == 0 ? f[i].x : f[i].y;
                EXPECT_NEAR(fi, -grad, 1e-6 * (1 + std::abs(fi))) << "alpha=" << a;
            }
        }
    }
}

TEST(Dynamics, VirialIdentity) {
    // sum_i r_i . f_i = -alpha V (power) or -sum m_i m_j (log)
    std::mt19937_64 rng(3);
    const Masses<double> m(1.5, 0.5, 1);
    for (double a : kAlphas) {
        const auto law = PotentialLaw::from_alpha(a);
        const auto s = random_state(rng);
        const auto f = forces(s, m, law);
        double lhs = 0;
        for (int i = 0; i < 3; ++i) lhs += dot(s.r[i], f[i]);
        const double rhs = law.is_log() ? -pair_mass_sum(m) : -a * potential_energy(s, m, law);
        EXPECT_NEAR(lhs, rhs, 1e-10 * (1 + std::abs(rhs)));
    }
}

TEST(Dynamics, InertiaEqualsHarmonicPotentialOverMass) {
    // about the centre of mass, I = (1/M) * sum m_i m_j r_ij^2 / 2
    std::mt19937_64 rng(5);
    const Masses<double> m(1, 2, 4);
    for (int k = 0; k < 20; ++k) {
        auto s = random_state(rng);
        const Vec2<double> c = centre_of_mass_moment(s, m) / m.total();
        for (auto& r : s.r) r -= c;
        const double v2 = potential_energy(s, m, PotentialLaw::power(2));
        EXPECT_NEAR(moment_of_inertia(s, m), v2 / m.total(), 1e-12);
    }
}

TEST(Dynamics, LogIsTheContinuousLimitOfTheForce) {
    std::mt19937_64 rng(9);
    const Masses<double> m(1, 1, 2);
    const auto s = random_state(rng);
    const auto fl = forces(s, m, PotentialLaw::log());
    const auto fe = forces(s, m, PotentialLaw::power(1e-9));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(norm(fl[i] - fe[i]), 0, 1e-7);
}

TEST(Dynamics, CollisionOnlyWhereSingular) {
    PlanarState<double> s;
    s.r = {Vec2<double>{0, 0}, Vec2<double>{0, 0}, Vec2<double>{1, 0}};
    const auto m = Masses<double>::equal();
    EXPECT_THROW(forces(s, m, PotentialLaw::power(-1)), CollisionSingularity);
    EXPECT_THROW(forces(s, m, PotentialLaw::log()), CollisionSingularity);
    EXPECT_THROW(potential_energy(s, m, PotentialLaw::power(-2)), CollisionSingularity);
    EXPECT_NO_THROW(forces(s, m, PotentialLaw::power(2)));
    EXPECT_NO_THROW(forces(s, m, PotentialLaw::power(4)));
    EXPECT_NO_THROW(potential_energy(s, m, PotentialLaw::power(4)));
    try {
        forces(s, m, PotentialLaw::power(-1));
    } catch (const CollisionSingularity& e) {
        EXPECT_EQ(e.first, 0);
        EXPECT_EQ(e.second, 1);
    }
}

TEST(Dynamics, RepulsiveRhsIsPositive) {
    std::mt19937_64 rng(21);
    const Masses<double> m(1, 2, 3);
    for (double a : {-1.0, 0.0, 1.0, 3.0}) {
        const auto law = PotentialLaw::from_alpha(a);
        for (int k = 0; k < 100; ++k) {
            EXPECT_GT(repulsive_lagrange_jacobi_rhs(random_state(rng), m, law), 0) << a;
        }
    }
}
