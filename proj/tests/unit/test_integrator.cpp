#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "threebody/closed_form.hpp"
#include "threebody/integrator.hpp"

using namespace threebody;

namespace {

InitialFamily<double> equal_family(double alpha, double theta) {
    return build(Masses<double>::equal(), PotentialLaw::from_alpha(alpha), theta);
}

double newtonian_theta() {
    const auto sol = theta_equal_mass<double>(-1);
    return theta_from_cos2(std::get<theta_solution::Cos2Theta<double>>(sol).value);
}

}  // namespace

TEST(Config, Validation) {
    IntegratorConfig c;
    EXPECT_NO_THROW(c.validate());
    c.rel_tol = 0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = IntegratorConfig{};
    c.collision_radius = -1;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = IntegratorConfig{};
    c.output_step = 0.0;
    EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(ClosedForm, Alpha2InitialDataAndInertia) {
    for (double th : {0.0, 0.3, 1.2}) {
        const auto s = closed_form_alpha2(th, 0);
        const auto fam = equal_family(2, th);
        for (int i = 0; i < 3; ++i) {
            EXPECT_NEAR(norm(s.r[i] - fam.state.r[i]), 0, 1e-15);
            EXPECT_NEAR(norm(s.v[i] - fam.state.v[i]), 0, 1e-15);
        }
        for (double t = 0; t < 3; t += 0.1) {
            EXPECT_NEAR(moment_of_inertia(closed_form_alpha2(th, t), Masses<double>::equal()), 1, 1e-14);
        }
    }
    const auto c = closed_form_alpha2(0.8, alpha2_collision_time());
    EXPECT_NEAR(norm(c.r[0] - c.r[1]), 0, 1e-15);
}

TEST(ClosedForm, Alpha4InitialDataAndReducedEquation) {
    const auto s = closed_form_alpha4(0);
    EXPECT_NEAR(s.r[0].x, 1, 1e-15);
    EXPECT_NEAR(s.r[1].x, -1, 1e-15);
    EXPECT_NEAR(s.r[2].x, 0, 1e-15);
    EXPECT_NEAR(s.v[0].x, -std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(s.v[1].x, -std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(s.v[2].x, 2 * std::sqrt(3.0), 1e-15);
    for (double t = 0; t < 2; t += 0.05) {
        EXPECT_NEAR(moment_of_inertia(closed_form_alpha4(t), Masses<double>::equal()), 1, 1e-14);
        EXPECT_LT(alpha4_reduced_residual(t), 1e-13);
    }
    const auto c = closed_form_alpha4(alpha4_collision_time());
    EXPECT_NEAR(c.r[0].x - c.r[2].x, 0, 1e-15);
}

TEST(Integrator, MatchesAlpha2ClosedForm) {
    for (double th : {0.0, 0.3, 1.2}) {
        auto cmp = compare_alpha2(th, IntegratorConfig{}, 2.0, 2.0);
        ASSERT_TRUE(cmp.collision.has_value());
        cmp = compare_alpha2(th, IntegratorConfig{}, 2.0, 0.9 * cmp.collision->time);
        EXPECT_LT(cmp.max_position_error, 1e-8) << th;
        EXPECT_LT(cmp.max_inertia_dev, 1e-8) << th;
    }
    // theta = 0 is collinear; bodies 1 and 3 meet first, at sqrt(3) t = pi / 6
    const auto c0 = compare_alpha2(0.0, IntegratorConfig{}, 2.0, 0.25);
    EXPECT_EQ(c0.collision->first, 0);
    EXPECT_EQ(c0.collision->second, 2);
    EXPECT_NEAR(c0.collision->time, std::numbers::pi / (6 * std::sqrt(3.0)), 1e-9);
    const auto c3 = compare_alpha2(0.3, IntegratorConfig{}, 2.0, 0.8);
    EXPECT_EQ(c3.collision->first, 0);
    EXPECT_EQ(c3.collision->second, 1);
    EXPECT_NEAR(c3.collision->time, alpha2_collision_time(), 1e-9);
    EXPECT_LE(c3.collision->min_distance, IntegratorConfig{}.collision_radius);
}

TEST(Integrator, MatchesAlpha4ClosedForm) {
    const auto cmp = compare_alpha4(IntegratorConfig{}, 1.0, 0.9 * alpha4_collision_time());
    EXPECT_LT(cmp.max_position_error, 1e-8);
    EXPECT_LT(cmp.max_inertia_dev, 1e-8);
    ASSERT_TRUE(cmp.collision.has_value());
    EXPECT_EQ(cmp.collision->first, 0);
    EXPECT_EQ(cmp.collision->second, 2);
    EXPECT_NEAR(cmp.collision->time, alpha4_collision_time(), 1e-9);
    EXPECT_EQ(cmp.trajectory.termination, Termination::Collision);
}

TEST(Integrator, DenseOutputIsFifthOrder) {
    // loose tolerances so every step is max_step long
    std::vector<double> errs;
    for (double h : {0.02, 0.01, 0.005}) {
        IntegratorConfig c;
        c.rel_tol = c.abs_tol = 1;
        c.max_step = h;
        const auto tr = integrate(equal_family(2, 0.3), c, 0.5);
        double e = 0;
        for (const auto& seg : tr.segments) {
            const double tm = seg.t0 + 0.5 * seg.h;
            const auto a = seg.eval(tm);
            const auto b = closed_form_alpha2(0.3, tm);
            for (int i = 0; i < 3; ++i) e = std::max(e, norm(a.r[i] - b.r[i]));
        }
        errs.push_back(e);
    }
    EXPECT_GT(errs[0] / errs[1], 16);
    EXPECT_GT(errs[1] / errs[2], 16);
}

TEST(Integrator, ConstantInertiaAtMinusTwoUntilCloseApproach) {
    // these launches run into a binary collision well before t = 10
    const std::map<double, double> approach{{0.3, 0.33432520093}, {0.7, 0.47076758853}, {1.1, 2.41491797557}};
    for (const auto& [th, t_near] : approach) {
        const auto fam = equal_family(-2, th);
        const auto tr = integrate(fam, IntegratorConfig{}, 10);
        EXPECT_NE(tr.termination, Termination::Completed);
        EXPECT_NEAR(tr.t_final(), t_near, 1e-6) << th;
        EXPECT_LT(inertia_variation(tr).max_abs_dev, 1e-8);
        EXPECT_NEAR(tr.samples.front().diag.E, 0, 1e-12);
    }
}

TEST(Integrator, NewtonianInertiaVaries) {
    const auto tr = integrate(equal_family(-1, newtonian_theta()), IntegratorConfig{}, 5);
    EXPECT_EQ(tr.termination, Termination::Completed);
    EXPECT_GT(inertia_variation(tr).max_abs_dev, 1e-4);
    const auto cons = conservation(tr);
    EXPECT_LT(cons.energy_drift, 1e-9);
    EXPECT_LT(cons.max_angular_momentum, 1e-10);
}

TEST(Integrator, TimeReversalSymmetryOfV) {
    const auto fam = equal_family(-1, newtonian_theta());
    const auto fw = integrate(fam, IntegratorConfig{}, 3);
    const auto bw = integrate(fam, IntegratorConfig{}, -3);
    ASSERT_EQ(bw.termination, Termination::Completed);
    double worst = 0;
    for (double t = 0; t <= 3; t += 0.01) {
        const double va = potential_energy(fw.at(t), fam.masses, fam.law);
        const double vb = potential_energy(bw.at(-t), fam.masses, fam.law);
        worst = std::max(worst, std::abs(va - vb) / std::abs(va));
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(Integrator, LagrangeJacobiResidual) {
    IntegratorConfig c;
    c.output_step = 1e-3;
    const auto newton = integrate(equal_family(-1, newtonian_theta()), c, 3);
    const double r1 = lj_residual(newton, 1e-3);
    EXPECT_LT(r1, 1e-5);
    c.output_step = 2e-3;
    const double r2 = lj_residual(integrate(equal_family(-1, newtonian_theta()), c, 3), 2e-3);
    EXPECT_NEAR(r2 / r1, 4, 0.5);

    c.output_step = 1e-3;
    const auto flat = integrate(equal_family(-2, 1.17), c, 0.3);
    EXPECT_LT(lj_residual(flat, 1e-3), 1e-8);
    EXPECT_THROW(lj_residual(flat, 1.0), InvalidArgument);
}

TEST(Integrator, GridLandingHitsEveryMultiple) {
    IntegratorConfig c;
    c.output_step = 0.01;
    const auto tr = integrate(equal_family(-1, 0.5), c, 0.2);
    int hits = 0;
    for (const auto& s : tr.samples) {
        const double k = s.state.t / 0.01;
        if (std::abs(k - std::round(k)) < 1e-9) ++hits;
    }
    EXPECT_EQ(hits, 21);
    EXPECT_EQ(tr.t_final(), 0.2);
}

TEST(Integrator, ExtendedPrecisionAgrees) {
    IntegratorConfig c;
    c.extended_precision = true;
    const auto a = integrate(equal_family(-1, 0.9), c, 2);
    const auto b = integrate(equal_family(-1, 0.9), IntegratorConfig{}, 2);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(norm(a.last_good().r[i] - b.last_good().r[i]), 0, 1e-9);
}

TEST(Integrator, NoEventsOnCleanRun) {
    const auto tr = integrate(equal_family(-1, newtonian_theta()), IntegratorConfig{}, 3);
    EXPECT_TRUE(tr.events.empty());
    EXPECT_TRUE(detect_collisions(tr, IntegratorConfig{}).empty());
    for (std::size_t k = 1; k < tr.samples.size(); ++k) {
        EXPECT_LT(tr.samples[k - 1].state.t, tr.samples[k].state.t);
    }
}

TEST(Integrator, InertiaVariationOfSinglePoint) {
    const auto tr = integrate(equal_family(-1, 0.5), IntegratorConfig{}, 0);
    ASSERT_EQ(tr.samples.size(), 1u);
    const auto iv = inertia_variation(tr);
    EXPECT_EQ(iv.max_abs_dev, 0);
    EXPECT_EQ(iv.relative_dev, 0);
}

TEST(Integrator, CsvSchemaAndDeterminism) {
    const auto a = to_csv(compare_alpha2(0.3, IntegratorConfig{}, 2, 2).trajectory);
    const auto b = to_csv(compare_alpha2(0.3, IntegratorConfig{}, 2, 2).trajectory);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rfind("t,x1,y1,x2,y2,x3,y3,vx1,vy1,vx2,vy2,vx3,vy3,I,K,V,E,L\n", 0), 0u);
    EXPECT_NE(a.find("# collision pair=(1,2) t=0.9068996821"), std::string::npos);
    EXPECT_EQ(a.back(), '\n');
}
