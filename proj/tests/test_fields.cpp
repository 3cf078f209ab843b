#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "magline/fields.hpp"

using namespace magline;

namespace {

bool near(const Vec3& a, const Vec3& b, double tol = 1e-15) {
    return norm(a - b) <= tol;
}

std::vector<Vec3> probe_vectors() {
    std::vector<Vec3> v = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 40; ++i)
        v.push_back({u(rng), u(rng), u(rng)});
    return v;
}

} // namespace

TEST_CASE("cross product orientation") {
    CHECK(near(cross({1, 2, 3}, {4, 5, 6}), {-3, 6, -3}));
    CHECK(near(cross({1, 0, 0}, {0, 1, 0}), {0, 0, 1}));
}

TEST_CASE("field values") {
    const Vec3 p{1, 2, 3};
    CHECK(near(eval_field(KillingField::rotation(Axis::Z), p), {-2, 1, 0}));
    CHECK(near(eval_field(KillingField::rotation(Axis::X), p), {0, -3, 2}));
    CHECK(near(eval_field(KillingField::rotation(Axis::Y), p), {3, 0, -1}));
    CHECK(near(eval_field(KillingField::translation(Axis::Y, -2.0), p), {0, -2, 0}));
    CHECK(near(eval_field(KillingField::translation(Axis::X, 0.5), p), {0.5, 0, 0}));
}

TEST_CASE("magnetic force is skew") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const KillingField fields[] = {
        KillingField::rotation(Axis::X), KillingField::rotation(Axis::Y),
        KillingField::rotation(Axis::Z), KillingField::translation(Axis::Z, 1.7)};
    for (const auto& f : fields) {
        for (int i = 0; i < 50; ++i) {
            Vec3 p{u(rng), u(rng), u(rng)};
            Vec3 w{u(rng), u(rng), u(rng)};
            Vec3 force = lorentz_force(f, p, w);
            CHECK(std::fabs(dot(force, w)) < 1e-14);          // no work on the motion
            CHECK(std::fabs(dot(force, eval_field(f, p))) < 1e-14);
        }
    }
    // V x w at p = (1,0,0), w = e_z for the Z rotation: (0,1,0) x (0,0,1)
    CHECK(near(lorentz_force(KillingField::rotation(Axis::Z), {1, 0, 0}, {0, 0, 1}),
               {1, 0, 0}));
}

TEST_CASE("first order form") {
    State6 s{{1, 2, 3}, {0.1, 0.2, 0.3}};
    State6 d = magnetic_rhs(KillingField::rotation(Axis::Z), s);
    CHECK(near(d.pos, s.vel));
    CHECK(near(d.vel, cross(eval_field(KillingField::rotation(Axis::Z), s.pos), s.vel)));
}

TEST_CASE("jacobians and the killing criterion") {
    auto jz = field_jacobian(KillingField::rotation(Axis::Z));
    const std::array<double, 9> expect{0, -1, 0, 1, 0, 0, 0, 0, 0};
    for (int i = 0; i < 9; ++i)
        CHECK(jz[i] == expect[i]);

    auto jt = field_jacobian(KillingField::translation(Axis::X, 3.0));
    for (int i = 0; i < 9; ++i)
        CHECK(jt[i] == 0.0);

    auto vecs = probe_vectors();
    const KillingField all[] = {
        KillingField::rotation(Axis::X),    KillingField::rotation(Axis::Y),
        KillingField::rotation(Axis::Z),    KillingField::translation(Axis::X, 1.0),
        KillingField::translation(Axis::Y, -2.5), KillingField::translation(Axis::Z, 0.1)};
    for (const auto& f : all)
        CHECK(verify_killing(f, vecs) < 1e-14);

    // A symmetric-part jacobian (a stretch along x) is maximally non-Killing.
    std::array<double, 9> stretch{1, 0, 0, 0, 0, 0, 0, 0, 0};
    CHECK(killing_residual(stretch, vecs) >= 1.9);
}

TEST_CASE("canonical frame permutations") {
    const Vec3 p{1, 2, 3};
    CHECK(near(to_canonical_frame(Axis::Z, p), {1, 2, 3}));
    CHECK(near(to_canonical_frame(Axis::X, p), {2, 3, 1}));
    CHECK(near(to_canonical_frame(Axis::Y, p), {3, 1, 2}));

    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        CHECK(near(from_canonical_frame(a, to_canonical_frame(a, p)), p));
        State6 s{{1, 2, 3}, {4, 5, 6}};
        State6 rt = from_canonical_frame(a, to_canonical_frame(a, s));
        CHECK(near(rt.pos, s.pos));
        CHECK(near(rt.vel, s.vel));
    }
}

TEST_CASE("field equivariance under the canonical map") {
    // V_a(p) = P^-1 V_z(P p) for the cyclic permutation P of axis a.
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        KillingField f = KillingField::rotation(a);
        for (int i = 0; i < 30; ++i) {
            Vec3 p{u(rng), u(rng), u(rng)};
            Vec3 direct = eval_field(f, p);
            Vec3 mapped = from_canonical_frame(
                a, eval_field(KillingField::rotation(Axis::Z), to_canonical_frame(a, p)));
            CHECK(near(direct, mapped));
        }
    }
}
