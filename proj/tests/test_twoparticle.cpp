#include <doctest.h>

#include "pdirac/twoparticle.hpp"

using namespace pdirac;

namespace
{

const OnShellMomentum kP = OnShellMomentum::from_three_momentum(1.0, 0.3, 0.0, 0.5);
const OnShellMomentum kQ = OnShellMomentum::from_three_momentum(1.0, -0.2, 0.4, -0.1);

}  // namespace

TEST_SUITE("twoparticle")
{
    TEST_CASE("kron and slot exchange")
    {
        const Spinor a = Spinor::LinSpaced(4, 1.0, 4.0), b = Spinor::LinSpaced(4, -2.0, 1.0);
        CHECK((swap_slots(kron(a, b)) - kron(b, a)).norm() == 0.0);
        const SpinorMatrix m = GammaBasis::dirac()[1], n = GammaBasis::dirac()[2];
        CHECK((kron(m, n) * kron(a, b) - kron(Spinor(m * a), Spinor(n * b))).norm() < 1e-13);
    }

    TEST_CASE("antisymmetric state flips under exchange")
    {
        const auto psi = as_field(PlaneWave::particle(kP, 1)), xi = as_field(PlaneWave::particle(kQ, 2));
        const TwoParticleState s = build_entangled(psi, xi, -1);
        const FourVector x{0.1, 0.2, 0.3, 0.4}, y{-0.3, 0.5, 0.0, 0.2};
        CHECK((swap_slots(s(x, y, 0.3)) + s(y, x, 0.3)).norm() < 1e-15);
        CHECK(s.construction() == Construction::antisymmetric);
        const TwoParticleState same = build_entangled(psi, psi, -1);
        CHECK(same(x, y, 0.1).norm() < 1e-15 + 1e-15 * s(x, y, 0.1).norm());
        CHECK_THROWS(build_entangled(psi, xi, 2));
    }

    TEST_CASE("separable states are additive")
    {
        const auto psi = PlaneWave::particle(kP, 1), xi = PlaneWave::particle(kQ, 2);
        const auto grid = CurrentGrid::relative_phase_period(psi, xi, 3);
        const auto r = current_report(TwoParticleState::separable(as_field(psi), as_field(xi)), grid);
        CHECK(r.nonadditivity_norm <= 1e-12);
    }

    TEST_CASE("interference equals the cross terms")
    {
        const auto psi = PlaneWave::particle(kP, 1, WaveNormalization::box(1.0));
        const auto xi = PlaneWave::particle(kQ, 2, WaveNormalization::box(1.0));
        const auto grid = CurrentGrid::relative_phase_period(psi, xi, 2);
        for (const int sign : {-1, +1})
        {
            const auto r = current_report(build_entangled(as_field(psi), as_field(xi), sign), grid);
            REQUIRE(r.x.size() == 16);
            for (std::size_t i = 0; i < r.x.size(); ++i)
            {
                const TwoSpinor a = kron(psi(r.x[i], grid.tau), xi(r.y[i], grid.tau));
                const TwoSpinor b = kron(xi(r.x[i], grid.tau), psi(r.y[i], grid.tau));
                const Eigen::Vector4d cross = two_particle_current(a + b) - two_particle_current(a - b);
                // J[a + s b] - J[a] - J[b] = s (J[a+b] - J[a-b]) / 2
                CHECK((r.interference[i] - 0.5 * sign * cross).norm() <= 1e-10);
            }
            CHECK(r.nonadditivity_norm > 1e-3);
        }
    }

    TEST_CASE("entangled plane waves solve the two-particle equation")
    {
        const auto s = build_entangled(as_field(PlaneWave::particle(kP, 1)), as_field(PlaneWave::particle(kQ, 2)), -1);
        const FourVector x{0.2, 0.1, -0.3, 0.6}, y{0.5, -0.4, 0.2, 0.1};
        const double scale = s(x, y, 0.4).norm() + 1.0;
        CHECK(two_particle_residual(s, x, y, 0.4).norm() / scale <= 1e-6);
        const PlaneWave w = PlaneWave::particle(kQ, 2);
        const SpinorField stretched = [w](const FourVector& z, double tau) { return w(z, 2.0 * tau); };
        const auto wrong = build_entangled(as_field(PlaneWave::particle(kP, 1)), stretched, -1);
        CHECK(two_particle_residual(wrong, x, y, 0.4).norm() > 1e-3);
    }
}
