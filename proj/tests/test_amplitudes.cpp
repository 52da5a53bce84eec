#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pdirac/amplitudes.hpp"

using namespace pdirac;

namespace
{

const double kCharge = std::sqrt(4.0 * std::numbers::pi / 137.035999);

std::array<double, 3> random_direction(std::mt19937_64& rng)
{
    std::normal_distribution<double> n;
    std::array<double, 3> v{n(rng), n(rng), n(rng)};
    const double r = std::hypot(v[0], v[1], v[2]);
    for (auto& x : v) x /= r;
    return v;
}

// Two-body center-of-momentum kinematics, boosted along a random axis.
struct TwoToTwo
{
    OnShellMomentum p1, p2, p3, p4;
};

TwoToTwo two_to_two(std::mt19937_64& rng, double sqrt_s, double m_in, double m_out)
{
    const double e = sqrt_s / 2.0;
    const double pin = std::sqrt(e * e - m_in * m_in), pout = std::sqrt(e * e - m_out * m_out);
    const auto a = random_direction(rng), b = random_direction(rng);
    std::uniform_real_distribution<double> eta(0.0, 1.0);
    const LorentzTransform boost = boost_along(random_direction(rng), eta(rng));
    auto mk = [&](double m, double p, const std::array<double, 3>& n, double s) {
        return OnShellMomentum{boost(FourVector{e, s * p * n[0], s * p * n[1], s * p * n[2]}), m};
    };
    return {mk(m_in, pin, a, 1), mk(m_in, pin, a, -1), mk(m_out, pout, b, 1), mk(m_out, pout, b, -1)};
}

}  // namespace

TEST_SUITE("amplitudes")
{
    TEST_CASE("muon pair: explicit spin sum equals trace sum and the standard result")
    {
        std::mt19937_64 rng(3);
        const double m_e = 0.51099895, m_mu = 105.6583755;
        for (const GammaBasis* g : {&GammaBasis::dirac(), &GammaBasis::weyl()})
            for (int n = 0; n < 10; ++n)
            {
                const auto k = two_to_two(rng, 300.0 + 100.0 * n, m_e, m_mu);
                const double spins = muon_pair_spin_sum(k.p1, k.p2, k.p3, k.p4, kCharge, *g);
                const double traces = muon_pair_trace_sum(k.p1, k.p2, k.p3, k.p4, kCharge, *g);
                CHECK(spins == doctest::Approx(traces).epsilon(1e-10));
                const double standard =
                    oracle::mu_pair_msq_standard(kCharge, k.p1.p(), k.p2.p(), k.p3.p(), k.p4.p(), m_e, m_mu);
                CHECK(spins / 4.0 * 16.0 * m_e * m_e * m_mu * m_mu == doctest::Approx(standard).epsilon(1e-10));
            }
    }

    TEST_CASE("muon pair: either current may source the boson")
    {
        std::mt19937_64 rng(9);
        const auto k = two_to_two(rng, 400.0, 0.5, 105.0);
        const auto a = muon_pair_amplitude(PlaneWave::particle(k.p1, 1), antiparticle_wave(k.p2, 2),
                                           PlaneWave::particle(k.p3, 1), antiparticle_wave(k.p4, 1), kCharge);
        const auto b =
            muon_pair_amplitude(PlaneWave::particle(k.p1, 1), antiparticle_wave(k.p2, 2), PlaneWave::particle(k.p3, 1),
                                antiparticle_wave(k.p4, 1), kCharge, CurrentSource::muon_pair);
        CHECK(std::abs(std::abs(a.reduced) - std::abs(b.reduced)) <= 1e-12 * std::abs(a.reduced));
        CHECK(a.count(ConservationDelta::Kind::energy_momentum) == 1);
        CHECK(a.count(ConservationDelta::Kind::mass) == 2);
        for (const auto& d : a.deltas) CHECK(d.satisfied());
        CHECK(a.normalization.power_L == 0);
    }

    TEST_CASE("pair annihilation is gauge invariant")
    {
        std::mt19937_64 rng(21);
        const double m = 0.51099895;
        for (int n = 0; n < 20; ++n)
        {
            const auto k = two_to_two(rng, 3.0 + n, m, m);
            // photons share the fermions' center-of-momentum energy, back to back
            const FourVector tot = k.p1.p() + k.p2.p(), d = k.p3.p() - k.p4.p();
            const double half = std::sqrt(-dot(tot, tot)) / 2.0, pd = std::sqrt(dot(d, d));
            const FourVector k1 = 0.5 * tot + (half / pd) * d, k2 = 0.5 * tot - (half / pd) * d;
            const auto e1 = transverse_polarizations(k1), e2 = transverse_polarizations(k2);
            auto leg = [](const FourVector& pol, const FourVector& kk) {
                return PhotonLeg{pol.vec().cast<cplx>(), kk, PhotonLeg::Direction::outgoing};
            };
            for (int s = 1; s <= 2; ++s)
            {
                const ProcessSpec physical{{PlaneWave::particle(k.p1, s)}, {antiparticle_wave(k.p2, 1)},
                                           {leg(e1[0], k1), leg(e2[1], k2)}};
                const double scale = std::abs(pair_annihilation_amplitude(physical, kCharge, true).reduced);
                REQUIRE(scale > 0.0);
                for (int which = 0; which < 3; ++which)
                {
                    ProcessSpec s2 = physical;
                    if (which != 1) s2.photons[0] = leg(k1, k1);
                    if (which != 0) s2.photons[1] = leg(k2, k2);
                    CHECK(std::abs(pair_annihilation_amplitude(s2, kCharge, true).reduced) <= 1e-10 * scale);
                }
            }
        }
    }

    TEST_CASE("Compton: spin sum equals trace sum")
    {
        const double m = 0.51099895, omega = 0.7;
        const OnShellMomentum p{FourVector{m, 0, 0, 0}};
        for (const double c : {-0.9, 0.0, 0.4})
        {
            const double w = oracle::compton_omega_out(omega, m, c);
            const FourVector k{omega, 0, 0, omega}, kp{w, w * std::sqrt(1 - c * c), 0, w * c};
            const OnShellMomentum pp{p.p() + k - kp, m};
            for (const GammaBasis* g : {&GammaBasis::dirac(), &GammaBasis::weyl()})
                CHECK(compton_spin_sum(p, k, pp, kp, kCharge, *g) ==
                      doctest::Approx(compton_trace_sum(p, k, pp, kp, kCharge, *g)).epsilon(1e-10));
        }
    }

    TEST_CASE("off-shell photon legs are rejected")
    {
        const PhotonLeg bad{Eigen::Vector4cd(0, 1, 0, 0), FourVector{1, 1, 0, 0}};
        CHECK_THROWS_AS(bad.validate(), std::domain_error);
        const PhotonLeg massive{Eigen::Vector4cd(0, 0, 1, 0), FourVector{2, 0, 0, 1}};
        CHECK_THROWS_AS(massive.validate(), std::domain_error);
    }

    TEST_CASE("first-order amplitude needs a Fourier mode")
    {
        const OnShellMomentum p{FourVector{1, 0, 0, 0}};
        const ExternalPotential pointwise{Potential{[](const FourVector&) { return FourVector{1, 0, 0, 0}; }}};
        CHECK_THROWS_AS(first_order_amplitude(PlaneWave::particle(p, 1), PlaneWave::particle(p, 1), pointwise, 1.0),
                        std::invalid_argument);
    }

    TEST_CASE("internal line inverts slash(l) + omega off shell")
    {
        const FourVector l{1.3, 0.2, -0.4, 0.5};
        const double omega = 0.9;
        const SpinorMatrix prop = internal_line(l, omega);
        const SpinorMatrix inv = slash(l) + omega * SpinorMatrix::Identity();
        CHECK((prop * inv - SpinorMatrix::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }

    TEST_CASE("diagram bookkeeping after trivial vertices")
    {
        const DiagramCount c = expand_muon_pair_vertices();
        CHECK(c.physical_vertices == 2);
        CHECK(c.trivial_vertices == 2);
        CHECK(c.physical_fermion_legs == 4);
        CHECK(c.virtual_fermion_legs == 4);
        CHECK(c.every_vertex_mixed);
    }

    TEST_CASE("windowed mass delta narrows with the window")
    {
        CHECK(std::abs(windowed_mass_delta(0.0, 50.0) - cplx{100.0 / (2 * std::numbers::pi), 0}) < 1e-10);
        CHECK(std::abs(windowed_mass_delta(1.0, 500.0)) < std::abs(windowed_mass_delta(0.0, 500.0)) * 1e-2);
    }

    TEST_CASE("normalization factors")
    {
        CHECK(normalization_factor(WaveNormalization::box(3.0)).power_L == -2);
        CHECK(normalization_factor(WaveNormalization::box(3.0)).value == doctest::Approx(1.0 / 9.0));
        CHECK(normalization_factor(WaveNormalization::continuum()).power_L == 0);
    }
}
