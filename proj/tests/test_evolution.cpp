#include <doctest.h>

#include <numbers>
#include <random>
#include <sstream>

#include "pdirac/evolution.hpp"

using namespace pdirac;

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Random coefficients on timelike, non-Nyquist modes of a 9×9 lattice.
SpectralField random_field(std::uint64_t seed, const GammaBasis& g = GammaBasis::dirac())
{
    SpectralField f(9, 9, kTwoPi, kTwoPi, g);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b)
        {
            const FourVector k = f.mode_momentum(a, b);
            if (dot(k, k) >= 0.0) continue;
            for (int i = 0; i < 4; ++i) f.coeff(a, b)[i] = cplx{n(rng), n(rng)};
        }
    return f;
}

}  // namespace

TEST_SUITE("evolution")
{
    TEST_CASE("mode propagator is a group in tau")
    {
        for (const FourVector k : {FourVector{2, 0, 0, 1}, FourVector{1, 0, 0, 2}, FourVector{1, 0, 0, 1}})
        {
            const SpinorMatrix a = mode_propagator(k, 0.3), b = mode_propagator(k, 0.5);
            CHECK((a * b - mode_propagator(k, 0.8)).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((mode_propagator(k, 0.0) - SpinorMatrix::Identity()).cwiseAbs().maxCoeff() == 0.0);
        }
    }

    TEST_CASE("FFT round trip and direct evaluation agree")
    {
        const SpectralField f = random_field(1);
        const auto samples = f.to_samples();
        SpectralField g(9, 9, kTwoPi, kTwoPi);
        g.from_samples(samples);
        double err = 0.0;
        for (int a = 0; a < 9; ++a)
            for (int b = 0; b < 9; ++b) err = std::max(err, (g.coeff(a, b) - f.coeff(a, b)).norm());
        CHECK(err < 1e-12);
        const double h = kTwoPi / 9.0;
        CHECK((samples[2 * 9 + 5] - f.evaluate(2 * h, 5 * h)).norm() < 1e-12);
    }

    TEST_CASE("free flow conserves the branch norm and is linear")
    {
        const SpectralField f = random_field(2), g = random_field(3);
        SpectralField sum = f;
        sum += g;
        SpectralField a = f, b = g, s = sum;
        const double n0 = f.branch_norm();
        for (int i = 0; i < 100; ++i)
        {
            a = evolve_free(a, 0.05);
            b = evolve_free(b, 0.05);
            s = evolve_free(s, 0.05);
        }
        CHECK(std::abs(a.branch_norm() - n0) <= 1e-12 * n0);
        CHECK(std::abs(a.dirac_sum() - f.dirac_sum()) <= 1e-10 * n0);
        SpectralField ab = a;
        ab += b;
        double err = 0.0;
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 9; ++j) err = std::max(err, (ab.coeff(i, j) - s.coeff(i, j)).norm());
        CHECK(err < 1e-12);
        CHECK(s.tau() == doctest::Approx(5.0));
        CHECK(a.spacelike_modes() == 0);
    }

    TEST_CASE("single mode follows the analytic plane wave")
    {
        const OnShellMomentum p{FourVector{std::sqrt(5.0), 0, 0, 2.0}};
        for (const auto kind : {WaveKind::particle, WaveKind::negative})
        {
            // lattice with the wave's frequency on it
            SpectralField f(9, 9, kTwoPi / p.energy(), kTwoPi / 2.0);
            const PlaneWave w{kind, p, 1};
            f.add_wave(w);
            const SpectralField e = evolve_free(f, 0.7);
            CHECK((e.evaluate(0.3, -0.2) - w(FourVector{0.3, 0, 0, -0.2}, 0.7)).norm() < 1e-12);
        }
        SpectralField f(9, 9, 1.0, 1.0);
        CHECK_THROWS_AS(f.add_wave(PlaneWave::particle(p, 1)), std::invalid_argument);
    }

    TEST_CASE("TPC conjugation commutes with free flow")
    {
        const SpectralField f = random_field(4);
        const SpectralField a = tpc_conjugate(evolve_free(f, 0.4));
        const SpectralField b = evolve_free(tpc_conjugate(f), 0.4);
        double err = 0.0;
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 9; ++j) err = std::max(err, (a.coeff(i, j) - b.coeff(i, j)).norm());
        CHECK(err < 1e-12);
        SpectralField even(8, 8, kTwoPi, kTwoPi);
        even.coeff(4, 0) = Spinor::Ones();
        CHECK_THROWS_AS(tpc_conjugate(even), std::domain_error);
    }

    TEST_CASE("constant-phase velocity")
    {
        for (const double ratio : {1.0, 3.0})
        {
            const double pz = std::sqrt(ratio * ratio - 1.0);
            const auto p = OnShellMomentum::from_three_momentum(1.0, 0.0, 0.0, pz);
            CHECK(phase_velocity_probe(p, +1) == doctest::Approx(1.0 / ratio).epsilon(1e-8));
            CHECK(phase_velocity_probe(p, -1) == doctest::Approx(-1.0 / ratio).epsilon(1e-8));
        }
    }

    TEST_CASE("snapshot csv")
    {
        std::ostringstream os;
        write_snapshot_csv(os, random_field(5));
        std::istringstream is(os.str());
        std::string line;
        std::getline(is, line);
        CHECK(line == "tau,t,z,density");
        int rows = 0;
        while (std::getline(is, line)) ++rows;
        CHECK(rows == 81);
    }
}
