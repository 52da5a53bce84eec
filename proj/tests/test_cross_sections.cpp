#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "pdirac/cross_sections.hpp"

using namespace pdirac;

TEST_SUITE("cross_sections")
{
    TEST_CASE("mu pair with physical electron mass matches the two-mass closed form")
    {
        XSecConfig cfg;
        for (const double rs : {250.0, 1000.0})
        {
            cfg.sqrt_s = rs;
            const double s = rs * rs;
            CHECK(total_cross_section(cfg) ==
                  doctest::Approx(oracle::mu_pair_total_two_mass(cfg.alpha, cfg.m_e, cfg.m_mu, s)).epsilon(1e-9));
        }
    }

    TEST_CASE("mu pair angular distribution with a light electron")
    {
        XSecConfig cfg;
        cfg.m_e = 1e-4;
        cfg.sqrt_s = 500.0;
        cfg.grid_points = 11;
        const XSecResult r = cross_section(cfg);
        REQUIRE(r.cos_theta.size() == 11);
        for (std::size_t i = 0; i < r.cos_theta.size(); ++i)
            CHECK(r.dsigma_domega[i] ==
                  doctest::Approx(oracle::mu_pair_dsigma(cfg.alpha, cfg.m_mu, 500.0 * 500.0, r.cos_theta[i])).epsilon(1e-9));
    }

    TEST_CASE("Compton matches Klein-Nishina pointwise")
    {
        XSecConfig cfg;
        cfg.process = Process::compton;
        cfg.omega = 0.3;
        for (const double c : {-1.0, -0.3, 0.5, 1.0})
        {
            const AngularPoint pt = angular_point(cfg, c);
            const RegScalar d = recipe_dsigma_domega(cfg, pt);
            CHECK(d.regulator_free());
            CHECK(d.value == doctest::Approx(oracle::klein_nishina(cfg.alpha, cfg.m_e, cfg.omega, c)).epsilon(1e-10));
            CHECK(textbook_dsigma_domega(pt) == doctest::Approx(d.value).epsilon(1e-12));
        }
    }

    TEST_CASE("audit closes and sigma does not depend on the box")
    {
        for (const Process p : {Process::mu_pair, Process::compton})
        {
            XSecConfig cfg;
            cfg.process = p;
            cfg.grid_points = 5;
            double ref = 0.0;
            for (const double L : {1.0, 10.0, 100.0})
            {
                cfg.L = L;
                const XSecResult r = cross_section(cfg);
                CHECK(r.audit.total.power_L == 0);
                CHECK(r.audit.total.power_dtau == 0);
                if (ref == 0.0) ref = r.sigma;
                CHECK(std::abs(r.sigma - ref) <= 1e-12 * ref);
            }
        }
    }

    TEST_CASE("rate needs conservation factors")
    {
        AmplitudeResult a;
        a.reduced = 1.0;
        CHECK_THROWS_AS(rate_from_amplitude(a, 1.0), std::invalid_argument);
    }

    TEST_CASE("flux domain errors")
    {
        const ExternalLeg a{FourVector{1, 0, 0, 0}, 1.0};
        CHECK_THROWS_AS(incident_flux(a, a, 1.0), std::domain_error);
        const ExternalLeg neg{FourVector{-2, 0, 0, 1}, std::sqrt(3.0)};
        CHECK_THROWS_AS(incident_flux(a, neg, 1.0), std::domain_error);
        const ExternalLeg photon{FourVector{1, 0, 0, 1}, 0.0};
        const RegScalar f = incident_flux(a, photon, 2.0);
        CHECK(f.power_L == -8);
        CHECK(f.value == doctest::Approx(2.0 / 256.0));
    }

    TEST_CASE("below threshold")
    {
        XSecConfig cfg;
        cfg.sqrt_s = 200.0;
        CHECK_THROWS_AS(cross_section(cfg), std::domain_error);
    }

    TEST_CASE("process names and csv")
    {
        CHECK(process_from_string(to_string(Process::compton)) == Process::compton);
        CHECK_THROWS(process_from_string("bhabha"));
        XSecConfig cfg;
        cfg.grid_points = 3;
        std::ostringstream os;
        write_csv(os, cross_section(cfg));
        std::string header;
        std::istringstream is(os.str());
        std::getline(is, header);
        CHECK(header == "cos_theta,dsigma_domega,units");
        CHECK(audit_json(cross_section(cfg)).find("power_L") != std::string::npos);
    }

    TEST_CASE("zero energy Compton limit")
    {
        XSecConfig cfg;
        cfg.process = Process::compton;
        CHECK(compton_zero_energy_limit(cfg) == doctest::Approx(oracle::thomson(cfg.alpha, cfg.m_e)).epsilon(1e-7));
    }
}
