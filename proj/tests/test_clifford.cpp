#include <doctest.h>

#include <array>

#include "oracles.hpp"
#include "pdirac/clifford.hpp"

using namespace pdirac;

TEST_SUITE("clifford")
{
    TEST_CASE("anticommutators in both representations")
    {
        CHECK(GammaBasis::dirac().anticommutator_defect() <= 1e-13);
        CHECK(GammaBasis::weyl().anticommutator_defect() <= 1e-13);
    }

    TEST_CASE("gamma5 squares to one and anticommutes")
    {
        for (const GammaBasis* g : {&GammaBasis::dirac(), &GammaBasis::weyl()})
        {
            CHECK((g->gamma5 * g->gamma5 - SpinorMatrix::Identity()).cwiseAbs().maxCoeff() < 1e-14);
            for (int mu = 0; mu < 4; ++mu)
                CHECK(((*g)[mu] * g->gamma5 + g->gamma5 * (*g)[mu]).cwiseAbs().maxCoeff() < 1e-14);
        }
    }

    TEST_CASE("slash squares to minus p.p")
    {
        const FourVector p{2.0, 0.3, -0.7, 1.1};
        const SpinorMatrix s = slash(p);
        CHECK((s * s + dot(p, p) * SpinorMatrix::Identity()).cwiseAbs().maxCoeff() < 1e-13);
    }

    TEST_CASE("four-gamma traces match contraction")
    {
        for (const GammaBasis* g : {&GammaBasis::dirac(), &GammaBasis::weyl()})
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 4; ++c)
                        for (int d = 0; d < 4; ++d)
                        {
                            const std::array<int, 4> idx{a, b, c, d};
                            CHECK(std::abs(trace_product(idx, false, *g) - oracle::four_gamma_trace(a, b, c, d)) <= 1e-12);
                        }
    }

    TEST_CASE("odd traces and gamma5 traces")
    {
        const std::array<int, 3> odd{0, 1, 2};
        CHECK(std::abs(trace_product(odd)) < 1e-14);
        const std::array<int, 4> all{0, 1, 2, 3};
        // Tr(γ⁵γ⁰γ¹γ²γ³) = Tr(γ⁵ γ⁵ / i) = -4i
        CHECK(std::abs(trace_product(all, true) - cplx{0.0, -4.0}) < 1e-13);
        const std::array<int, 1> bad{4};
        CHECK_THROWS_AS(trace_product(bad), std::out_of_range);
    }

    TEST_CASE("trace table agrees with direct products")
    {
        const TraceTable& t = TraceTable::of(GammaBasis::weyl());
        const std::array<int, 6> idx{3, 1, 0, 1, 2, 3};
        CHECK(std::abs(t(idx) - trace_product(idx, false, GammaBasis::weyl())) < 1e-13);
        const std::array<GammaLinear, 2> f{GammaLinear::slash(FourVector{2, 0, 0, 1}), GammaLinear::slash(FourVector{2, 0, 0, 1})};
        // Tr(slash p slash p) = -4 p.p
        CHECK(std::abs(t.trace(f) - (-4.0 * dot(FourVector{2, 0, 0, 1}, FourVector{2, 0, 0, 1}))) < 1e-13);
    }

    TEST_CASE("gamma matrices are self-adjoint under the Dirac bar")
    {
        for (int mu = 0; mu < 4; ++mu)
            CHECK((dirac_adjoint(GammaBasis::dirac()[mu]) - GammaBasis::dirac()[mu]).cwiseAbs().maxCoeff() < 1e-14);
    }
}
