#include "pdirac/spinor_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace pdirac
{
namespace
{

int spin_column(int spin)
{
    if (spin != 1 && spin != 2) throw std::invalid_argument("spin index must be 1 or 2");
    return spin - 1;
}

}  // namespace

Spinor SpinorBlock::u_col(int spin) const { return u.col(spin_column(spin)); }
Spinor SpinorBlock::v_col(int spin) const { return v.col(spin_column(spin)); }

SpinorMatrix SpinorBlock::u_projector(const GammaBasis& g) const
{
    return u * u.adjoint() * g[0];
}

SpinorMatrix SpinorBlock::v_projector(const GammaBasis& g) const
{
    return v * v.adjoint() * g[0];
}

SpinorMatrix spinor_boost(const std::array<double, 3>& n, double eta, const GammaBasis& g)
{
    // Generator K = ½ η n·α with α^j = γ⁰γ^j; (n·α)² = I so exp(K) closes in two terms.
    SpinorMatrix alpha_n = SpinorMatrix::Zero();
    for (int j = 0; j < 3; ++j) alpha_n += n[static_cast<std::size_t>(j)] * (g[0] * g[j + 1]);
    return std::cosh(0.5 * eta) * SpinorMatrix::Identity() + std::sinh(0.5 * eta) * alpha_n;
}

SpinorMatrix spinor_boost(const OnShellMomentum& p, const GammaBasis& g)
{
    if (p.phi() < 0) throw std::domain_error("boost defined for positive-energy momenta only");
    const double pn = p.p().spatial_norm();
    if (pn == 0.0) return SpinorMatrix::Identity();
    const std::array<double, 3> n{p.p()[1] / pn, p.p()[2] / pn, p.p()[3] / pn};
    return spinor_boost(n, std::asinh(pn / p.m()), g);
}

SpinorBlock build_basis(const FourVector& p, const GammaBasis& g) { return build_basis(OnShellMomentum{p}, g); }

SpinorBlock build_basis(const OnShellMomentum& p, const GammaBasis& g)
{
    // Building from the positive-energy representative makes the block even in p.
    const OnShellMomentum fwd{p.forward(), p.m()};
    const SpinorMatrix block = spinor_boost(fwd, g) * g.rest_frame;
    return SpinorBlock{block.leftCols<2>(), block.rightCols<2>(), p.p()};
}

WaveNormalization WaveNormalization::box(double L)
{
    if (!(L > 0.0)) throw std::invalid_argument("box edge must be positive");
    return {Kind::box, L};
}

double WaveNormalization::factor() const
{
    const double L = kind == Kind::continuum ? 2.0 * std::numbers::pi : edge;
    return 1.0 / (L * L);
}

PlaneWave::PlaneWave(WaveKind kind, OnShellMomentum p, int spin, WaveNormalization norm, const GammaBasis& g)
    : kind_(kind), p_(p), spin_(spin), norm_(norm), g_(&g)
{
    const SpinorBlock block = build_basis(p_, g);
    switch (kind_)
    {
    case WaveKind::particle:
        amplitude_ = block.u_col(spin);
        k_ = p_.p();
        omega_ = p_.phi() * p_.m();
        break;
    case WaveKind::negative:
        amplitude_ = block.v_col(spin);
        k_ = p_.p();
        omega_ = -p_.phi() * p_.m();
        break;
    case WaveKind::antiparticle:
        // -i f⁽⁻⁾_{-p}: v_{-p} = v_p by evenness, χ⁽⁻⁾(-p) = -p·x + φ_p m_p τ.
        amplitude_ = -kI * block.v_col(spin);
        k_ = -p_.p();
        omega_ = p_.phi() * p_.m();
        break;
    }
}

PlaneWave PlaneWave::particle(const OnShellMomentum& p, int spin, WaveNormalization norm, const GammaBasis& g)
{
    return PlaneWave{WaveKind::particle, p, spin, norm, g};
}

PlaneWave PlaneWave::negative(const OnShellMomentum& p, int spin, WaveNormalization norm, const GammaBasis& g)
{
    return PlaneWave{WaveKind::negative, p, spin, norm, g};
}

Spinor PlaneWave::operator()(const FourVector& x, double tau) const
{
    return (norm_.factor() * std::exp(kI * phase(x, tau))) * amplitude_;
}

PlaneWave PlaneWave::with_normalization(WaveNormalization norm) const
{
    PlaneWave w = *this;
    w.norm_ = norm;
    return w;
}

Spinor evaluate_wave(const PlaneWave& w, const FourVector& x, double tau) { return w(x, tau); }

PlaneWave antiparticle_wave(const OnShellMomentum& p, int spin, WaveNormalization norm, const GammaBasis& g)
{
    if (p.phi() < 0) throw std::domain_error("antiparticle wave requires p0 > 0");
    return PlaneWave{WaveKind::antiparticle, p, spin, norm, g};
}

SpinorField as_field(const PlaneWave& w)
{
    return [w](const FourVector& x, double tau) { return w(x, tau); };
}

SpinorField tpc_conjugate(SpinorField psi, const GammaBasis& g)
{
    const SpinorMatrix op = -kI * g.gamma5;
    return [psi = std::move(psi), op](const FourVector& x, double tau) -> Spinor { return op * psi(-x, tau); };
}

Spinor dirac_residual(const SpinorField& psi, const FourVector& x, double tau, double h, const Potential& potential,
                      double charge, const GammaBasis& g)
{
    const cplx inv_i = -kI;
    Spinor r = inv_i * (psi(x, tau + h) - psi(x, tau - h)) / (2.0 * h);
    for (int mu = 0; mu < 4; ++mu)
    {
        FourVector up = x, dn = x;
        up[mu] += h;
        dn[mu] -= h;
        const Spinor d = (psi(up, tau) - psi(dn, tau)) / (2.0 * h);
        r += inv_i * (g[mu] * d);
    }
    if (potential && charge != 0.0)
        r -= charge * (slash(potential(x), g) * psi(x, tau));
    return r;
}

}  // namespace pdirac
