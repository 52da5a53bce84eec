#include "pdirac/propagators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pdirac
{

MomentumGrid MomentumGrid::reciprocal(double L, int n_max)
{
    if (!(L > 0.0) || n_max < 0) throw std::invalid_argument("bad reciprocal lattice");
    const double dk = 2.0 * std::numbers::pi / L;
    MomentumGrid grid;
    grid.weight = std::pow(dk, 4);
    for (int a = -n_max; a <= n_max; ++a)
        for (int b = -n_max; b <= n_max; ++b)
            for (int c = -n_max; c <= n_max; ++c)
                for (int d = -n_max; d <= n_max; ++d)
                {
                    const FourVector p{a * dk, b * dk, c * dk, d * dk};
                    if (a != 0 && dot(p, p) < 0.0) grid.momenta.push_back(p);
                }
    return grid;
}

MomentumGrid MomentumGrid::single(const FourVector& p, double L)
{
    if (!(L > 0.0)) throw std::invalid_argument("bad reciprocal lattice");
    if (p[0] == 0.0 || !(dot(p, p) < 0.0)) throw std::domain_error("grid excludes p0 = 0 and non-subluminal p");
    const double dk = 2.0 * std::numbers::pi / L;
    return MomentumGrid{{p}, std::pow(dk, 4)};
}

MomentumGrid MomentumGrid::with_energy_sign(int sign) const
{
    MomentumGrid out{{}, weight};
    for (const auto& p : momenta)
        if (p[0] * sign > 0.0) out.momenta.push_back(p);
    return out;
}

std::vector<KernelTerm> kernel_terms(const FermionKernelSpec& spec, const Event& w, const Event& w_prime)
{
    if (w.tau == w_prime.tau) throw std::domain_error("theta ambiguity");
    const bool later = w.tau > w_prime.tau;
    const bool forward = spec.direction == KernelDirection::forward;
    const cplx prefactor = forward ? kI : -kI;
    const GammaBasis& g = *spec.basis;

    std::vector<KernelTerm> terms;
    for (const auto& p : spec.grid.momenta)
    {
        const int s = energy_sign(p);
        // Positive-energy modes run with the kernel's own time direction, negative ones against it.
        double theta = 0.0;
        if (s > 0 && later == forward) theta = 1.0;
        if (s < 0 && later != forward) theta = -1.0;
        if (theta == 0.0) continue;

        const OnShellMomentum q{p};
        SpinorMatrix ff = SpinorMatrix::Zero();
        SpinorMatrix hh = SpinorMatrix::Zero();
        for (int spin = 1; spin <= 2; ++spin)
        {
            const PlaneWave f{WaveKind::particle, q, spin, {}, g};
            const PlaneWave h{WaveKind::antiparticle, q, spin, {}, g};
            ff += f(w.x, w.tau) * dirac_adjoint(Spinor{f(w_prime.x, w_prime.tau)}, g);
            hh += h(w.x, w.tau) * dirac_adjoint(Spinor{h(w_prime.x, w_prime.tau)}, g);
        }
        const cplx c = prefactor * theta * spec.grid.weight;
        terms.push_back({p, KernelTermKind::particle_pair, c, ff});
        terms.push_back({p, KernelTermKind::antiparticle_pair, -c, hh});
    }
    return terms;
}

SpinorMatrix fermion_kernel(const FermionKernelSpec& spec, const Event& w, const Event& w_prime)
{
    SpinorMatrix k = SpinorMatrix::Zero();
    for (const auto& t : kernel_terms(spec, w, w_prime)) k += t.coefficient * t.outer;
    return k;
}

double SpaceTimeLattice::cell_volume() const { return std::pow(edge / points, 4); }

Spinor propagate(const FermionKernelSpec& forward, const FermionKernelSpec& backward, const SpinorField& psi,
                 const Event& at, double rho, const SpaceTimeLattice& lattice)
{
    if (at.tau == rho) throw std::domain_error("theta ambiguity");
    const bool later = at.tau > rho;
    const FermionKernelSpec& spec = later ? forward : backward;
    const double sign = later ? 1.0 : -1.0;
    const double dv = lattice.cell_volume();

    Spinor acc = Spinor::Zero();
    lattice.for_each([&](const FourVector& z) {
        acc += fermion_kernel(spec, at, Event{z, rho}) * psi(z, rho);
    });
    return (-kI * sign * dv) * acc;
}

Tensor2 boson_numerator(const FourVector& k, double varpi)
{
    if (varpi == 0.0) throw std::domain_error("massless numerator undefined; use gauge-reduced form");
    Tensor2 G;
    for (int l = 0; l < 4; ++l)
        for (int n = 0; n < 4; ++n) G(l, n) = metric(l, n) + k[l] * k[n] / (varpi * varpi);
    return G;
}

std::array<FourVector, 3> polarization_triple(const FourVector& k)
{
    const double kk = dot(k, k);
    if (!(kk < 0.0)) throw std::domain_error("polarization triple needs timelike k");
    std::array<FourVector, 3> eps;
    const std::array<FourVector, 3> seeds{FourVector{0, 1, 0, 0}, FourVector{0, 0, 1, 0}, FourVector{0, 0, 0, 1}};
    for (std::size_t j = 0; j < 3; ++j)
    {
        FourVector e = seeds[j];
        e -= (dot(e, k) / kk) * k;
        for (std::size_t i = 0; i < j; ++i) e -= dot(e, eps[i]) * eps[i];
        eps[j] = (1.0 / std::sqrt(dot(e, e))) * e;
    }
    return eps;
}

Tensor2 polarization_sum(const std::array<FourVector, 3>& eps)
{
    Tensor2 s = Tensor2::Zero();
    for (const auto& e : eps) s += e.vec() * e.vec().transpose();
    return s;
}

ComplexTensor2 boson_influence(const FourVector& k, double varpi, double contour_offset)
{
    const double kk = dot(k, k);
    const double real_denom = kk + varpi * varpi;
    const double scale = std::max({std::abs(kk), varpi * varpi, k[0] * k[0]});
    if (contour_offset == 0.0 && std::abs(real_denom) <= 1e-12 * std::max(scale, 1e-300))
        throw std::domain_error("pole; supply contour offset");

    // k⁰ → k⁰ + iε s gives k·k → k·k - 2iε s k⁰ to first order.
    const double s = varpi >= 0.0 ? 1.0 : -1.0;
    const cplx denom{real_denom, -2.0 * contour_offset * s * k[0]};

    Tensor2 numer;
    if (varpi == 0.0)
    {
        numer = Tensor2::Zero();
        for (int mu = 0; mu < 4; ++mu) numer(mu, mu) = kMetric[static_cast<std::size_t>(mu)];
    }
    else
        numer = boson_numerator(k, varpi);
    return numer.cast<cplx>() / denom;
}

cplx contract(const Eigen::Vector4cd& a, const ComplexTensor2& t, const Eigen::Vector4cd& b)
{
    cplx acc = 0.0;
    for (int l = 0; l < 4; ++l)
        for (int n = 0; n < 4; ++n) acc += metric(l, l) * a[l] * t(l, n) * metric(n, n) * b[n];
    return acc;
}

}  // namespace pdirac
